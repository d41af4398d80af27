#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qfrank/report.hpp"

namespace qfrank::cli {

inline constexpr const char* kWorkersEnv = "QFRANK_WORKERS";

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

struct RunConfig {
  std::string command;
  std::vector<std::string> args;
  report::Format format = report::Format::Table;
  std::uint64_t triple_bound = 1000;
  std::uint64_t factor_budget = 20'000'000;
  std::uint64_t class_budget = 10'000'000'000ull;
  unsigned workers = 1;
};

/// Executes one subcommand, writing the report to out and diagnostics to
/// err. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and runs. Reads kWorkersEnv when --workers is absent.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qfrank::cli
