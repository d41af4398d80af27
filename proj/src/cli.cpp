#include "qfrank/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>

#include "qfrank/errors.hpp"

namespace qfrank::cli {
namespace {

using report::Format;
using report::json;

BigInt parse_integer(const std::string& text, const char* name) {
  BigInt value;
  const std::string digits = (!text.empty() && text[0] == '+') ? text.substr(1) : text;
  if (digits.empty() || value.set_str(digits, 10) != 0) {
    throw InvalidInput(std::string(name) + ": not an integer: '" + text + "'");
  }
  return value;
}

std::int64_t parse_i64(const std::string& text, const char* name) {
  const BigInt value = parse_integer(text, name);
  if (!mpz_fits_slong_p(value.get_mpz_t())) {
    throw InvalidInput(std::string(name) + " exceeds 64 bits: " + text);
  }
  return mpz_get_si(value.get_mpz_t());
}

std::uint64_t parse_positive(const std::string& text, const char* name) {
  const std::int64_t v = parse_i64(text, name);
  if (v <= 0) throw InvalidInput(std::string(name) + " must be positive");
  return static_cast<std::uint64_t>(v);
}

void require_args(const RunConfig& config, std::size_t count, const char* usage) {
  if (config.args.size() != count) {
    throw InvalidInput("usage: " + config.command + " " + usage);
  }
}

// Scalar reports ignore csv and render as a table.
void emit(std::ostream& out, const json& doc, Format format) {
  out << (format == Format::Json ? report::render_json(doc) : report::render_table(doc));
}

void emit(std::ostream& out, const json& doc, const report::Rows& rows, Format format) {
  if (format == Format::Csv) {
    out << report::render_csv(rows);
  } else {
    emit(out, doc, format);
  }
}

ClassGroupOptions class_options(const RunConfig& config) {
  ClassGroupOptions options;
  options.workers = config.workers;
  options.max_abs_discriminant = config.class_budget;
  options.factor_budget.max_iterations = config.factor_budget;
  return options;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  const auto options = class_options(config);
  const auto& cmd = config.command;

  if (cmd == "classgroup" || cmd == "rank3") {
    require_args(config, 1, "D");
    const std::int64_t D = parse_i64(config.args[0], "D");
    const auto group = D < 0 ? FormClassGroup::imaginary(D, options) : FormClassGroup::narrow_real(D, options);
    if (cmd == "classgroup") {
      emit(out, report::to_json(group.structure()), config.format);
    } else {
      const unsigned rank = classgroup::exact_log3(group.three_torsion_count());
      emit(out, json{{"discriminant", report::integer(D)}, {"three_rank", rank}}, config.format);
    }
    return kExitOk;
  }

  if (cmd == "forms") {
    require_args(config, 1, "D");
    const std::int64_t D = parse_i64(config.args[0], "D");
    if (D < 0) {
      const auto forms = quadforms::enumerate_reduced_definite(D, config.workers);
      json list = json::array();
      for (const auto& f : forms) list.push_back(report::to_json(f));
      emit(out, json{{"discriminant", report::integer(D)}, {"forms", list}}, report::form_rows(forms),
           config.format);
    } else {
      const auto cycles = quadforms::enumerate_cycles_indefinite(D, config.workers, options.factor_budget);
      json list = json::array();
      for (const auto& c : cycles) {
        json forms = json::array();
        for (const auto& f : c.forms) forms.push_back(report::to_json(f));
        list.push_back(json{{"principal", c.principal}, {"forms", forms}});
      }
      emit(out, json{{"discriminant", report::integer(D)}, {"cycles", list}}, report::form_rows(cycles),
           config.format);
    }
    return kExitOk;
  }

  if (cmd == "km-check") {
    require_args(config, 2, "u v");
    const BigInt u = parse_integer(config.args[0], "u");
    const BigInt v = parse_integer(config.args[1], "v");
    const auto verdict = kishi_miyake::km_check(u, v, options.factor_budget);
    emit(out, report::to_json(kishi_miyake::km_polynomial(u, v), verdict), config.format);
    return kExitOk;
  }

  if (cmd == "search-triples") {
    require_args(config, 2, "d B");
    const BigInt d = parse_integer(config.args[0], "d");
    const std::uint64_t bound = parse_positive(config.args[1], "B");
    const auto result = rank_relation::search_triples(d, bound, config.workers,
                                                      std::numeric_limits<std::uint64_t>::max(),
                                                      options.factor_budget);
    emit(out, report::to_json(result), report::triple_rows(result), config.format);
    return kExitOk;
  }

  if (cmd == "family") {
    require_args(config, 3, "k l n");
    const BigInt k = parse_integer(config.args[0], "k");
    const BigInt l = parse_integer(config.args[1], "l");
    const BigInt n = parse_integer(config.args[2], "n");
    const auto violations = family::validate_params(k, l, n);
    if (!violations.empty()) {
      emit(out, json{{"violations", violations}}, config.format);
      return kExitInvalid;
    }
    const auto instance = family::instantiate(family::make_params(k, l, n), options.factor_budget);
    emit(out, report::to_json(instance), config.format);
    return kExitOk;
  }

  if (cmd == "verify") {
    require_args(config, 3, "k l n");
    const auto params = family::make_params(parse_integer(config.args[0], "k"),
                                            parse_integer(config.args[1], "l"),
                                            parse_integer(config.args[2], "n"));
    VerifyOptions verify_options;
    verify_options.triple_bound = config.triple_bound;
    verify_options.class_options = options;
    const auto record = family::verify_theorem1(params, verify_options);
    emit(out, report::to_json(record), config.format);
    return record.budget_events.empty() ? kExitOk : kExitBudget;
  }

  throw InvalidInput("unknown command: " + cmd);
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  }
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact class group and 3-rank toolkit for quadratic fields"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "table";
  unsigned workers = 0;
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--triple-bound", config.triple_bound, "Box size for the triple search (verify)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--factor-budget", config.factor_budget, "Pollard rho iterations per factorization")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--class-budget", config.class_budget, "Largest |D| accepted for class group computation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--workers", workers, std::string("Worker threads (default 1, or $") + kWorkersEnv + ")")
      ->check(CLI::PositiveNumber);

  const std::map<std::string, std::pair<std::string, std::vector<std::string>>> commands = {
      {"classgroup", {"Class group structure of fundamental D (D > 0: narrow)", {"D"}}},
      {"rank3", {"3-rank of the class group of fundamental D", {"D"}}},
      {"forms", {"Reduced forms (D < 0) or rho-cycles (D > 0)", {"D"}}},
      {"km-check", {"Conditions K-1..K-4 for x^3 - uvx - u^2", {"u", "v"}}},
      {"search-triples", {"Triples (x, y, z) for squarefree d in a box of size B", {"d", "B"}}},
      {"family", {"Field instance for parameters (k, l, n)", {"k", "l", "n"}}},
      {"verify", {"Full verification record for (k, l, n)", {"k", "l", "n"}}},
  };
  std::map<std::string, std::vector<std::string>> positional;
  for (const auto& [name, spec] : commands) {
    auto* sub = app.add_subcommand(name, spec.first);
    auto& values = positional[name];
    values.resize(spec.second.size());
    for (std::size_t i = 0; i < spec.second.size(); ++i) {
      sub->add_option(spec.second[i], values[i], spec.second[i])->required()->allow_extra_args(false);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  for (auto* sub : app.get_subcommands()) {
    config.command = sub->get_name();
    config.args = positional[config.command];
  }
  config.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;
  if (workers == 0) {
    workers = 1;
    if (const char* env = std::getenv(kWorkersEnv)) {
      try {
        workers = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception&) {
        err << "error: " << kWorkersEnv << " must be a positive integer\n";
        return kExitInvalid;
      }
      if (workers == 0) {
        err << "error: " << kWorkersEnv << " must be a positive integer\n";
        return kExitInvalid;
      }
    }
  }
  config.workers = workers;
  return run(config, out, err);
}

}  // namespace qfrank::cli
