#pragma once

// The parametrized pair of fields
//   K- = Q(sqrt(l^2 - 2 l k^(3n))),  K+ = Q(sqrt(3 (2 l k^(3n) - l^2)))
// for k = 4, l = 2 (mod 135), and the end-to-end 3-rank verification.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfrank/arith.hpp"
#include "qfrank/classgroup.hpp"
#include "qfrank/kishi_miyake.hpp"
#include "qfrank/rank_relation.hpp"

namespace qfrank {

struct FamilyParams {
  BigInt k;
  BigInt l;
  std::uint32_t n = 0;
};

/// One congruence that the construction asserts about (a, d).
struct CongruenceCheck {
  std::string claim;
  bool holds = false;
};

struct FieldInstance {
  BigInt radicand_minus;  // l^2 - 2 l k^(3n) = -a^2 d
  BigInt radicand_plus;   // 3 (2 l k^(3n) - l^2)
  BigInt a;
  BigInt d;
  BigInt disc_minus;  // discriminant of Q(sqrt(-d))
  BigInt disc_plus;   // discriminant of Q(sqrt(3d))
  std::vector<CongruenceCheck> congruences;

  /// Names of the congruence claims that failed (RefutedCongruence).
  std::vector<std::string> refuted() const;
};

enum class ClaimStatus { Expected, Confirmed, Refuted, Skipped };

std::string_view to_string(ClaimStatus status);

/// One 3-rank, computed by cubing every class and by decomposing the group.
struct RankComputation {
  unsigned by_torsion = 0;
  unsigned by_divisors = 0;
  ClassGroupStructure structure;

  bool consistent() const { return by_torsion == by_divisors && by_divisors == structure.three_rank; }
};

struct VerificationRecord {
  FamilyParams params;
  std::optional<FieldInstance> instance;
  KMVerdict km_verdict;
  std::optional<RankComputation> s;  // K+, narrow sense
  std::optional<RankComputation> r;  // K-
  std::optional<TripleSearchResult> triple_search;
  std::map<std::string, ClaimStatus> paper_claims;
  /// Stages that hit a resource limit, with the reason.
  std::vector<std::string> budget_events;

  bool cross_checks_passed() const;
};

struct VerifyOptions {
  std::uint64_t triple_bound = 1000;
  ClassGroupOptions class_options{};
};

namespace family {

inline constexpr const char* kClaimSAtLeast1 = "s_ge_1";
inline constexpr const char* kClaimRAtLeast2 = "r_ge_2";
inline constexpr const char* kClaimREqualsSPlus1 = "r_eq_s_plus_1";
inline constexpr const char* kClaimKMAllSatisfied = "km_all_satisfied";

/// Labels of violated hypotheses; empty means valid. Parity of k and l is
/// reported separately (k_odd, l_odd) from the n_odd hypothesis.
std::vector<std::string> validate_params(const BigInt& k, const BigInt& l, const BigInt& n);

/// Validates and converts; throws InvalidParams listing the violations.
FamilyParams make_params(const BigInt& k, const BigInt& l, const BigInt& n);

/// Throws InvalidParams, FactorizationBudgetExceeded.
FieldInstance instantiate(const FamilyParams& p, arith::FactorBudget budget = {});

/// u = 2l, v = 3k^n. Throws InvalidParams.
KMInstance km_instance_for(const FamilyParams& p);

/// Never throws on refuted claims or exhausted budgets; those are recorded.
/// Throws InvalidParams.
VerificationRecord verify_theorem1(const FamilyParams& p, const VerifyOptions& options = {});

}  // namespace family
}  // namespace qfrank
