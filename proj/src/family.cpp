#include "qfrank/family.hpp"

#include <limits>

#include "qfrank/errors.hpp"

namespace qfrank {

std::vector<std::string> FieldInstance::refuted() const {
  std::vector<std::string> names;
  for (const auto& c : congruences) {
    if (!c.holds) names.push_back(c.claim);
  }
  return names;
}

std::string_view to_string(ClaimStatus status) {
  switch (status) {
    case ClaimStatus::Expected: return "EXPECTED";
    case ClaimStatus::Confirmed: return "CONFIRMED";
    case ClaimStatus::Refuted: return "REFUTED";
    case ClaimStatus::Skipped: return "SKIPPED";
  }
  return "SKIPPED";
}

bool VerificationRecord::cross_checks_passed() const {
  if (r && !r->consistent()) return false;
  if (s && !s->consistent()) return false;
  return !instance || instance->refuted().empty();
}

namespace family {
namespace {

constexpr std::uint32_t kMaxExponent = 1u << 20;

BigInt power(const BigInt& base, unsigned long e) {
  BigInt result;
  mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), e);
  return result;
}

std::int64_t class_discriminant(const BigInt& D, const char* what, const ClassGroupOptions& options) {
  const BigInt limit = BigInt(std::to_string(options.max_abs_discriminant));
  if (abs(D) > limit || !mpz_fits_slong_p(D.get_mpz_t())) {
    throw ClassBudgetExceeded(std::string(what) + " = " + D.get_str() + " exceeds class budget " +
                              limit.get_str());
  }
  return mpz_get_si(D.get_mpz_t());
}

RankComputation compute_rank(const FormClassGroup& group) {
  RankComputation rc;
  rc.structure = group.structure();
  rc.by_divisors = rc.structure.three_rank;
  rc.by_torsion = classgroup::exact_log3(group.three_torsion_count());
  return rc;
}

ClaimStatus judge(bool holds) { return holds ? ClaimStatus::Confirmed : ClaimStatus::Refuted; }

}  // namespace

std::vector<std::string> validate_params(const BigInt& k, const BigInt& l, const BigInt& n) {
  std::vector<std::string> violations;
  bool positive = true;
  if (k <= 0) violations.push_back("k_positive"), positive = false;
  if (l <= 0) violations.push_back("l_positive"), positive = false;
  if (n <= 0) violations.push_back("n_positive"), positive = false;
  if (arith::mod(k, 135) != 4) violations.push_back("k_mod_135");
  if (arith::mod(l, 135) != 2) violations.push_back("l_mod_135");
  if (arith::mod(k, 2) != 1) violations.push_back("k_odd");
  if (arith::mod(l, 2) != 1) violations.push_back("l_odd");
  if (arith::mod(n, 2) != 1) violations.push_back("n_odd");
  if (gcd(k, l) != 1) violations.push_back("gcd_k_l");
  if (arith::mod(n, 3) == 0) violations.push_back("n_not_mod_3");
  if (n > kMaxExponent) {
    violations.push_back("n_too_large");
  } else if (positive) {
    const auto e = 3 * mpz_get_ui(n.get_mpz_t());
    // k >= 2 makes 2 k^(3n) > l once 3n exceeds the bit length of l.
    const bool trivially_less = k >= 2 && e > mpz_sizeinbase(l.get_mpz_t(), 2);
    if (!trivially_less && !(l < 2 * power(k, e))) violations.push_back("l_lt_2k3n");
  }
  return violations;
}

FamilyParams make_params(const BigInt& k, const BigInt& l, const BigInt& n) {
  const auto violations = validate_params(k, l, n);
  if (!violations.empty()) {
    std::string list;
    for (const auto& v : violations) list += (list.empty() ? "" : ", ") + v;
    throw InvalidParams("(" + k.get_str() + ", " + l.get_str() + ", " + n.get_str() +
                        ") violates: " + list);
  }
  return FamilyParams{k, l, static_cast<std::uint32_t>(mpz_get_ui(n.get_mpz_t()))};
}

FieldInstance instantiate(const FamilyParams& p, arith::FactorBudget budget) {
  make_params(p.k, p.l, BigInt(static_cast<unsigned long>(p.n)));
  const BigInt k3n = power(p.k, 3ul * p.n);
  FieldInstance inst;
  inst.radicand_minus = p.l * p.l - 2 * p.l * k3n;
  inst.radicand_plus = 3 * (2 * p.l * k3n - p.l * p.l);
  const auto parts = arith::squarefree_decompose(BigInt(-inst.radicand_minus), budget);
  inst.a = parts.a;
  inst.d = parts.d;
  inst.disc_minus = arith::field_discriminant(BigInt(-inst.d));
  const BigInt plus_part = arith::squarefree_decompose(BigInt(3 * inst.d), budget).d;
  inst.disc_plus = arith::field_discriminant(plus_part);

  const auto a2d27 = arith::mod(BigInt(inst.a * inst.a * inst.d), 27);
  inst.congruences = {
      {"radicand_minus_eq_neg_a2_d", inst.radicand_minus == -inst.a * inst.a * inst.d},
      {"radicand_plus_eq_neg3_radicand_minus", inst.radicand_plus == -3 * inst.radicand_minus},
      {"a_odd", arith::mod(inst.a, 2) == 1},
      {"a_divisible_by_3", arith::mod(inst.a, 3) == 0},
      {"d_not_divisible_by_3", arith::mod(inst.d, 3) != 0},
      {"a2d_mod_27_in_9_18", a2d27 == 9 || a2d27 == 18},
      {"d_mod_4_eq_1", arith::mod(inst.d, 4) == 1},
  };
  return inst;
}

KMInstance km_instance_for(const FamilyParams& p) {
  make_params(p.k, p.l, BigInt(static_cast<unsigned long>(p.n)));
  return kishi_miyake::km_polynomial(2 * p.l, 3 * power(p.k, p.n));
}

VerificationRecord verify_theorem1(const FamilyParams& p, const VerifyOptions& options) {
  VerificationRecord record;
  record.params = p;
  for (const char* claim : {kClaimSAtLeast1, kClaimRAtLeast2, kClaimREqualsSPlus1, kClaimKMAllSatisfied}) {
    record.paper_claims[claim] = ClaimStatus::Expected;
  }

  const KMInstance km = km_instance_for(p);
  const auto& budget = options.class_options.factor_budget;
  try {
    record.km_verdict = kishi_miyake::km_check(km.u, km.v, budget);
    record.paper_claims[kClaimKMAllSatisfied] = judge(record.km_verdict.all_satisfied);
  } catch (const BudgetExceeded& e) {
    record.budget_events.push_back(std::string("km_check: ") + e.what());
    record.km_verdict.disc_f = km.disc_f;
    record.paper_claims[kClaimKMAllSatisfied] = ClaimStatus::Skipped;
  }

  try {
    record.instance = instantiate(p, budget);
  } catch (const BudgetExceeded& e) {
    record.budget_events.push_back(std::string("instantiate: ") + e.what());
  }

  if (record.instance) {
    try {
      const auto D = class_discriminant(record.instance->disc_minus, "disc_minus", options.class_options);
      record.r = compute_rank(FormClassGroup::imaginary(D, options.class_options));
    } catch (const BudgetExceeded& e) {
      record.budget_events.push_back(std::string("r: ") + e.what());
    }
    try {
      const auto D = class_discriminant(record.instance->disc_plus, "disc_plus", options.class_options);
      record.s = compute_rank(FormClassGroup::narrow_real(D, options.class_options));
    } catch (const BudgetExceeded& e) {
      record.budget_events.push_back(std::string("s: ") + e.what());
    }
    try {
      record.triple_search = rank_relation::search_triples(
          record.instance->d, options.triple_bound, options.class_options.workers,
          std::numeric_limits<std::uint64_t>::max(), budget);
    } catch (const BudgetExceeded& e) {
      record.budget_events.push_back(std::string("triple_search: ") + e.what());
    }
  }

  auto resolve = [&](const char* claim, bool known, bool holds) {
    record.paper_claims[claim] = known ? judge(holds) : ClaimStatus::Skipped;
  };
  const bool have_r = record.r && record.r->consistent();
  const bool have_s = record.s && record.s->consistent();
  resolve(kClaimSAtLeast1, have_s, have_s && record.s->by_torsion >= 1);
  resolve(kClaimRAtLeast2, have_r, have_r && record.r->by_torsion >= 2);
  resolve(kClaimREqualsSPlus1, have_r && have_s,
          have_r && have_s && record.r->by_torsion == record.s->by_torsion + 1);
  return record;
}

}  // namespace family
}  // namespace qfrank
