#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "qfrank/errors.hpp"
#include "qfrank/family.hpp"

using namespace qfrank;
using namespace qfrank::family;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

BigInt pow_big(long base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), BigInt(base).get_mpz_t(), e);
  return r;
}

}  // namespace

TEST_CASE("validate_params") {
  CHECK(validate_params(139, 137, 1).empty());

  const auto bad = validate_params(4, 2, 1);
  CHECK(contains(bad, "gcd_k_l"));
  CHECK(contains(bad, "k_odd"));
  CHECK(contains(bad, "l_odd"));
  CHECK_FALSE(contains(bad, "k_mod_135"));

  CHECK(contains(validate_params(139, 137, 3), "n_not_mod_3"));
  CHECK(contains(validate_params(139, 137, 2), "n_odd"));
  CHECK(contains(validate_params(140, 137, 1), "k_mod_135"));
  CHECK(contains(validate_params(139, 138, 1), "l_mod_135"));
  CHECK(contains(validate_params(0, 137, 1), "k_positive"));
  // l = 2 (mod 135), odd, and larger than 2 k^3 for k = 139.
  const BigInt big_l = 137 + 270 * ((2 * pow_big(139, 3) - 137) / 270 + 1);
  REQUIRE(arith::mod(big_l, 270) == 137);
  REQUIRE(big_l > 2 * pow_big(139, 3));
  CHECK(contains(validate_params(139, big_l, 1), "l_lt_2k3n"));
  CHECK(validate_params(139, 137, 5).empty());
  CHECK_THROWS_AS(make_params(4, 2, 1), InvalidParams);
}

TEST_CASE("instantiate (139, 137, 1)") {
  const auto inst = instantiate(make_params(139, 137, 1));
  CHECK(inst.radicand_minus == -735840837);
  CHECK(inst.radicand_minus == BigInt(137) * 137 - 2 * 137 * pow_big(139, 3));
  CHECK(inst.radicand_plus == 2207522511);
  CHECK(inst.radicand_plus == -3 * inst.radicand_minus);
  // Frozen from the trial-division oracle in test_arith: 3^2 * 137 * 596789.
  CHECK(inst.a == 3);
  CHECK(inst.d == 137 * 596789);
  CHECK(arith::mod(BigInt(inst.a * inst.a * inst.d), 9) == 0);
  CHECK(inst.disc_minus == -4 * inst.d);  // -d = 3 (mod 4)
  CHECK(inst.disc_plus == 12 * inst.d);   // 3d = 3 (mod 4)
  CHECK(inst.refuted().empty());
  CHECK(inst.congruences.size() >= 6);
}

TEST_CASE("congruence claims hold across valid n = 1 parameters") {
  int instances = 0;
  for (long k = 139; k < 3000; k += 270) {
    for (long l = 137; l < 3000; l += 270) {
      if (!validate_params(k, l, 1).empty()) continue;
      const auto inst = instantiate(make_params(k, l, 1));
      CHECK_MESSAGE(inst.refuted().empty(), "k = " << k << ", l = " << l);
      CHECK(inst.radicand_plus == -3 * inst.radicand_minus);
      CHECK(inst.disc_minus < 0);
      CHECK(inst.disc_plus > 0);
      CHECK(arith::is_fundamental_discriminant(inst.disc_minus));
      CHECK(arith::is_fundamental_discriminant(inst.disc_plus));
      CHECK(arith::squarefree_decompose(inst.radicand_plus).d ==
            arith::squarefree_decompose(BigInt(3 * inst.d)).d);
      ++instances;
    }
  }
  CHECK(instances > 50);
}

TEST_CASE("km_instance_for") {
  auto km = km_instance_for(make_params(139, 137, 1));
  CHECK(km.u == 274);
  CHECK(km.v == 417);
  auto km5 = km_instance_for(make_params(139, 137, 5));
  CHECK(km5.u == 274);
  CHECK(km5.v == 3 * pow_big(139, 5));
  for (long k = 139; k < 2000; k += 270) {
    for (long l = 137; l < 2000; l += 270) {
      for (long n : {1, 5, 7}) {
        if (!validate_params(k, l, n).empty()) continue;
        const auto inst = km_instance_for(make_params(k, l, n));
        CHECK(gcd(inst.u, inst.v) == 1);
      }
    }
  }
  CHECK_THROWS_AS(km_instance_for(FamilyParams{4, 2, 1}), InvalidParams);
}

TEST_CASE("verify_theorem1 on (139, 137, 1)") {
  VerifyOptions options;
  options.triple_bound = 200;
  const auto rec = verify_theorem1(make_params(139, 137, 1), options);
  CHECK(rec.budget_events.empty());
  REQUIRE(rec.r);
  REQUIRE(rec.s);
  CHECK(rec.r->consistent());
  CHECK(rec.s->consistent());
  CHECK(rec.cross_checks_passed());
  CHECK(rec.paper_claims.at(kClaimKMAllSatisfied) == ClaimStatus::Refuted);
  CHECK(rec.km_verdict.k4_branch == K4Branch::None);
  for (const auto& [name, status] : rec.paper_claims) {
    CHECK(status != ClaimStatus::Expected);
    CHECK(status != ClaimStatus::Skipped);
  }
  // Claims are derived from the computed ranks.
  CHECK((rec.paper_claims.at(kClaimRAtLeast2) == ClaimStatus::Confirmed) == (rec.r->by_torsion >= 2));
  CHECK((rec.paper_claims.at(kClaimSAtLeast1) == ClaimStatus::Confirmed) == (rec.s->by_torsion >= 1));
  CHECK((rec.paper_claims.at(kClaimREqualsSPlus1) == ClaimStatus::Confirmed) ==
        (rec.r->by_torsion == rec.s->by_torsion + 1));
  REQUIRE(rec.triple_search);
  CHECK(rec.triple_search->exhausted);
  CHECK(rec.triple_search->d == rec.instance->d);
}

TEST_CASE("verify_theorem1 marks over-budget stages as skipped") {
  VerifyOptions options;
  options.triple_bound = 10;
  options.class_options.factor_budget.max_iterations = 20000;
  const auto rec = verify_theorem1(make_params(139, 137, 5), options);
  CHECK_FALSE(rec.budget_events.empty());
  CHECK(rec.paper_claims.at(kClaimRAtLeast2) == ClaimStatus::Skipped);
  CHECK(rec.paper_claims.at(kClaimSAtLeast1) == ClaimStatus::Skipped);
  CHECK(rec.paper_claims.at(kClaimREqualsSPlus1) == ClaimStatus::Skipped);
  CHECK_FALSE(rec.r);
  CHECK_FALSE(rec.s);

  VerifyOptions small_class;
  small_class.triple_bound = 10;
  small_class.class_options.max_abs_discriminant = 1000;
  const auto rec1 = verify_theorem1(make_params(139, 137, 1), small_class);
  CHECK(rec1.budget_events.size() == 2);
  CHECK(rec1.paper_claims.at(kClaimREqualsSPlus1) == ClaimStatus::Skipped);
  CHECK(rec1.paper_claims.at(kClaimKMAllSatisfied) == ClaimStatus::Refuted);
  CHECK(rec1.triple_search);
}

TEST_CASE("verify_theorem1 rejects invalid parameters") {
  CHECK_THROWS_AS(verify_theorem1(FamilyParams{4, 2, 1}), InvalidParams);
}
