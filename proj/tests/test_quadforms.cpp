#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "qfrank/errors.hpp"
#include "qfrank/quadforms.hpp"

using namespace qfrank;
using namespace qfrank::quadforms;

namespace {

oracle::Form tup(const QuadForm& f) { return {f.a(), f.b(), f.c()}; }
QuadForm form(const oracle::Form& f) { return QuadForm(std::get<0>(f), std::get<1>(f), std::get<2>(f)); }

std::vector<std::int64_t> negative_discriminants(std::int64_t max_abs) {
  std::vector<std::int64_t> out;
  for (std::int64_t D = -3; D >= -max_abs; --D) {
    const auto r = ((D % 4) + 4) % 4;
    if (r == 0 || r == 1) out.push_back(D);
  }
  return out;
}

}  // namespace

TEST_CASE("construction enforces discriminant and primitivity") {
  CHECK_THROWS_AS(QuadForm(2, 2, 2), NotPrimitive);
  CHECK_THROWS_AS(QuadForm(1, 0, 0), InvalidDiscriminant);
  CHECK_THROWS_AS(QuadForm(3, 2, -1), SquareDiscriminant);
  CHECK_THROWS_AS(QuadForm(1, 0, std::int64_t{1} << 61), Overflow);
  CHECK(QuadForm(2, -1, 3).discriminant() == -23);
}

TEST_CASE("principal_form") {
  CHECK(principal_form(-4) == QuadForm(1, 0, 1));
  CHECK(principal_form(-23) == QuadForm(1, 1, 6));
  CHECK(principal_form(229) == QuadForm(1, 1, -57));
  CHECK_THROWS_AS(principal_form(-5), InvalidDiscriminant);
  CHECK_THROWS_AS(principal_form(16), SquareDiscriminant);
}

TEST_CASE("reduce_definite examples") {
  CHECK(reduce_definite(QuadForm(1, 0, 2)) == QuadForm(1, 0, 2));
  CHECK(reduce_definite(QuadForm(2, -1, 3)) == QuadForm(2, -1, 3));

  // Oracle: every image of (3, 10, 9) under SL2 matrices with entries in
  // [-4, 4] that satisfies the reduced inequalities.
  std::set<oracle::Form> reduced_images;
  const oracle::Form f{3, 10, 9};
  for (int al = -4; al <= 4; ++al)
    for (int be = -4; be <= 4; ++be)
      for (int ga = -4; ga <= 4; ++ga)
        for (int de = -4; de <= 4; ++de) {
          if (al * de - be * ga != 1) continue;
          auto g = oracle::act(f, al, be, ga, de);
          auto [a, b, c] = g;
          if (a > 0 && -a < b && b <= a && a <= c && !(a == c && b < 0)) reduced_images.insert(g);
        }
  REQUIRE(reduced_images == std::set<oracle::Form>{{1, 0, 2}});
  CHECK(reduce_definite(QuadForm(3, 10, 9)) == QuadForm(1, 0, 2));

  CHECK_THROWS_AS(reduce_definite(QuadForm(-1, 1, -6)), NotDefinite);
  CHECK_THROWS_AS(reduce_definite(QuadForm(1, 1, -1)), NotDefinite);
}

TEST_CASE("tie-break normalization") {
  // b = -a and a = c both force b >= 0.
  CHECK(reduce_definite(QuadForm(2, -2, 3)) == QuadForm(2, 2, 3));
  CHECK(reduce_definite(QuadForm(3, -2, 3)) == QuadForm(3, 2, 3));
}

TEST_CASE("compose examples for D = -23") {
  const QuadForm e(1, 1, 6), g(2, 1, 3), gi(2, -1, 3);
  CHECK(compose(e, g) == g);
  CHECK(compose(g, g) == gi);
  CHECK(compose(g, gi) == e);
  CHECK_THROWS_AS(compose(g, QuadForm(1, 0, 1)), DiscriminantMismatch);
}

TEST_CASE("enumerate_reduced_definite matches the brute-force scan") {
  CHECK(enumerate_reduced_definite(-4) == std::vector<QuadForm>{QuadForm(1, 0, 1)});
  CHECK(enumerate_reduced_definite(-23) ==
        std::vector<QuadForm>{QuadForm(1, 1, 6), QuadForm(2, -1, 3), QuadForm(2, 1, 3)});
  CHECK(enumerate_reduced_definite(-20) == std::vector<QuadForm>{QuadForm(1, 0, 5), QuadForm(2, 2, 3)});
  for (std::int64_t D : negative_discriminants(3000)) {
    std::vector<oracle::Form> got;
    for (const auto& f : enumerate_reduced_definite(D)) got.push_back(tup(f));
    CHECK_MESSAGE(got == oracle::reduced_definite(D), "D = " << D);
  }
  CHECK_THROWS_AS(enumerate_reduced_definite(5), InvalidDiscriminant);
  CHECK_THROWS_AS(enumerate_reduced_definite(-6), InvalidDiscriminant);
}

TEST_CASE("enumeration is independent of the worker count") {
  for (std::int64_t D : {-3299, -20000004, -4027}) {
    CHECK(enumerate_reduced_definite(D, 1) == enumerate_reduced_definite(D, 7));
  }
  for (std::int64_t D : {229, 4001, 1000005}) {
    const auto one = enumerate_cycles_indefinite(D, 1);
    const auto many = enumerate_cycles_indefinite(D, 8);
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].forms == many[i].forms);
  }
}

TEST_CASE("one-class discriminants") {
  for (std::int64_t D : {-3, -4, -7, -8, -11, -19, -43, -67, -163}) {
    CHECK_MESSAGE(enumerate_reduced_definite(D).size() == 1, "D = " << D);
  }
  CHECK(enumerate_reduced_definite(-23).size() == 3);
}

TEST_CASE("reduction is unique per class for |D| <= 500") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (std::int64_t D : negative_discriminants(500)) {
    const auto forms = enumerate_reduced_definite(D);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      CHECK(is_reduced_definite(forms[i]));
      CHECK(reduce_definite(forms[i]) == forms[i]);
      for (std::size_t j = i + 1; j < forms.size(); ++j) {
        CHECK_FALSE(oracle::equivalent_small_matrix(tup(forms[i]), tup(forms[j]), 2));
      }
      // Random members of the class reduce back to the same form.
      for (int trial = 0; trial < 20; ++trial) {
        int al, be, ga, de;
        do {
          al = entry(rng), be = entry(rng), ga = entry(rng), de = entry(rng);
        } while (al * de - be * ga != 1);
        const QuadForm g = form(oracle::act(tup(forms[i]), al, be, ga, de));
        CHECK(g.discriminant() == D);
        CHECK(reduce_definite(g) == forms[i]);
      }
    }
  }
}

TEST_CASE("definite group laws on random triples") {
  std::mt19937_64 rng(11);
  const auto discs = negative_discriminants(200000);
  std::uniform_int_distribution<std::size_t> pick_d(0, discs.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t D = discs[pick_d(rng)];
    const auto forms = enumerate_reduced_definite(D);
    std::uniform_int_distribution<std::size_t> pick(0, forms.size() - 1);
    const QuadForm e = reduce_definite(principal_form(D));
    const QuadForm &f = forms[pick(rng)], &g = forms[pick(rng)], &h = forms[pick(rng)];
    CHECK(compose(e, f) == f);
    CHECK(compose(f, f.inverse()) == e);
    CHECK(compose(f, g) == compose(g, f));
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    const QuadForm fg = compose(f, g);
    CHECK(fg.discriminant() == D);
    CHECK(is_reduced_definite(fg));
    CHECK(power(f, forms.size()) == e);
  }
}

TEST_CASE("reduce_indefinite examples") {
  CHECK(reduce_indefinite(QuadForm(1, 1, -1)) == QuadForm(1, 1, -1));
  CHECK(reduce_indefinite(QuadForm(1, 2, -2)) == QuadForm(1, 2, -2));
  CHECK_THROWS_AS(reduce_indefinite(QuadForm(3, 2, -1)), SquareDiscriminant);
  CHECK_THROWS_AS(reduce_indefinite(QuadForm(1, 1, 6)), NotIndefinite);
  // A far-from-reduced form lands on a reduced one of the same discriminant.
  const QuadForm g = reduce_indefinite(QuadForm(1000, 2001, 1000 - 57));
  CHECK(g.discriminant() == 2001 * 2001 - 4 * 1000 * 943);
  CHECK(is_reduced_indefinite(g));
}

TEST_CASE("enumerate_cycles_indefinite examples") {
  const auto c5 = enumerate_cycles_indefinite(5);
  REQUIRE(c5.size() == 1);
  CHECK(c5[0].principal);
  CHECK(std::set<QuadForm>(c5[0].forms.begin(), c5[0].forms.end()) ==
        std::set<QuadForm>{QuadForm(1, 1, -1), QuadForm(-1, 1, 1)});

  const auto c12 = enumerate_cycles_indefinite(12);
  REQUIRE(c12.size() == 2);
  std::set<std::set<QuadForm>> got;
  for (const auto& c : c12) got.insert({c.forms.begin(), c.forms.end()});
  CHECK(got == std::set<std::set<QuadForm>>{{QuadForm(1, 2, -2), QuadForm(-2, 2, 1)},
                                            {QuadForm(-1, 2, 2), QuadForm(2, 2, -1)}});
  CHECK(std::count_if(c12.begin(), c12.end(), [](const Cycle& c) { return c.principal; }) == 1);

  REQUIRE(oracle::count_cycles(229) == 3);
  CHECK(enumerate_cycles_indefinite(229).size() == 3);
  CHECK_THROWS_AS(enumerate_cycles_indefinite(-23), InvalidDiscriminant);
  CHECK_THROWS_AS(enumerate_cycles_indefinite(16), SquareDiscriminant);
}

TEST_CASE("cycles partition the reduced indefinite forms") {
  for (std::int64_t D = 5; D < 1500; ++D) {
    const auto r = D % 4;
    if (r != 0 && r != 1) continue;
    const auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(D)));
    if (s * s == D || (s + 1) * (s + 1) == D) continue;
    const auto cycles = enumerate_cycles_indefinite(D);
    std::vector<oracle::Form> all;
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.forms.size(); ++i) {
        CHECK(is_reduced_indefinite(c.forms[i]));
        CHECK(rho(c.forms[i]) == c.forms[(i + 1) % c.forms.size()]);
        CHECK(tup(rho(c.forms[i])) == oracle::rho_step(tup(c.forms[i])));
        all.push_back(tup(c.forms[i]));
      }
    }
    std::sort(all.begin(), all.end());
    CHECK_MESSAGE(std::adjacent_find(all.begin(), all.end()) == all.end(), "D = " << D);
    CHECK_MESSAGE(all == oracle::reduced_indefinite_all(D), "D = " << D);
    CHECK_MESSAGE(cycles.size() == oracle::count_cycles(D), "D = " << D);
  }
}

TEST_CASE("is_equivalent_indefinite") {
  CHECK(is_equivalent_indefinite(QuadForm(1, 1, -1), QuadForm(1, 1, -1)));
  CHECK_FALSE(is_equivalent_indefinite(QuadForm(1, 2, -2), QuadForm(-1, 2, 2)));
  CHECK(is_equivalent_indefinite(QuadForm(1, 1, -1), QuadForm(-1, 1, 1)));
  CHECK_THROWS_AS(is_equivalent_indefinite(QuadForm(1, 1, -1), QuadForm(1, 2, -2)), DiscriminantMismatch);

  // Class invariance under random SL2 changes of variable.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (std::int64_t D : {229, 316, 1345, 4001}) {
    for (const auto& c : enumerate_cycles_indefinite(D)) {
      for (int trial = 0; trial < 10; ++trial) {
        int al, be, ga, de;
        do {
          al = entry(rng), be = entry(rng), ga = entry(rng), de = entry(rng);
        } while (al * de - be * ga != 1);
        const QuadForm g = form(oracle::act(tup(c.forms[0]), al, be, ga, de));
        CHECK(is_equivalent_indefinite(g, c.forms[0]));
        const auto& others = c.forms;
        CHECK(std::find(others.begin(), others.end(), reduce_indefinite(g)) != others.end());
      }
    }
  }
}

TEST_CASE("indefinite group laws") {
  std::mt19937_64 rng(5);
  for (std::int64_t D : {229, 1345, 4001, 3305, 10001, 1000005}) {
    const auto cycles = enumerate_cycles_indefinite(D);
    const QuadForm e = principal_form(D);
    std::uniform_int_distribution<std::size_t> pick(0, cycles.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      const QuadForm f = cycles[pick(rng)].forms[0];
      const QuadForm g = cycles[pick(rng)].forms[0];
      const QuadForm h = cycles[pick(rng)].forms[0];
      CHECK(is_equivalent_indefinite(compose(e, f), f));
      CHECK(is_equivalent_indefinite(compose(f, f.inverse()), e));
      CHECK(is_equivalent_indefinite(compose(f, g), compose(g, f)));
      CHECK(is_equivalent_indefinite(compose(compose(f, g), h), compose(f, compose(g, h))));
      CHECK(compose(f, g).discriminant() == D);
    }
  }
}
