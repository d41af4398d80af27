#include "qfrank/kishi_miyake.hpp"

#include "qfrank/errors.hpp"

namespace qfrank {

std::string_view to_string(K4Branch branch) {
  switch (branch) {
    case K4Branch::K41: return "K41";
    case K4Branch::K42: return "K42";
    case K4Branch::K43: return "K43";
    case K4Branch::None: return "none";
  }
  return "none";
}

namespace kishi_miyake {
namespace {

BigInt cube(const BigInt& x) { return x * x * x; }

BigInt evaluate(const KMInstance& inst, const BigInt& x) {
  return x * x * x + inst.poly_p * x + inst.poly_q;
}

// v = u +- 1 (mod m), i.e. u = v +- 1.
bool adjacent_mod(const BigInt& u, const BigInt& v, unsigned long m) {
  const auto du = arith::mod(u, m);
  const auto dv = arith::mod(v, m);
  return du == (dv + 1) % m || du == (dv + m - 1) % m;
}

}  // namespace

KMInstance km_polynomial(const BigInt& u, const BigInt& v) {
  if (u == 0) throw ZeroU("u must be nonzero");
  KMInstance inst;
  inst.u = u;
  inst.v = v;
  inst.poly_p = -u * v;
  inst.poly_q = -u * u;
  inst.disc_f = -4 * cube(inst.poly_p) - 27 * inst.poly_q * inst.poly_q;
  return inst;
}

bool is_irreducible_cubic(const KMInstance& inst, arith::FactorBudget budget) {
  // A rational root of a monic integer cubic is an integer dividing q.
  const BigInt q = abs(inst.poly_q);
  const auto f = arith::factor(q, budget);
  std::vector<BigInt> divisors{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t base = divisors.size();
    BigInt pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divisors.push_back(divisors[j] * pk);
    }
  }
  for (const BigInt& d : divisors) {
    if (evaluate(inst, d) == 0 || evaluate(inst, BigInt(-d)) == 0) return false;
  }
  return true;
}

K4Branch k4_branch(const BigInt& u, const BigInt& v) {
  if (arith::mod(v, 3) != 0) return K4Branch::K41;
  const BigInt uv = u * v;
  if (arith::mod(uv, 9) != 3) {
    return adjacent_mod(u, v, 9) ? K4Branch::K42 : K4Branch::None;
  }
  return adjacent_mod(u, v, 27) ? K4Branch::K43 : K4Branch::None;
}

KMVerdict km_check(const BigInt& u, const BigInt& v, arith::FactorBudget budget) {
  const KMInstance inst = km_polynomial(u, v);
  KMVerdict verdict;
  verdict.disc_f = inst.disc_f;
  verdict.k1 = gcd(u, v) == 1;
  verdict.k2 = is_irreducible_cubic(inst, budget);
  verdict.k3 = !arith::is_perfect_square(inst.disc_f);
  verdict.k4_branch = k4_branch(u, v);
  verdict.all_satisfied = verdict.k1 && verdict.k2 && verdict.k3 && verdict.k4_branch != K4Branch::None;
  return verdict;
}

BigInt field_discriminant_of(const KMInstance& inst, arith::FactorBudget budget) {
  if (arith::is_perfect_square(inst.disc_f)) {
    throw InvalidInput("disc_f is a perfect square; no quadratic field");
  }
  const BigInt magnitude = abs(inst.disc_f);
  BigInt d = arith::squarefree_decompose(magnitude, budget).d;
  if (inst.disc_f < 0) d = -d;
  return arith::field_discriminant(d);
}

}  // namespace kishi_miyake
}  // namespace qfrank
