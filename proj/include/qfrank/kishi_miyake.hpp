#pragma once

// The cubic f(x) = x^3 - uvx - u^2 and the four conditions under which
// Q(sqrt(disc f)) acquires an unramified cyclic cubic extension.

#include <string_view>

#include "qfrank/arith.hpp"

namespace qfrank {

struct KMInstance {
  BigInt u;
  BigInt v;
  BigInt poly_p;  // -u v, coefficient of x
  BigInt poly_q;  // -u^2, constant term
  BigInt disc_f;  // -4 p^3 - 27 q^2 = u^3 (4 v^3 - 27 u)
};

enum class K4Branch { K41, K42, K43, None };

std::string_view to_string(K4Branch branch);

struct KMVerdict {
  bool k1 = false;  // gcd(u, v) = 1
  bool k2 = false;  // f irreducible over Q
  bool k3 = false;  // disc_f not a perfect square
  K4Branch k4_branch = K4Branch::None;
  bool all_satisfied = false;
  BigInt disc_f;
};

namespace kishi_miyake {

/// Throws ZeroU.
KMInstance km_polynomial(const BigInt& u, const BigInt& v);

/// Rational root scan over +-d for d | u^2. Complete for monic cubics.
bool is_irreducible_cubic(const KMInstance& inst, arith::FactorBudget budget = {});

/// First applicable sub-branch of the fourth condition, or None.
K4Branch k4_branch(const BigInt& u, const BigInt& v);

/// Throws ZeroU.
KMVerdict km_check(const BigInt& u, const BigInt& v, arith::FactorBudget budget = {});

/// Fundamental discriminant of Q(sqrt(disc_f)); disc_f must not be a square.
BigInt field_discriminant_of(const KMInstance& inst, arith::FactorBudget budget = {});

}  // namespace kishi_miyake
}  // namespace qfrank
