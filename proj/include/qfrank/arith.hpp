#pragma once

// Exact integer utilities: primality, factorization, squarefree parts,
// square tests and the Kronecker symbol.

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace qfrank {

using BigInt = mpz_class;

namespace arith {

/// Effort limit for the randomized splitting stage of factor().
/// Counts polynomial iterations summed over every split of one call.
struct FactorBudget {
  std::uint64_t max_iterations = 20'000'000;
};

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// value = prod prime^exponent, primes strictly increasing.
struct Factorization {
  BigInt value;
  std::vector<PrimePower> factors;

  BigInt recompose() const;
};

using SmallFactorization = std::vector<std::pair<std::uint64_t, unsigned>>;

bool is_prime(std::uint64_t n);
bool is_prime(const BigInt& n);

/// Precondition n >= 1. Throws FactorizationBudgetExceeded when a
/// composite cofactor survives the budget.
Factorization factor(const BigInt& n, FactorBudget budget = {});
SmallFactorization factor_u64(std::uint64_t n, FactorBudget budget = {});

/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(const SmallFactorization& f);

/// n = a^2 * d with d squarefree.
struct SquarefreeParts {
  BigInt a;
  BigInt d;
};

SquarefreeParts squarefree_decompose(const BigInt& n, FactorBudget budget = {});
bool is_squarefree(const BigInt& n, FactorBudget budget = {});

std::uint64_t isqrt(std::uint64_t n);
/// Floor square root; precondition n >= 0.
BigInt isqrt(const BigInt& n);

bool is_perfect_square(std::int64_t n);
bool is_perfect_square(const BigInt& n);

/// Jacobi symbol (a/n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n);
/// Kronecker symbol (a/n) for any integers.
int kronecker(std::int64_t a, std::int64_t n);

/// Discriminant of the quadratic field Q(sqrt(m)) for squarefree m != 0, 1.
BigInt field_discriminant(const BigInt& squarefree_m);

/// D = 1 (mod 4) squarefree, or D = 4m with m = 2, 3 (mod 4) squarefree;
/// D = 1 excluded.
bool is_fundamental_discriminant(const BigInt& D, FactorBudget budget = {});

/// Residue in [0, m) for m > 0.
std::uint64_t mod(const BigInt& x, std::uint64_t m);
std::int64_t mod(std::int64_t x, std::int64_t m);

}  // namespace arith
}  // namespace qfrank
