#pragma once

// Integer triples (x, y, z) with x^2 - 4y^3 = 3z^2 d, gcd(x, y) = 1,
// xyz != 0, y = 1 (mod 3), x^2 = 1 or 7 (mod 9). Their absence for d is
// what separates the 3-ranks of Q(sqrt(-d)) and Q(sqrt(3d)) by exactly one.

#include <compare>
#include <cstdint>
#include <limits>
#include <vector>

#include "qfrank/arith.hpp"

namespace qfrank {

struct Triple {
  BigInt x;
  BigInt y;
  BigInt z;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Canonical order (y, z, x).
bool operator<(const Triple& lhs, const Triple& rhs);

struct TripleCheck {
  bool k5 = false;  // x^2 - 4y^3 = 3z^2 d
  bool k6 = false;  // gcd(x, y) = 1
  bool k7 = false;  // xyz != 0
  bool k8 = false;  // y = 1 (mod 3) and x^2 = 1, 7 (mod 9)
  bool all = false;
};

/// Triples are listed with z > 0; (x, y, -z) passes exactly when
/// (x, y, z) does.
struct TripleSearchResult {
  BigInt d;
  std::uint64_t bound = 0;
  std::vector<Triple> found;
  bool exhausted = false;
};

namespace rank_relation {

/// Throws InvalidD unless d > 0 is squarefree and 3 does not divide d.
void validate_d(const BigInt& d, arith::FactorBudget budget = {});

TripleCheck check_triple(const BigInt& d, const Triple& t, arith::FactorBudget budget = {});

/// Scans y in [-bound, bound] with y = 1 (mod 3) and z in [1, bound],
/// solving for x by the exact square test. When the box holds more than
/// max_cells (y, z) pairs only the leading full y-rows that fit are
/// scanned and exhausted is false.
TripleSearchResult search_triples(const BigInt& d, std::uint64_t bound, unsigned workers = 1,
                                  std::uint64_t max_cells = std::numeric_limits<std::uint64_t>::max(),
                                  arith::FactorBudget budget = {});

}  // namespace rank_relation
}  // namespace qfrank
