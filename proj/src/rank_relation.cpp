#include "qfrank/rank_relation.hpp"

#include <algorithm>

#include "qfrank/errors.hpp"
#include "qfrank/parallel.hpp"

namespace qfrank {

bool operator<(const Triple& lhs, const Triple& rhs) {
  if (lhs.y != rhs.y) return lhs.y < rhs.y;
  if (lhs.z != rhs.z) return lhs.z < rhs.z;
  return lhs.x < rhs.x;
}

namespace rank_relation {
namespace {

TripleCheck evaluate(const BigInt& d, const Triple& t) {
  const auto& [x, y, z] = t;
  TripleCheck check;
  check.k5 = x * x - 4 * y * y * y == 3 * z * z * d;
  check.k6 = gcd(x, y) == 1;
  check.k7 = x != 0 && y != 0 && z != 0;
  const auto x2 = arith::mod(BigInt(x * x), 9);
  check.k8 = arith::mod(y, 3) == 1 && (x2 == 1 || x2 == 7);
  check.all = check.k5 && check.k6 && check.k7 && check.k8;
  return check;
}

}  // namespace

void validate_d(const BigInt& d, arith::FactorBudget budget) {
  if (d <= 0) throw InvalidD("d must be positive");
  if (arith::mod(d, 3) == 0) throw InvalidD("d must not be divisible by 3");
  if (!arith::is_squarefree(d, budget)) throw InvalidD(d.get_str() + " is not squarefree");
}

TripleCheck check_triple(const BigInt& d, const Triple& t, arith::FactorBudget budget) {
  validate_d(d, budget);
  return evaluate(d, t);
}

TripleSearchResult search_triples(const BigInt& d, std::uint64_t bound, unsigned workers,
                                  std::uint64_t max_cells, arith::FactorBudget budget) {
  validate_d(d, budget);
  if (bound == 0) throw InvalidInput("search bound must be positive");

  // y = 3j + 1 for j in [j_lo, j_hi].
  const std::int64_t B = static_cast<std::int64_t>(bound);
  const std::int64_t j_lo = -((B + 1) / 3);
  const std::int64_t j_hi = (B - 1) / 3;
  std::int64_t rows = j_hi - j_lo + 1;
  bool exhausted = true;
  if (static_cast<std::uint64_t>(rows) > max_cells / bound) {
    rows = static_cast<std::int64_t>(max_cells / bound);
    exhausted = false;
  }

  const BigInt three_d = 3 * d;
  std::vector<std::vector<Triple>> parts(std::max(workers, 1u));
  parallel_chunks(j_lo, j_lo + rows, workers, [&](std::int64_t lo, std::int64_t hi, std::size_t chunk) {
    auto& out = parts[chunk];
    BigInt rhs, root, rem;
    for (std::int64_t j = lo; j < hi; ++j) {
      const BigInt y = BigInt(static_cast<long>(3 * j + 1));
      const BigInt four_y3 = 4 * y * y * y;
      for (std::int64_t zi = 1; zi <= B; ++zi) {
        const BigInt z = BigInt(static_cast<long>(zi));
        rhs = four_y3 + three_d * z * z;
        if (rhs <= 0) continue;
        mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), rhs.get_mpz_t());
        if (rem != 0) continue;
        for (const BigInt& x : {BigInt(-root), root}) {
          Triple t{x, y, z};
          if (evaluate(d, t).all) out.push_back(std::move(t));
        }
      }
    }
  });

  TripleSearchResult result{d, bound, {}, exhausted};
  for (auto& p : parts) {
    for (auto& t : p) result.found.push_back(std::move(t));
  }
  std::sort(result.found.begin(), result.found.end());
  return result;
}

}  // namespace rank_relation
}  // namespace qfrank
