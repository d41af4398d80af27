#include "qfrank/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "qfrank/errors.hpp"

namespace qfrank::arith {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kTrialLimit = 1000;

constexpr auto kSmallPrimes = [] {
  std::array<bool, kTrialLimit> composite{};
  std::array<std::uint16_t, 168> primes{};
  std::size_t count = 0;
  for (u64 i = 2; i < kTrialLimit; ++i) {
    if (composite[i]) continue;
    primes[count++] = static_cast<std::uint16_t>(i);
    for (u64 j = i * i; j < kTrialLimit; j += i) composite[j] = true;
  }
  return primes;
}();

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool strong_probable_prime(u64 n, u64 witness) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(witness, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

bool strong_probable_prime(const BigInt& n, const BigInt& witness) {
  BigInt n1 = n - 1;
  mp_bitcnt_t s = mpz_scan1(n1.get_mpz_t(), 0);
  BigInt d = n1 >> s;
  BigInt x;
  mpz_powm(x.get_mpz_t(), witness.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1) return true;
  }
  return false;
}

BigInt mod_nonneg(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt half_mod(BigInt x, const BigInt& n) {
  if (mpz_odd_p(x.get_mpz_t())) x += n;
  return mod_nonneg(x / 2, n);
}

// Strong Lucas test with Selfridge parameters (P = 1, Q = (1 - D) / 4).
// n odd, not a perfect square, no small factors.
bool strong_lucas_probable_prime(const BigInt& n) {
  long D = 5;
  for (;;) {
    BigInt Dz = D;
    int j = mpz_jacobi(Dz.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && mpz_cmpabs_ui(n.get_mpz_t(), std::labs(D)) != 0) return false;
    D = D > 0 ? -(D + 2) : -(D - 2);
  }
  const BigInt P = 1;
  const BigInt Q = (1 - D) / 4;
  const BigInt Dz = D;

  BigInt n1 = n + 1;
  mp_bitcnt_t s = mpz_scan1(n1.get_mpz_t(), 0);
  BigInt d = n1 >> s;

  BigInt U = 1, V = P, Qk = mod_nonneg(Q, n);
  const BigInt Qm = mod_nonneg(Q, n);
  for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
    U = U * V % n;
    V = mod_nonneg(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (mpz_tstbit(d.get_mpz_t(), bit)) {
      BigInt U2 = half_mod(P * U + V, n);
      BigInt V2 = half_mod(Dz * U + P * V, n);
      U = U2;
      V = V2;
      Qk = Qk * Qm % n;
    }
  }
  if (U == 0 || V == 0) return true;
  for (mp_bitcnt_t r = 1; r < s; ++r) {
    V = mod_nonneg(V * V - 2 * Qk, n);
    Qk = Qk * Qk % n;
    if (V == 0) return true;
  }
  return false;
}

struct RhoCounter {
  u64 used = 0;
  u64 limit = 0;
};

// Brent's cycle variant with batched gcds. Returns a nontrivial factor of
// the odd composite n or 0 when the counter runs out.
u64 pollard_brent(u64 n, RhoCounter& counter) {
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
    constexpr u64 kBatch = 128;
    auto step = [&](u64 v) {
      u64 w = mulmod(v, v, n) + c;
      return w >= n ? w - n : w;
    };
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        u64 steps = std::min(kBatch, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        counter.used += steps;
        if (counter.used > counter.limit) return 0;
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

BigInt pollard_brent(const BigInt& n, RhoCounter& counter) {
  for (unsigned long c = 1;; ++c) {
    BigInt y = 2, x = 2, ys = 2, q = 1, g = 1;
    constexpr u64 kBatch = 128;
    auto step = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        u64 steps = std::min(kBatch, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = step(y);
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        counter.used += steps;
        if (counter.used > counter.limit) return 0;
      }
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

[[noreturn]] void budget_exhausted(const BigInt& cofactor, u64 limit) {
  throw FactorizationBudgetExceeded("composite cofactor " + cofactor.get_str() +
                                    " unsplit after " + std::to_string(limit) +
                                    " iterations");
}

// Splits n (no prime factors below kTrialLimit) into primes, accumulating
// multiplicity * exponent into out.
void split_u64(u64 n, unsigned multiplicity, RhoCounter& counter,
               std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out[n] += multiplicity;
    return;
  }
  u64 r = isqrt(n);
  if (r * r == n) {
    split_u64(r, 2 * multiplicity, counter, out);
    return;
  }
  u64 g = pollard_brent(n, counter);
  if (g == 0) budget_exhausted(BigInt(std::to_string(n)), counter.limit);
  split_u64(g, multiplicity, counter, out);
  split_u64(n / g, multiplicity, counter, out);
}

void split_big(const BigInt& n, unsigned multiplicity, RhoCounter& counter,
               std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    std::map<u64, unsigned> small;
    split_u64(mpz_get_ui(n.get_mpz_t()), multiplicity, counter, small);
    for (auto [p, e] : small) out[BigInt(static_cast<unsigned long>(p))] += e;
    return;
  }
  if (is_prime(n)) {
    out[n] += multiplicity;
    return;
  }
  for (unsigned long k = mpz_sizeinbase(n.get_mpz_t(), 2); k >= 2; --k) {
    BigInt root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
      split_big(root, multiplicity * static_cast<unsigned>(k), counter, out);
      return;
    }
  }
  BigInt g = pollard_brent(n, counter);
  if (g == 0) budget_exhausted(n, counter.limit);
  split_big(g, multiplicity, counter, out);
  split_big(n / g, multiplicity, counter, out);
}

}  // namespace

BigInt Factorization::recompose() const {
  BigInt result = 1;
  for (const auto& [p, e] : factors) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    result *= pe;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < kTrialLimit * kTrialLimit) return true;
  // Sufficient for every n < 3.3e24.
  for (u64 w : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!strong_probable_prime(n, w)) return false;
  }
  return true;
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(static_cast<u64>(mpz_get_ui(n.get_mpz_t())));
  for (u64 p : kSmallPrimes) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  // Baillie-PSW: strong base-2 test plus strong Lucas test.
  if (!strong_probable_prime(n, BigInt(2))) return false;
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  return strong_lucas_probable_prime(n);
}

SmallFactorization factor_u64(std::uint64_t n, FactorBudget budget) {
  if (n == 0) throw InvalidInput("factor: n must be positive");
  SmallFactorization result;
  for (u64 p : kSmallPrimes) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    result.emplace_back(p, e);
  }
  if (n == 1) return result;
  if (n < kTrialLimit * kTrialLimit || is_prime(n)) {
    result.emplace_back(n, 1);
    return result;
  }
  std::map<u64, unsigned> rest;
  RhoCounter counter{0, budget.max_iterations};
  split_u64(n, 1, counter, rest);
  result.insert(result.end(), rest.begin(), rest.end());
  return result;
}

Factorization factor(const BigInt& n, FactorBudget budget) {
  if (n < 1) throw InvalidInput("factor: n must be positive");
  Factorization result{n, {}};
  if (mpz_fits_ulong_p(n.get_mpz_t())) {
    for (auto [p, e] : factor_u64(mpz_get_ui(n.get_mpz_t()), budget)) {
      result.factors.push_back({BigInt(static_cast<unsigned long>(p)), e});
    }
    return result;
  }
  BigInt m = n;
  for (u64 p : kSmallPrimes) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) result.factors.push_back({BigInt(static_cast<unsigned long>(p)), e});
  }
  std::map<BigInt, unsigned> rest;
  RhoCounter counter{0, budget.max_iterations};
  split_big(m, 1, counter, rest);
  for (auto& [p, e] : rest) result.factors.push_back({p, e});
  return result;
}

std::vector<std::uint64_t> divisors(const SmallFactorization& f) {
  std::vector<u64> result{1};
  for (auto [p, e] : f) {
    const std::size_t base = result.size();
    u64 pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) result.push_back(result[j] * pk);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

SquarefreeParts squarefree_decompose(const BigInt& n, FactorBudget budget) {
  if (n < 1) throw InvalidInput("squarefree_decompose: n must be positive");
  SquarefreeParts parts{1, 1};
  for (const auto& [p, e] : factor(n, budget).factors) {
    BigInt pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), e / 2);
    parts.a *= pk;
    if (e % 2 == 1) parts.d *= p;
  }
  return parts;
}

bool is_squarefree(const BigInt& n, FactorBudget budget) {
  if (n == 0) return false;
  BigInt m = abs(n);
  const auto f = factor(m, budget);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::uint64_t isqrt(std::uint64_t n) {
  u64 r = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (u128(r) * r > n) --r;
  while (u128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw InvalidInput("isqrt: negative argument");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(std::int64_t n) {
  if (n < 0) return false;
  u64 r = isqrt(static_cast<u64>(n));
  return r * r == static_cast<u64>(n);
}

bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = isqrt(n);
  return r * r == n;
}

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw InvalidInput("jacobi: n must be odd and positive");
  a = mod(a, n);
  int sign = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = n % 8;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) sign = -1;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    // (a/2) = 1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8).
    const std::int64_t r = mod(a, 8);
    if ((twos % 2 == 1) && (r == 3 || r == 5)) sign = -sign;
  }
  return sign * jacobi(a, n);
}

BigInt field_discriminant(const BigInt& m) {
  if (m == 0 || m == 1) throw InvalidInput("field_discriminant: m must not be 0 or 1");
  return mod(m, 4) == 1 ? m : BigInt(4 * m);
}

bool is_fundamental_discriminant(const BigInt& D, FactorBudget budget) {
  if (D == 0 || D == 1) return false;
  const u64 r = mod(D, 16);
  if (r % 4 == 1) return is_squarefree(D, budget);
  if (r % 4 != 0) return false;
  BigInt m = D / 4;
  const u64 rm = mod(m, 4);
  if (rm != 2 && rm != 3) return false;
  return is_squarefree(m, budget);
}

std::uint64_t mod(const BigInt& x, std::uint64_t m) {
  return mpz_fdiv_ui(x.get_mpz_t(), m);
}

std::int64_t mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace qfrank::arith
