#include "qfrank/quadforms.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <unordered_map>

#include "qfrank/errors.hpp"
#include "qfrank/parallel.hpp"

namespace qfrank {

using i64 = std::int64_t;
using i128 = __int128;

namespace {

constexpr i64 kMaxAbsDiscriminant = i64{1} << 62;

i128 discriminant_wide(i128 a, i128 b, i128 c) { return b * b - 4 * a * c; }

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  unsigned __int128 u = negative ? -static_cast<unsigned __int128>(v) : v;
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (negative) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

i64 narrow(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw Overflow(std::string(what) + " = " + to_string(v) + " exceeds 64 bits");
  }
  return static_cast<i64>(v);
}

i128 floor_div(i128 x, i128 m) {
  i128 q = x / m;
  if ((x % m != 0) && ((x < 0) != (m < 0))) --q;
  return q;
}

i128 mod_pos(i128 x, i128 m) {
  i128 r = x % m;
  return r < 0 ? r + m : r;
}

i128 abs128(i128 x) { return x < 0 ? -x : x; }

struct Bezout {
  i128 g, x, y;  // x * a + y * b = g >= 0
};

Bezout xgcd(i128 a, i128 b) {
  i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const i128 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

i64 floor_sqrt(i64 D) { return static_cast<i64>(arith::isqrt(static_cast<std::uint64_t>(D))); }

}  // namespace

struct QuadFormAccess {
  static QuadForm make(i64 a, i64 b, i64 c) { return QuadForm::unchecked(a, b, c); }
  static QuadForm make_wide(i128 a, i128 b, i128 c) {
    return QuadForm::unchecked(narrow(a, "a"), narrow(b, "b"), narrow(c, "c"));
  }
};

namespace {
QuadForm make(i64 a, i64 b, i64 c) { return QuadFormAccess::make(a, b, c); }
QuadForm make_wide(i128 a, i128 b, i128 c) { return QuadFormAccess::make_wide(a, b, c); }
}  // namespace

QuadForm::QuadForm(i64 a, i64 b, i64 c) : a_(a), b_(b), c_(c) {
  const i128 D = discriminant_wide(a, b, c);
  if (D >= kMaxAbsDiscriminant || D <= -kMaxAbsDiscriminant) {
    throw Overflow("discriminant " + to_string(D) + " outside |D| < 2^62");
  }
  quadforms::validate_discriminant(static_cast<i64>(D));
  if (std::gcd(std::gcd(a, b), c) != 1) {
    throw NotPrimitive("form (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                       std::to_string(c) + ") is not primitive");
  }
}

i64 QuadForm::discriminant() const {
  return static_cast<i64>(discriminant_wide(a_, b_, c_));
}

std::ostream& operator<<(std::ostream& os, const QuadForm& f) {
  return os << '(' << f.a() << ", " << f.b() << ", " << f.c() << ')';
}

namespace quadforms {

void validate_discriminant(i64 D) {
  if (D >= kMaxAbsDiscriminant || D <= -kMaxAbsDiscriminant) {
    throw Overflow("discriminant " + std::to_string(D) + " outside |D| < 2^62");
  }
  if (D == 0) throw InvalidDiscriminant("discriminant must be nonzero");
  const i64 r = arith::mod(D, 4);
  if (r != 0 && r != 1) {
    throw InvalidDiscriminant(std::to_string(D) + " is not 0 or 1 mod 4");
  }
  if (D > 0 && arith::is_perfect_square(D)) {
    throw SquareDiscriminant(std::to_string(D) + " is a perfect square");
  }
}

QuadForm principal_form(i64 D) {
  validate_discriminant(D);
  if (arith::mod(D, 4) == 0) return make(1, 0, -D / 4);
  return make(1, 1, (1 - D) / 4);
}

bool is_reduced_definite(const QuadForm& f) {
  const i64 a = f.a(), b = f.b(), c = f.c();
  if (f.discriminant() >= 0 || a <= 0) return false;
  if (!(-a < b && b <= a && a <= c)) return false;
  return !(a == c && b < 0);
}

bool is_reduced_indefinite(const QuadForm& f) {
  const i64 D = f.discriminant();
  if (D <= 0) return false;
  const i64 s = floor_sqrt(D);
  const i128 b = f.b();
  const i128 two_a = 2 * abs128(f.a());
  return b > 0 && b <= s && s < two_a + b && two_a - b <= s;
}

QuadForm reduce_definite(const QuadForm& f) {
  const i64 D = f.discriminant();
  if (D >= 0 || f.a() <= 0) {
    throw NotDefinite("reduce_definite needs D < 0 and a > 0");
  }
  i128 a = f.a(), b = f.b(), c = f.c();
  auto normalize = [&] {
    if (-a < b && b <= a) return;
    const i128 r = floor_div(a - b, 2 * a);
    c = a * r * r + b * r + c;
    b += 2 * r * a;
  };
  normalize();
  while (a > c) {
    std::swap(a, c);
    b = -b;
    normalize();
  }
  if (a == c && b < 0) b = -b;
  return make_wide(a, b, c);
}

QuadForm rho(const QuadForm& f) {
  const i64 D = f.discriminant();
  if (D <= 0) throw NotIndefinite("rho needs D > 0");
  const i128 s = floor_sqrt(D);
  const i128 c = f.c();
  const i128 C = abs128(c);
  i128 r;
  if (C > s) {
    r = mod_pos(-static_cast<i128>(f.b()), 2 * C);
    if (r > C) r -= 2 * C;
  } else {
    r = s - mod_pos(s + f.b(), 2 * C);
  }
  return make_wide(c, r, (r * r - D) / (4 * c));
}

QuadForm reduce_indefinite(const QuadForm& f) {
  const i64 D = f.discriminant();
  if (D <= 0) throw NotIndefinite("reduce_indefinite needs D > 0");
  QuadForm g = f;
  while (!is_reduced_indefinite(g)) g = rho(g);
  return g;
}

namespace {

QuadForm reduce_any(const QuadForm& f) {
  return f.discriminant() < 0 ? reduce_definite(f) : reduce_indefinite(f);
}

// Dirichlet composition of two primitive forms with equal discriminant,
// valid for either sign of the leading coefficients.
QuadForm compose_unreduced(const QuadForm& f, const QuadForm& g) {
  const i128 D = f.discriminant();
  const i128 a1 = f.a(), b1 = f.b();
  const i128 a2 = g.a(), b2 = g.b(), c2 = g.c();
  const i128 s = (b1 + b2) / 2;
  const Bezout e1 = xgcd(a1, a2);
  const Bezout e2 = xgcd(e1.g, s);
  const i128 m = e2.g;
  const i128 v = e2.x * e1.y;
  const i128 w = e2.y;
  const i128 a1m = a1 / m;
  const i128 a2m = a2 / m;
  const i128 a3 = a1m * a2m;
  const i128 t = mod_pos(mod_pos(v, abs128(a1m)) * (s - b2) - mod_pos(w, abs128(a1m)) * mod_pos(c2, abs128(a1m)), abs128(a1m));
  i128 b3 = b2 + 2 * a2m * t;
  const i128 two_a3 = 2 * abs128(a3);
  b3 = mod_pos(b3, two_a3);
  if (b3 > abs128(a3)) b3 -= two_a3;
  const i128 num = b3 * b3 - D;
  return make_wide(a3, b3, num / (4 * a3));
}

}  // namespace

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  const i64 D = f.discriminant();
  if (D != g.discriminant()) {
    throw DiscriminantMismatch(std::to_string(D) + " vs " + std::to_string(g.discriminant()));
  }
  return reduce_any(compose_unreduced(reduce_any(f), reduce_any(g)));
}

QuadForm power(const QuadForm& f, std::uint64_t e) {
  QuadForm result = principal_form(f.discriminant());
  result = reduce_any(result);
  QuadForm base = reduce_any(f);
  while (e > 0) {
    if (e & 1) result = compose(result, base);
    e >>= 1;
    if (e > 0) base = compose(base, base);
  }
  return result;
}

std::vector<QuadForm> enumerate_reduced_definite(i64 D, unsigned workers) {
  validate_discriminant(D);
  if (D > 0) throw InvalidDiscriminant("enumerate_reduced_definite needs D < 0");
  const std::uint64_t absD = static_cast<std::uint64_t>(-D);
  const i64 a_max = static_cast<i64>(arith::isqrt(absD / 3));
  const i64 parity = static_cast<i64>(absD & 1);

  std::vector<std::vector<QuadForm>> parts(std::max(workers, 1u));
  parallel_chunks(1, a_max + 1, workers, [&](i64 lo, i64 hi, std::size_t chunk) {
    auto& out = parts[chunk];
    for (i64 a = lo; a < hi; ++a) {
      const std::uint64_t four_a = 4 * static_cast<std::uint64_t>(a);
      for (i64 b = parity; b <= a; b += 2) {
        const std::uint64_t num = static_cast<std::uint64_t>(b) * static_cast<std::uint64_t>(b) + absD;
        if (num % four_a != 0) continue;
        const i64 c = static_cast<i64>(num / four_a);
        if (c < a) continue;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        if (b != 0 && b != a && a != c) out.push_back(make(a, -b, c));
        out.push_back(make(a, b, c));
      }
    }
  });
  std::vector<QuadForm> forms;
  for (auto& p : parts) forms.insert(forms.end(), p.begin(), p.end());
  std::sort(forms.begin(), forms.end());
  return forms;
}

std::vector<Cycle> enumerate_cycles_indefinite(i64 D, unsigned workers,
                                               arith::FactorBudget budget) {
  validate_discriminant(D);
  if (D < 0) throw InvalidDiscriminant("enumerate_cycles_indefinite needs D > 0");
  const i64 s = floor_sqrt(D);
  const i64 first_b = (D % 2 == 0) ? 2 : 1;
  const i64 steps = s >= first_b ? (s - first_b) / 2 + 1 : 0;

  std::vector<std::vector<QuadForm>> parts(std::max(workers, 1u));
  parallel_chunks(0, steps, workers, [&](i64 lo, i64 hi, std::size_t chunk) {
    auto& out = parts[chunk];
    for (i64 i = lo; i < hi; ++i) {
      const i64 b = first_b + 2 * i;
      const i64 N = (D - b * b) / 4;
      const auto f = arith::factor_u64(static_cast<std::uint64_t>(N), budget);
      for (std::uint64_t ua : arith::divisors(f)) {
        const i64 a = static_cast<i64>(ua);
        if (2 * a - b > s) break;
        if (s >= 2 * a + b) continue;
        const i64 c = N / a;
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        out.push_back(make(a, b, -c));
        out.push_back(make(-a, b, c));
      }
    }
  });
  std::vector<QuadForm> forms;
  for (auto& p : parts) forms.insert(forms.end(), p.begin(), p.end());
  std::sort(forms.begin(), forms.end());

  std::unordered_map<QuadForm, std::size_t, QuadFormHash> index;
  index.reserve(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) index.emplace(forms[i], i);

  const QuadForm principal = reduce_indefinite(principal_form(D));
  std::vector<bool> visited(forms.size(), false);
  std::vector<Cycle> cycles;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (visited[i]) continue;
    Cycle cycle{D, {}, false};
    QuadForm g = forms[i];
    for (;;) {
      const std::size_t j = index.at(g);
      if (visited[j]) break;
      visited[j] = true;
      cycle.forms.push_back(g);
      if (g == principal) cycle.principal = true;
      g = rho(g);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::vector<QuadForm> cycle_of(const QuadForm& f) {
  const QuadForm start = reduce_indefinite(f);
  std::vector<QuadForm> forms{start};
  for (QuadForm g = rho(start); g != start; g = rho(g)) forms.push_back(g);
  return forms;
}

bool is_equivalent_indefinite(const QuadForm& f, const QuadForm& g) {
  if (f.discriminant() != g.discriminant()) {
    throw DiscriminantMismatch(std::to_string(f.discriminant()) + " vs " +
                               std::to_string(g.discriminant()));
  }
  if (f.discriminant() <= 0) throw NotIndefinite("is_equivalent_indefinite needs D > 0");
  const QuadForm target = reduce_indefinite(f);
  const QuadForm start = reduce_indefinite(g);
  QuadForm h = start;
  do {
    if (h == target) return true;
    h = rho(h);
  } while (h != start);
  return false;
}

}  // namespace quadforms
}  // namespace qfrank
