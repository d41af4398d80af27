#pragma once

// Integral binary quadratic forms ax^2 + bxy + cy^2 of nonzero discriminant:
// reduction, composition, and enumeration of reduced forms and rho-cycles.
//
// Coefficients are 64-bit; discriminants are limited to |D| < 2^62 and all
// intermediate products are formed in 128-bit arithmetic.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "qfrank/arith.hpp"

namespace qfrank {

/// Primitive form with discriminant D != 0, D = 0 or 1 (mod 4).
class QuadForm {
 public:
  /// Throws InvalidDiscriminant, NotPrimitive or Overflow.
  QuadForm(std::int64_t a, std::int64_t b, std::int64_t c);

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }
  std::int64_t c() const { return c_; }
  std::int64_t discriminant() const;

  /// (a, -b, c), the inverse class.
  QuadForm inverse() const { return unchecked(a_, -b_, c_); }

  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
  friend bool operator==(const QuadForm&, const QuadForm&) = default;

 private:
  struct Unchecked {};
  QuadForm(Unchecked, std::int64_t a, std::int64_t b, std::int64_t c) : a_(a), b_(b), c_(c) {}
  static QuadForm unchecked(std::int64_t a, std::int64_t b, std::int64_t c) {
    return QuadForm(Unchecked{}, a, b, c);
  }
  friend struct QuadFormAccess;

  std::int64_t a_;
  std::int64_t b_;
  std::int64_t c_;
};

std::ostream& operator<<(std::ostream& os, const QuadForm& f);

struct QuadFormHash {
  std::size_t operator()(const QuadForm& f) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(f.a()) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::uint64_t>(f.b()) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

/// The reduced indefinite forms of one rho-orbit, starting from the
/// smallest (a, b) and following rho.
struct Cycle {
  std::int64_t discriminant = 0;
  std::vector<QuadForm> forms;
  bool principal = false;
};

namespace quadforms {

/// Throws InvalidDiscriminant (D = 0 or D = 2, 3 mod 4), SquareDiscriminant
/// for positive squares, Overflow beyond |D| < 2^62.
void validate_discriminant(std::int64_t D);

QuadForm principal_form(std::int64_t D);

bool is_reduced_definite(const QuadForm& f);
/// 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
bool is_reduced_indefinite(const QuadForm& f);

/// Unique reduced representative, |b| <= a <= c with b >= 0 when |b| = a
/// or a = c. Throws NotDefinite unless D < 0 and a > 0.
QuadForm reduce_definite(const QuadForm& f);

/// One continued-fraction step (a, b, c) -> (c, r, (r^2 - D) / 4c),
/// r = -b (mod 2c) chosen in the normalizing window. D > 0.
QuadForm rho(const QuadForm& f);

/// Iterates rho until reduced. Throws NotIndefinite, SquareDiscriminant.
QuadForm reduce_indefinite(const QuadForm& f);

/// Gauss/Dirichlet composition, returned reduced. Negative definite forms
/// are not accepted. Throws DiscriminantMismatch.
QuadForm compose(const QuadForm& f, const QuadForm& g);

/// f^e for e >= 0, reduced.
QuadForm power(const QuadForm& f, std::uint64_t e);

/// Sorted by (a, b). Throws InvalidDiscriminant for D >= 0.
std::vector<QuadForm> enumerate_reduced_definite(std::int64_t D, unsigned workers = 1);

/// Every primitive reduced form of discriminant D > 0, partitioned into
/// cycles ordered by their smallest form.
std::vector<Cycle> enumerate_cycles_indefinite(std::int64_t D, unsigned workers = 1,
                                               arith::FactorBudget budget = {});

/// Proper equivalence of indefinite forms. Throws DiscriminantMismatch.
bool is_equivalent_indefinite(const QuadForm& f, const QuadForm& g);

/// The full rho-cycle through reduce_indefinite(f).
std::vector<QuadForm> cycle_of(const QuadForm& f);

}  // namespace quadforms
}  // namespace qfrank
