#pragma once

// Form class groups of fundamental discriminants: imaginary fields via
// reduced definite forms, real fields (narrow sense) via rho-cycles.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qfrank/arith.hpp"
#include "qfrank/quadforms.hpp"

namespace qfrank {

struct ClassGroupStructure {
  std::int64_t discriminant = 0;
  std::uint64_t order = 0;
  /// Invariant factors d1 | d2 | ... | dm, all >= 2, product = order.
  std::vector<std::uint64_t> elementary_divisors;
  unsigned three_rank = 0;

  friend bool operator==(const ClassGroupStructure&, const ClassGroupStructure&) = default;
};

struct ClassGroupOptions {
  unsigned workers = 1;
  /// Discriminants above this magnitude raise ClassBudgetExceeded; the
  /// enumeration work grows linearly in |D|.
  std::uint64_t max_abs_discriminant = 10'000'000'000ull;
  arith::FactorBudget factor_budget{};
};

/// Explicit finite abelian group on indices 0..order-1, one reduced
/// representative per class.
class FormClassGroup {
 public:
  /// D < 0 fundamental.
  static FormClassGroup imaginary(std::int64_t D, const ClassGroupOptions& options = {});
  /// D > 0 fundamental; one element per rho-cycle (narrow classes).
  static FormClassGroup narrow_real(std::int64_t D, const ClassGroupOptions& options = {});

  std::int64_t discriminant() const { return discriminant_; }
  std::size_t order() const { return representatives_.size(); }
  std::size_t identity() const { return identity_; }
  const std::vector<QuadForm>& representatives() const { return representatives_; }

  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t power(std::size_t i, std::uint64_t e) const;
  std::uint64_t element_order(std::size_t i) const;

  /// Invariant factors from the distribution of element orders.
  ClassGroupStructure structure() const;

  /// Number of classes C with C^3 principal, tested by cubing the
  /// representative and comparing against the principal form directly.
  std::uint64_t three_torsion_count() const;

 private:
  FormClassGroup(std::int64_t D, unsigned workers) : discriminant_(D), workers_(workers) {}
  std::size_t lookup(const QuadForm& reduced) const;

  std::int64_t discriminant_;
  unsigned workers_;
  std::vector<QuadForm> representatives_;
  std::unordered_map<QuadForm, std::size_t, QuadFormHash> class_of_;
  std::size_t identity_ = 0;
};

namespace classgroup {

/// Throws InvalidDiscriminant or NotFundamental.
void require_fundamental(std::int64_t D, arith::FactorBudget budget = {});

ClassGroupStructure class_group_imaginary(std::int64_t D, const ClassGroupOptions& options = {});
/// Narrow class group structure for D > 0.
ClassGroupStructure class_group_real(std::int64_t D, const ClassGroupOptions& options = {});

/// log3 of the 3-torsion count.
unsigned three_rank_imaginary(std::int64_t D, const ClassGroupOptions& options = {});
unsigned three_rank_real(std::int64_t D, const ClassGroupOptions& options = {});

std::uint64_t narrow_class_number_real(std::int64_t D, const ClassGroupOptions& options = {});

/// h = w / (2|D|) * |sum_{a=1}^{|D|-1} (D/a) a|, exact.
std::uint64_t dirichlet_class_number_oracle(std::int64_t D);

/// log_3 of a count that must be a power of three.
unsigned exact_log3(std::uint64_t count);

}  // namespace classgroup
}  // namespace qfrank
