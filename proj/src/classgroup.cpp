#include "qfrank/classgroup.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <string>

#include "qfrank/errors.hpp"
#include "qfrank/parallel.hpp"

namespace qfrank {
namespace {

void check_budget(std::int64_t D, const ClassGroupOptions& options) {
  const std::uint64_t magnitude = D < 0 ? static_cast<std::uint64_t>(-D) : static_cast<std::uint64_t>(D);
  if (magnitude > options.max_abs_discriminant) {
    throw ClassBudgetExceeded("|D| = " + std::to_string(magnitude) + " exceeds class budget " +
                              std::to_string(options.max_abs_discriminant));
  }
}

}  // namespace

FormClassGroup FormClassGroup::imaginary(std::int64_t D, const ClassGroupOptions& options) {
  if (D >= 0) throw InvalidDiscriminant("imaginary class group needs D < 0");
  classgroup::require_fundamental(D, options.factor_budget);
  check_budget(D, options);
  FormClassGroup group(D, options.workers);
  group.representatives_ = quadforms::enumerate_reduced_definite(D, options.workers);
  group.class_of_.reserve(group.representatives_.size());
  for (std::size_t i = 0; i < group.representatives_.size(); ++i) {
    group.class_of_.emplace(group.representatives_[i], i);
  }
  group.identity_ = group.lookup(quadforms::principal_form(D));
  return group;
}

FormClassGroup FormClassGroup::narrow_real(std::int64_t D, const ClassGroupOptions& options) {
  if (D <= 0) throw InvalidDiscriminant("real class group needs D > 0");
  classgroup::require_fundamental(D, options.factor_budget);
  check_budget(D, options);
  FormClassGroup group(D, options.workers);
  const auto cycles = quadforms::enumerate_cycles_indefinite(D, options.workers, options.factor_budget);
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    group.representatives_.push_back(cycles[i].forms.front());
    for (const QuadForm& f : cycles[i].forms) group.class_of_.emplace(f, i);
    if (cycles[i].principal) group.identity_ = i;
  }
  return group;
}

std::size_t FormClassGroup::lookup(const QuadForm& reduced) const {
  auto it = class_of_.find(reduced);
  if (it == class_of_.end()) {
    throw std::logic_error("reduced form missing from the class enumeration");
  }
  return it->second;
}

std::size_t FormClassGroup::multiply(std::size_t i, std::size_t j) const {
  return lookup(quadforms::compose(representatives_[i], representatives_[j]));
}

std::size_t FormClassGroup::power(std::size_t i, std::uint64_t e) const {
  std::size_t result = identity_;
  std::size_t base = i;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

std::uint64_t FormClassGroup::element_order(std::size_t i) const {
  const std::uint64_t h = order();
  std::uint64_t n = h;
  for (auto [p, e] : arith::factor_u64(h)) {
    while (n % p == 0 && power(i, n / p) == identity_) n /= p;
  }
  return n;
}

ClassGroupStructure FormClassGroup::structure() const {
  const std::uint64_t h = order();
  std::vector<std::uint64_t> orders(h);
  parallel_chunks(0, static_cast<std::int64_t>(h), workers_,
                  [&](std::int64_t lo, std::int64_t hi, std::size_t) {
                    for (std::int64_t i = lo; i < hi; ++i) {
                      orders[static_cast<std::size_t>(i)] = element_order(static_cast<std::size_t>(i));
                    }
                  });

  // For each p | h: log_p |G[p^k]| - log_p |G[p^(k-1)]| counts the cyclic
  // p-factors of order >= p^k.
  std::map<std::uint64_t, std::vector<unsigned>> exponents;  // descending per prime
  for (auto [p, e] : arith::factor_u64(h)) {
    std::vector<unsigned> log_torsion(e + 1, 0);
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      const auto count = static_cast<std::uint64_t>(std::count_if(
          orders.begin(), orders.end(), [pk](std::uint64_t o) { return pk % o == 0; }));
      unsigned log = 0;
      for (std::uint64_t c = count; c > 1; c /= p) {
        if (c % p != 0) throw std::logic_error("torsion subgroup order is not a prime power");
        ++log;
      }
      log_torsion[k] = log;
    }
    std::vector<unsigned> cyclic_exponents;
    for (unsigned k = e; k >= 1; --k) {
      const unsigned at_least_k = log_torsion[k] - log_torsion[k - 1];
      while (cyclic_exponents.size() < at_least_k) cyclic_exponents.push_back(k);
    }
    exponents[p] = cyclic_exponents;
  }

  std::size_t m = 0;
  for (const auto& [p, list] : exponents) m = std::max(m, list.size());
  std::vector<std::uint64_t> factors(m, 1);
  for (const auto& [p, list] : exponents) {
    for (std::size_t j = 0; j < list.size(); ++j) {
      for (unsigned k = 0; k < list[j]; ++k) factors[j] *= p;
    }
  }
  std::reverse(factors.begin(), factors.end());

  ClassGroupStructure result;
  result.discriminant = discriminant_;
  result.order = h;
  result.elementary_divisors = std::move(factors);
  result.three_rank = static_cast<unsigned>(std::count_if(
      result.elementary_divisors.begin(), result.elementary_divisors.end(),
      [](std::uint64_t d) { return d % 3 == 0; }));
  return result;
}

std::uint64_t FormClassGroup::three_torsion_count() const {
  const QuadForm principal = quadforms::principal_form(discriminant_);
  const bool imaginary = discriminant_ < 0;
  const QuadForm principal_reduced =
      imaginary ? quadforms::reduce_definite(principal) : quadforms::reduce_indefinite(principal);
  std::atomic<std::uint64_t> count{0};
  parallel_chunks(0, static_cast<std::int64_t>(order()), workers_,
                  [&](std::int64_t lo, std::int64_t hi, std::size_t) {
                    std::uint64_t local = 0;
                    for (std::int64_t i = lo; i < hi; ++i) {
                      const QuadForm& f = representatives_[static_cast<std::size_t>(i)];
                      const QuadForm cube = quadforms::compose(quadforms::compose(f, f), f);
                      const bool trivial = imaginary
                                               ? cube == principal_reduced
                                               : quadforms::is_equivalent_indefinite(cube, principal);
                      if (trivial) ++local;
                    }
                    count += local;
                  });
  return count.load();
}

namespace classgroup {

void require_fundamental(std::int64_t D, arith::FactorBudget budget) {
  quadforms::validate_discriminant(D);
  if (!arith::is_fundamental_discriminant(BigInt(static_cast<long>(D)), budget)) {
    throw NotFundamental(std::to_string(D) + " is not a fundamental discriminant");
  }
}

ClassGroupStructure class_group_imaginary(std::int64_t D, const ClassGroupOptions& options) {
  return FormClassGroup::imaginary(D, options).structure();
}

ClassGroupStructure class_group_real(std::int64_t D, const ClassGroupOptions& options) {
  return FormClassGroup::narrow_real(D, options).structure();
}

unsigned exact_log3(std::uint64_t count) {
  unsigned log = 0;
  for (std::uint64_t c = count; c > 1; c /= 3) {
    if (c % 3 != 0) {
      throw std::logic_error("3-torsion count " + std::to_string(count) + " is not a power of 3");
    }
    ++log;
  }
  return log;
}

unsigned three_rank_imaginary(std::int64_t D, const ClassGroupOptions& options) {
  return exact_log3(FormClassGroup::imaginary(D, options).three_torsion_count());
}

unsigned three_rank_real(std::int64_t D, const ClassGroupOptions& options) {
  return exact_log3(FormClassGroup::narrow_real(D, options).three_torsion_count());
}

std::uint64_t narrow_class_number_real(std::int64_t D, const ClassGroupOptions& options) {
  if (D <= 0) throw InvalidDiscriminant("narrow_class_number_real needs D > 0");
  require_fundamental(D, options.factor_budget);
  check_budget(D, options);
  return quadforms::enumerate_cycles_indefinite(D, options.workers, options.factor_budget).size();
}

std::uint64_t dirichlet_class_number_oracle(std::int64_t D) {
  if (D >= 0) throw InvalidDiscriminant("oracle needs D < 0");
  require_fundamental(D);
  const std::int64_t n = -D;
  __int128 sum = 0;
  for (std::int64_t a = 1; a < n; ++a) sum += static_cast<__int128>(arith::kronecker(D, a)) * a;
  if (sum < 0) sum = -sum;
  const __int128 w = D == -3 ? 6 : D == -4 ? 4 : 2;
  const __int128 numerator = w * sum;
  if (numerator % (2 * n) != 0) throw std::logic_error("class number formula gave a non-integer");
  return static_cast<std::uint64_t>(numerator / (2 * n));
}

}  // namespace classgroup
}  // namespace qfrank
