#pragma once

// Products of shift-operator factors (E^h - lambda I) and their particular
// solutions.
//
// A particular solution of Phi(E) y = f with Phi(E) = prod_i (E^{h_i} - lambda_i I)
// is the composition of first-order resolvents,
//
//   y_p = R_n(R_{n-1}(... R_1(f) ...)),   R_i g(t) = sum_{s=1}^{floor(t/h_i)} lambda_i^(s-1) g(t - h_i s),
//
// which expands term-for-term into the n-fold nested sum with inner bounds
// floor((t - h_n s_n - ...) / h_i). factors()[0] is the innermost resolvent.

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "adiff/antidiff.hpp"
#include "adiff/error.hpp"
#include "adiff/function.hpp"
#include "adiff/numkit.hpp"

namespace adiff::ops {

struct LinearFactor {
  double h = 1.0;
  Complex lambda{1.0, 0.0};

  LinearFactor() = default;
  LinearFactor(double shift, Complex root) : h(shift), lambda(root) {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::NonPositiveShift, "factor shift must be positive");
    require_nonzero_lambda(lambda);
  }
};

class FactoredOperator {
 public:
  explicit FactoredOperator(std::vector<LinearFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw Error(ErrorCode::EmptyOperator, "an operator needs at least one factor");
  }
  FactoredOperator(std::initializer_list<LinearFactor> factors) : FactoredOperator(std::vector<LinearFactor>(factors)) {}

  std::span<const LinearFactor> factors() const { return factors_; }
  std::size_t order() const { return factors_.size(); }

 private:
  std::vector<LinearFactor> factors_;
};

/// (E - lambda I)^m with unit shift.
inline FactoredOperator repeated(Complex lambda, int m) {
  if (m < 1) throw Error(ErrorCode::DomainError, "multiplicity must be positive");
  return FactoredOperator(std::vector<LinearFactor>(static_cast<std::size_t>(m), LinearFactor(1.0, lambda)));
}

struct TermBudget {
  std::uint64_t max_terms = 10'000'000;
};

namespace detail {

template <class Y>
Complex apply_from(std::span<const LinearFactor> factors, const Y& y, double t) {
  if (factors.empty()) return Complex(y(t));
  const LinearFactor& factor = factors.front();
  const auto rest = factors.subspan(1);
  return apply_from(rest, y, t + factor.h) - factor.lambda * apply_from(rest, y, t);
}

template <ScalarFunction F>
Complex nested_resolvent(std::span<const LinearFactor> factors, const F& f, double t) {
  const LinearFactor& outer = factors.back();
  if (factors.size() == 1) return resolvent_sum(f, t, outer.lambda, outer.h).value;
  const auto inner = factors.first(factors.size() - 1);
  const auto g = [&](double u) { return nested_resolvent(inner, f, u); };
  return resolvent_sum(g, t, outer.lambda, outer.h).value;
}

}  // namespace detail

/// Phi(E) y evaluated at t; y may return real or complex values.
template <class Y>
Complex apply(const FactoredOperator& op, const Y& y, double t) {
  return detail::apply_from(op.factors(), y, t);
}

/// Upper bound on the number of f evaluations made by particular_solution:
/// prod_i max(floor(t/h_i), 1), saturating at the uint64 maximum.
inline std::uint64_t estimate_terms(const FactoredOperator& op, double t) {
  std::uint64_t total = 1;
  for (const auto& factor : op.factors()) {
    const auto n = static_cast<std::uint64_t>(std::max<std::int64_t>(numkit::term_count(t, factor.h), 1));
    if (total > std::numeric_limits<std::uint64_t>::max() / n) return std::numeric_limits<std::uint64_t>::max();
    total *= n;
  }
  return total;
}

inline void check_budget(const FactoredOperator& op, double t, TermBudget budget) {
  const std::uint64_t needed = estimate_terms(op, t);
  if (needed > budget.max_terms)
    throw Error(ErrorCode::TermBudgetExceeded, "particular solution needs up to " + std::to_string(needed) +
                                                   " terms, budget is " + std::to_string(budget.max_terms));
}

/// Particular solution of Phi(E) y = f at t.
template <ScalarFunction F>
Complex particular_solution(const FactoredOperator& op, const F& f, double t, TermBudget budget = {}) {
  numkit::require_finite(t, "t");
  check_budget(op, t, budget);
  return detail::nested_resolvent(op.factors(), f, t);
}

/// Particular solution of (E - lambda I)^m y = f.
template <ScalarFunction F>
Complex repeated_factor_solution(Complex lambda, int m, const F& f, double t, TermBudget budget = {}) {
  return particular_solution(repeated(lambda, m), f, t, budget);
}

/// |Phi(E) y_p(t) - f(t)| with y_p = particular_solution(op, f, .).
template <RealFunction F>
double verify_particular(const FactoredOperator& op, const F& f, double t, TermBudget budget = {}) {
  const auto y = [&](double u) { return particular_solution(op, f, u, budget); };
  return std::abs(apply(op, y, t) - Complex(static_cast<double>(f(t)), 0.0));
}

enum class FactorIdentity { E2minus4, E2plus1 };

struct IdentitySides {
  Complex lhs{};
  double rhs = 0.0;
  double residual() const { return std::abs(lhs - Complex(rhs, 0.0)); }
};

/// Both sides of the summation identities obtained by solving
/// y(t+2) - 4y(t) = f and y(t+2) + y(t) = f once with a single h = 2 factor
/// and once through the factor pair (E - 2I)(E + 2I), resp. (E - iI)(E + iI):
///
///   E2minus4: sum_{s2=1}^{[t]} sum_{s1=1}^{[t]-s2} (-1)^(s1-1) 2^(s1+s2) f(t-s1-s2) = sum_{s=1}^{[t]_2} 4^s f(t-2s)
///   E2plus1:  sum_{s2=1}^{[t]} sum_{s1=1}^{[t]-s2} (-1)^s1 i^(s1+s2) f(t-s1-s2)     = sum_{s=1}^{[t]_2} (-1)^(s-1) f(t-2s)
///
/// Both E2minus4 sides are 4 times the particular solution.
template <RealFunction F>
IdentitySides factorization_identity_sides(FactorIdentity identity, const F& f, double t) {
  static constexpr Complex kPowersOfI[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const std::int64_t n = numkit::term_count(t);
  const std::int64_t m = numkit::term_count(t, 2.0);

  IdentitySides sides;
  for (std::int64_t s2 = 1; s2 <= n; ++s2) {
    for (std::int64_t s1 = 1; s1 <= n - s2; ++s1) {
      const double value = static_cast<double>(f(t - static_cast<double>(s1 + s2)));
      if (identity == FactorIdentity::E2minus4) {
        const double sign = (s1 - 1) % 2 == 0 ? 1.0 : -1.0;
        sides.lhs += sign * std::ldexp(1.0, static_cast<int>(s1 + s2)) * value;
      } else {
        const double sign = s1 % 2 == 0 ? 1.0 : -1.0;
        sides.lhs += sign * kPowersOfI[(s1 + s2) % 4] * value;
      }
    }
  }
  for (std::int64_t s = 1; s <= m; ++s) {
    const double value = static_cast<double>(f(t - 2.0 * static_cast<double>(s)));
    if (identity == FactorIdentity::E2minus4)
      sides.rhs += std::ldexp(1.0, static_cast<int>(2 * s)) * value;
    else
      sides.rhs += ((s - 1) % 2 == 0 ? 1.0 : -1.0) * value;
  }
  return sides;
}

/// |LHS - RHS| of the chosen factorization identity.
template <RealFunction F>
double factorization_identity_check(FactorIdentity identity, const F& f, double t) {
  return factorization_identity_sides(identity, f, t).residual();
}

}  // namespace adiff::ops
