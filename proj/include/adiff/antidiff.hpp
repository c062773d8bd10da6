#pragma once

// Floor-bounded antidifferences.
//
// The antidifference of f is evaluated at t as the finite sum
//
//   F(t) = f(t-1) + f(t-2) + ... + f(t - floor(t)),
//
// which is zero for t < 1, and its generalisation to y(t+h) - lambda y(t) = f(t):
//
//   y(t) = sum_{s=1}^{floor(t/h)} lambda^(s-1) f(t - h s).
//
// Every sum is accumulated in ascending s with the weight lambda^(s-1)
// updated by repeated multiplication; convkernel relies on that order.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "adiff/error.hpp"
#include "adiff/function.hpp"
#include "adiff/numkit.hpp"

namespace adiff {

template <class V>
struct SumResult {
  V value{};
  std::int64_t terms_used = 0;
};

using AntidiffValue = SumResult<double>;
using ResolventValue = SumResult<Complex>;

inline void require_nonzero_lambda(Complex lambda) {
  if (lambda == Complex(0.0, 0.0)) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw Error(ErrorCode::NonFiniteInput, "lambda must be finite");
}

/// Sum of f(t-s) for s = 1..floor(t).
template <RealFunction F>
AntidiffValue antidifference(const F& f, double t) {
  const std::int64_t n = numkit::term_count(t);
  double acc = 0.0;
  for (std::int64_t s = 1; s <= n; ++s) acc += static_cast<double>(f(t - static_cast<double>(s)));
  return {acc, n};
}

/// Particular solution of y(t+h) - lambda y(t) = f(t). `f` may be real or
/// complex valued; accumulation is always complex.
template <ScalarFunction F>
ResolventValue resolvent_sum(const F& f, double t, Complex lambda, double h = 1.0) {
  require_nonzero_lambda(lambda);
  const std::int64_t n = numkit::term_count(t, h);
  Complex acc(0.0, 0.0);
  Complex weight(1.0, 0.0);
  for (std::int64_t s = 1; s <= n; ++s) {
    acc += weight * f(t - h * static_cast<double>(s));
    weight *= lambda;
  }
  return {acc, n};
}

/// Backward antidifference: sum of f(t+1-s) for s = 1..floor(t), so that
/// y(t) - y(t-1) = f(t). Arguments are formed as (t-s)+1, which makes the
/// result identical to antidifference(u -> f(u+1), t).
template <RealFunction F>
AntidiffValue backward_antidifference(const F& f, double t) {
  const std::int64_t n = numkit::term_count(t);
  double acc = 0.0;
  for (std::int64_t s = 1; s <= n; ++s) acc += static_cast<double>(f((t - static_cast<double>(s)) + 1.0));
  return {acc, n};
}

struct DefiniteSum {
  double value = 0.0;   // F(n+1) - F(m) when m >= 0, else the direct loop
  double direct = 0.0;  // f(m) + ... + f(n)
  bool via_antidifference = false;
};

/// Sum of f(k) for k = m..n through the fundamental theorem F(n+1) - F(m),
/// with the direct loop alongside as a cross-check. The finite-sum F
/// vanishes below 1, so the theorem path is only taken for m >= 0.
template <RealFunction F>
DefiniteSum definite_sum(const F& f, std::int64_t m, std::int64_t n) {
  if (m > n) throw Error(ErrorCode::BoundsError, "lower bound exceeds upper bound");
  DefiniteSum result;
  for (std::int64_t k = m; k <= n; ++k) result.direct += static_cast<double>(f(static_cast<double>(k)));
  if (m >= 0) {
    result.value = antidifference(f, static_cast<double>(n + 1)).value - antidifference(f, static_cast<double>(m)).value;
    result.via_antidifference = true;
  } else {
    result.value = result.direct;
  }
  return result;
}

/// Closed-form antidifference of the polynomial sum_n coeffs[n] t^n, built
/// from t^n = sum_k S(n,k) (t)_k and (t)_k -> (t)_{k+1} / (k+1).
inline double poly_antidifference(std::span<const double> coeffs, double t) {
  if (coeffs.empty()) return 0.0;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  if (degree > numkit::kStirlingCap)
    throw Error(ErrorCode::CapExceeded, "polynomial degree exceeds " + std::to_string(numkit::kStirlingCap));

  double result = 0.0;
  for (int k = 0; k <= degree; ++k) {
    double ck = 0.0;
    for (int n = k; n <= degree; ++n)
      if (coeffs[n] != 0.0) ck += coeffs[n] * numkit::stirling2_double(n, k);
    if (ck != 0.0) result += ck * numkit::falling_factorial(t, static_cast<unsigned>(k + 1)) / static_cast<double>(k + 1);
  }
  return result;
}

/// a^t / (a - 1), the tabulated antidifference of a^t (no periodic term).
inline double exp_antidifference(double a, double t) {
  numkit::require_finite(t, "t");
  if (!(a > 0.0) || a == 1.0 || !std::isfinite(a))
    throw Error(ErrorCode::DomainError, "exponential antidifference needs a > 0, a != 1");
  return std::pow(a, t) / (a - 1.0);
}

/// (sin(t-1) - sin t) / (2 - 2 cos 1)
inline double sin_antidifference(double t) {
  return (std::sin(t - 1.0) - std::sin(t)) / (2.0 - 2.0 * std::cos(1.0));
}

/// (cos(t-1) - cos t) / (2 - 2 cos 1)
inline double cos_antidifference(double t) {
  return (std::cos(t - 1.0) - std::cos(t)) / (2.0 - 2.0 * std::cos(1.0));
}

/// Antidifference of a decaying f as the telescoping series
/// sum_{n>=0} (f(n) - f(n+x)), truncated at the first N with
/// |f(N)| + |f(N+x)| < tail_tol.
template <RealFunction F>
AntidiffValue mueller_sum(const F& f, double x, double tail_tol, std::int64_t max_terms) {
  numkit::require_finite(x, "x");
  if (!(tail_tol > 0.0)) throw Error(ErrorCode::DomainError, "tail tolerance must be positive");
  if (max_terms < 1) throw Error(ErrorCode::DomainError, "max_terms must be positive");
  double acc = 0.0;
  for (std::int64_t n = 0; n < max_terms; ++n) {
    const double a = static_cast<double>(f(static_cast<double>(n)));
    const double b = static_cast<double>(f(static_cast<double>(n) + x));
    acc += a - b;
    if (std::abs(a) + std::abs(b) < tail_tol) return {acc, n + 1};
  }
  throw Error(ErrorCode::NoConvergence, "tail criterion not met within " + std::to_string(max_terms) + " terms");
}

/// antidifference(f, x) - (F(x) - F({x})): zero when F is an exact
/// antidifference of f.
template <RealFunction Tabulated, RealFunction F>
double offset_residual(const Tabulated& tabulated, const F& f, double x) {
  const double sum = antidifference(f, x).value;
  return sum - (static_cast<double>(tabulated(x)) - static_cast<double>(tabulated(numkit::frac(x))));
}

/// Product (t-1)(t-2)...(t-floor(t)) = Gamma(t) / Gamma({t}) for
/// non-integer t > 0.
inline double gamma_ratio_product(double t) {
  numkit::require_finite(t, "t");
  if (!(t > 0.0) || t == std::floor(t)) throw Error(ErrorCode::DomainError, "t must be a positive non-integer");
  const std::int64_t n = numkit::term_count(t);
  double product = 1.0;
  for (std::int64_t s = 1; s <= n; ++s) product *= t - static_cast<double>(s);
  return product;
}

/// Antidifference of g(x) = f(T x) for T-periodic f, i.e. floor(t) f(T t).
/// Periodicity is spot-checked on a fixed grid over [-T, 2T].
template <RealFunction F>
double periodic_antidifference(const F& f, double period, double t) {
  numkit::require_finite(t, "t");
  if (!(period > 0.0) || !std::isfinite(period)) throw Error(ErrorCode::NonPositiveShift, "period must be positive");
  constexpr int kSamples = 32;
  for (int i = 0; i < kSamples; ++i) {
    const double x = -period + 3.0 * period * (i + 0.5) / kSamples;
    const double a = static_cast<double>(f(x));
    const double b = static_cast<double>(f(x + period));
    if (std::abs(b - a) > 1e-9 * (1.0 + std::abs(a)))
      throw Error(ErrorCode::PeriodicityViolation, "f(x + T) != f(x) at x = " + std::to_string(x));
  }
  return static_cast<double>(numkit::term_count(t)) * static_cast<double>(f(period * t));
}

}  // namespace adiff
