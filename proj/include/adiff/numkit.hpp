#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adiff/error.hpp"

// Special functions and combinatorial primitives shared by every summation
// routine in the library.
namespace adiff::numkit {

using BigInt = boost::multiprecision::cpp_int;

/// Largest n accepted by stirling2 and, through it, the largest polynomial
/// degree accepted by the closed-form polynomial antidifference.
inline constexpr int kStirlingCap = 64;

/// Quotient and remainder of t with respect to a positive modulus h:
/// t = n*h + r with 0 <= r < h.
struct FloorModResult {
  std::int64_t n = 0;
  double r = 0.0;

  friend bool operator==(const FloorModResult&, const FloorModResult&) = default;
};

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteInput, std::string(what) + " must be finite");
}

/// Floor and fractional part of `t` modulo `h`. The remainder always lies in
/// [0, h), also for negative t, and n == floor(t / h).
inline FloorModResult floor_mod(double t, double h) {
  require_finite(t, "t");
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::NonPositiveShift, "shift h must be positive and finite");

  const double q = std::floor(t / h);
  if (!(std::abs(q) < 9.0e18)) throw Error(ErrorCode::OutOfRange, "quotient t/h does not fit a 64-bit integer");

  auto n = static_cast<std::int64_t>(q);
  double r = std::fma(-q, h, t);
  if (r < 0.0) {
    // t/h rounded up across an integer
    --n;
    r += h;
  } else if (r >= h) {
    ++n;
    r -= h;
  }
  if (r >= h) r = std::nextafter(h, 0.0);
  if (r < 0.0) r = 0.0;
  return {n, r};
}

/// Number of terms of a floor-bounded sum: floor(t / h) clamped at zero.
inline std::int64_t term_count(double t, double h = 1.0) {
  const auto n = floor_mod(t, h).n;
  return n > 0 ? n : 0;
}

/// Fractional part {t} = t - floor(t).
inline double frac(double t) { return t - std::floor(t); }

/// (t)_n = t (t-1) ... (t-n+1); the empty product for n = 0 is 1.
inline double falling_factorial(double t, unsigned n) {
  double product = 1.0;
  for (unsigned k = 0; k < n; ++k) product *= t - static_cast<double>(k);
  return product;
}

/// t^(n) = t (t+1) ... (t+n-1); the empty product for n = 0 is 1.
inline double rising_factorial(double t, unsigned n) {
  double product = 1.0;
  for (unsigned k = 0; k < n; ++k) product *= t + static_cast<double>(k);
  return product;
}

namespace detail {

// Triangle of S(n, k) for 0 <= k <= n <= kStirlingCap, built once.
inline const std::vector<std::vector<BigInt>>& stirling2_table() {
  static const std::vector<std::vector<BigInt>> table = [] {
    std::vector<std::vector<BigInt>> rows(kStirlingCap + 1);
    rows[0] = {BigInt(1)};
    for (int n = 1; n <= kStirlingCap; ++n) {
      rows[n].assign(n + 1, BigInt(0));
      for (int k = 1; k <= n; ++k) {
        BigInt value = rows[n - 1][k - 1];
        if (k <= n - 1) value += k * rows[n - 1][k];
        rows[n][k] = value;
      }
    }
    return rows;
  }();
  return table;
}

}  // namespace detail

/// Stirling number of the second kind, exact. Throws CapExceeded for
/// n > kStirlingCap.
inline BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0) throw Error(ErrorCode::DomainError, "stirling2 arguments must be nonnegative");
  if (n > kStirlingCap) throw Error(ErrorCode::CapExceeded, "stirling2 supports n <= " + std::to_string(kStirlingCap));
  if (k > n) return 0;
  return detail::stirling2_table()[n][k];
}

/// S(n, k) rounded to the nearest double.
inline double stirling2_double(int n, int k) { return stirling2(n, k).convert_to<double>(); }

namespace detail {

inline constexpr double kAsymptoticThreshold = 10.0;

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Asymptotic expansion of digamma, valid for x >= kAsymptoticThreshold.
inline double digamma_asymptotic(double x) {
  const double inv2 = 1.0 / (x * x);
  // Coefficients B_{2k} / (2k) for k = 1..7, highest order first.
  constexpr std::array<double, 7> c = {
      1.0 / 12.0, -691.0 / 32760.0, 1.0 / 132.0, -1.0 / 240.0, 1.0 / 252.0, -1.0 / 120.0, 1.0 / 12.0};
  double series = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) series = series * inv2 + c[i];
  return std::log(x) - 0.5 / x - series * inv2;
}

// Stirling series for ln Gamma, valid for x >= kAsymptoticThreshold.
inline double ln_gamma_asymptotic(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // B_{2k} / (2k (2k-1)) for k = 7 down to 1.
  constexpr std::array<double, 7> c = {1.0 / 156.0,   -691.0 / 360360.0, 1.0 / 1188.0, -1.0 / 1680.0,
                                       1.0 / 1260.0,  -1.0 / 360.0,      1.0 / 12.0};
  double series = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) series = series * inv2 + c[i];
  constexpr double half_ln_two_pi = 0.91893853320467274178;
  return (x - 0.5) * std::log(x) - x + half_ln_two_pi + series * inv;
}

}  // namespace detail

/// Digamma function Psi(x) = d/dx ln Gamma(x). Arguments below the asymptotic
/// region are shifted upward with Psi(x+1) = Psi(x) + 1/x; negative
/// non-integers use the reflection formula.
inline double digamma(double x) {
  require_finite(x, "x");
  if (detail::is_nonpositive_integer(x)) throw Error(ErrorCode::PoleError, "digamma has a pole at non-positive integers");
  if (x < 0.0) {
    // Psi(1 - x) - Psi(x) = pi cot(pi x)
    return digamma(1.0 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
  }
  double shift = 0.0;
  while (x < detail::kAsymptoticThreshold) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return detail::digamma_asymptotic(x) - shift;
}

/// ln Gamma(x) for x > 0.
inline double ln_gamma(double x) {
  require_finite(x, "x");
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "ln_gamma requires x > 0");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x >= detail::kAsymptoticThreshold) return detail::ln_gamma_asymptotic(x);
  // ln Gamma(x) = ln Gamma(x + m) - ln(x (x+1) ... (x+m-1)); x itself is
  // kept out of the product so tiny arguments do not underflow.
  double product = 1.0;
  double y = x + 1.0;
  while (y < detail::kAsymptoticThreshold) {
    product *= y;
    y += 1.0;
  }
  return detail::ln_gamma_asymptotic(y) - std::log(product) - std::log(x);
}

/// Gamma(x): exp(ln_gamma) for positive x, reflection for negative non-integers.
inline double gamma(double x) {
  require_finite(x, "x");
  if (detail::is_nonpositive_integer(x)) throw Error(ErrorCode::PoleError, "gamma has a pole at non-positive integers");
  if (x > 0.0) return std::exp(ln_gamma(x));
  return std::numbers::pi / (std::sin(std::numbers::pi * x) * std::exp(ln_gamma(1.0 - x)));
}

}  // namespace adiff::numkit
