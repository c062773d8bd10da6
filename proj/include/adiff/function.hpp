#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace adiff {

using Complex = std::complex<double>;

/// A deterministic, side-effect-free map from real t to a real value.
template <class F>
concept RealFunction = std::invocable<const F&, double> && std::convertible_to<std::invoke_result_t<const F&, double>, double>;

/// A function of t whose values may be complex (used for nested resolvents).
template <class F>
concept ScalarFunction = std::invocable<const F&, double> &&
    (std::convertible_to<std::invoke_result_t<const F&, double>, double> ||
     std::same_as<std::decay_t<std::invoke_result_t<const F&, double>>, Complex>);

/// Type-erased real function, e.g. a parsed expression or a built-in.
class Function {
 public:
  Function() = default;

  template <RealFunction F>
    requires(!std::same_as<std::decay_t<F>, Function>)
  Function(F f, std::string name = {}) : fn_(std::move(f)), name_(std::move(name)) {}

  double operator()(double t) const { return fn_(t); }
  const std::string& name() const { return name_; }
  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  std::function<double(double)> fn_;
  std::string name_;
};

// Built-in functions.
namespace fn {

struct Constant {
  double value = 0.0;
  double operator()(double) const { return value; }
};

/// a_0 + a_1 t + ... + a_n t^n, evaluated by Horner's rule.
struct Polynomial {
  std::vector<double> coeffs;
  double operator()(double t) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
};

/// base^t
struct Exponential {
  double base = 2.0;
  double operator()(double t) const { return std::pow(base, t); }
};

/// amplitude * sin(frequency * t + phase)
struct Sine {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
  double operator()(double t) const { return amplitude * std::sin(frequency * t + phase); }
};

/// amplitude * cos(frequency * t + phase)
struct Cosine {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
  double operator()(double t) const { return amplitude * std::cos(frequency * t + phase); }
};

}  // namespace fn

}  // namespace adiff
