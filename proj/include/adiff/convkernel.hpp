#pragma once

// Green-kernel form of the first-order resolvent: G(t; lambda) places the
// point mass lambda^(s-1) at each integer offset s = 1..floor(t), and the
// convolution G * f collapses to sum_s lambda^(s-1) f(t - s).

#include <cstdint>
#include <vector>

#include "adiff/antidiff.hpp"
#include "adiff/function.hpp"
#include "adiff/numkit.hpp"

namespace adiff::conv {

struct KernelWeight {
  std::int64_t offset = 0;
  Complex weight{};

  friend bool operator==(const KernelWeight&, const KernelWeight&) = default;
};

/// [(1, 1), (2, lambda), ..., (floor(t), lambda^(floor(t)-1))]; empty for t < 1.
inline std::vector<KernelWeight> kernel_weights(Complex lambda, double t) {
  require_nonzero_lambda(lambda);
  const std::int64_t n = numkit::term_count(t);
  std::vector<KernelWeight> weights;
  weights.reserve(static_cast<std::size_t>(n));
  Complex w(1.0, 0.0);
  for (std::int64_t s = 1; s <= n; ++s) {
    weights.push_back({s, w});
    w *= lambda;
  }
  return weights;
}

class GreenKernel {
 public:
  GreenKernel(Complex lambda, double t) : lambda_(lambda), t_(t) { require_nonzero_lambda(lambda); }

  Complex lambda() const { return lambda_; }
  double t() const { return t_; }
  std::int64_t support_size() const { return numkit::term_count(t_); }
  std::vector<KernelWeight> weights() const { return kernel_weights(lambda_, t_); }

 private:
  Complex lambda_;
  double t_;
};

/// G(t; lambda) * f, accumulated in ascending offset. Bitwise equal to
/// resolvent_sum(f, t, lambda, 1).
template <ScalarFunction F>
Complex convolve(Complex lambda, const F& f, double t) {
  Complex acc(0.0, 0.0);
  for (const auto& [offset, weight] : kernel_weights(lambda, t)) acc += weight * f(t - static_cast<double>(offset));
  return acc;
}

}  // namespace adiff::conv
