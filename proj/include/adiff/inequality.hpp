#pragma once

// General solutions of the first-order difference inequalities
//
//   y(t+h) - lambda y(t) >= 0   (GEQ)      y(t+h) - lambda y(t) <= 0   (LEQ)
//
// as y(t) = |lambda|^(t/h) mu(t) + sum_{s=1}^{floor(t/h)} lambda^(s-1) slack(t - s h),
// where slack >= 0 (GEQ) or slack <= 0 (LEQ), mu is h-periodic when
// lambda > 0 and h-antiperiodic when lambda < 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adiff/antidiff.hpp"
#include "adiff/error.hpp"
#include "adiff/function.hpp"

namespace adiff::ineq {

enum class Direction { Geq, Leq };
enum class Membership { Periodic, Antiperiodic };

inline constexpr double kMembershipTolerance = 1e-10;
inline constexpr double kDirectionTolerance = 1e-10;
inline constexpr double kSlackMatchTolerance = 1e-9;

struct InequalitySpec {
  double h = 1.0;
  double lambda = 1.0;
  Direction direction = Direction::Geq;

  void validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::NonPositiveShift, "h must be positive");
    if (lambda == 0.0) throw Error(ErrorCode::ZeroLambda, "lambda must be nonzero");
    if (!std::isfinite(lambda)) throw Error(ErrorCode::NonFiniteInput, "lambda must be finite");
  }

  Membership required_membership() const { return lambda > 0.0 ? Membership::Periodic : Membership::Antiperiodic; }
};

/// `count` evenly spaced points from lo to hi inclusive.
inline std::vector<double> uniform_samples(double lo, double hi, int count) {
  std::vector<double> points;
  if (count <= 0) return points;
  if (count == 1) return {lo};
  points.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) points.push_back(lo + (hi - lo) * i / (count - 1));
  return points;
}

struct SampleRange {
  double lo = 0.0;
  double hi = 4.0;
  int count = 64;

  std::vector<double> points() const { return uniform_samples(lo, hi, count); }
};

struct MembershipResult {
  bool member = true;
  std::optional<double> witness;  // first failing sample

  explicit operator bool() const { return member; }
};

/// Checks mu(t+h) = mu(t) (Periodic) or mu(t+h) = -mu(t) (Antiperiodic) at
/// every sample, within 1e-10 (1 + |mu(t)|).
template <RealFunction Mu>
MembershipResult check_membership(const Mu& mu, double h, Membership kind, std::span<const double> samples) {
  const double sign = kind == Membership::Periodic ? 1.0 : -1.0;
  for (double t : samples) {
    const double a = static_cast<double>(mu(t));
    const double b = static_cast<double>(mu(t + h));
    if (!(std::abs(b - sign * a) <= kMembershipTolerance * (1.0 + std::abs(a)))) return {false, t};
  }
  return {};
}

class SolutionFunction {
 public:
  SolutionFunction(InequalitySpec spec, Function mu, Function slack)
      : spec_(spec), mu_(std::move(mu)), slack_(std::move(slack)) {
    spec_.validate();
  }

  const InequalitySpec& spec() const { return spec_; }
  const Function& mu() const { return mu_; }
  const Function& slack() const { return slack_; }

  /// |lambda|^(t/h) mu(t)
  double homogeneous(double t) const { return std::pow(std::abs(spec_.lambda), t / spec_.h) * mu_(t); }

  /// sum_{s=1}^{floor(t/h)} lambda^(s-1) slack(t - s h)
  double particular(double t) const { return resolvent_sum(slack_, t, Complex(spec_.lambda, 0.0), spec_.h).value.real(); }

  double operator()(double t) const { return homogeneous(t) + particular(t); }

 private:
  InequalitySpec spec_;
  Function mu_;
  Function slack_;
};

/// Validated construction: slack must carry the sign required by the
/// direction at every point of `slack_range`, and mu must be periodic
/// (lambda > 0) or antiperiodic (lambda < 0) on `mu_range`.
/// Throws SignViolation or PeriodicityViolation with the failing sample.
inline SolutionFunction build_solution(InequalitySpec spec, Function mu, Function slack,
                                       SampleRange slack_range = {}, std::optional<SampleRange> mu_range = {}) {
  spec.validate();
  for (double x : slack_range.points()) {
    const double v = slack(x);
    const bool ok = spec.direction == Direction::Geq ? v >= 0.0 : v <= 0.0;
    if (!ok)
      throw Error(ErrorCode::SignViolation, "slack(" + std::to_string(x) + ") = " + std::to_string(v) + " has the wrong sign");
  }
  const SampleRange range = mu_range.value_or(SampleRange{0.0, 4.0 * spec.h, 64});
  const auto points = range.points();
  const auto membership = check_membership(mu, spec.h, spec.required_membership(), points);
  if (!membership)
    throw Error(ErrorCode::PeriodicityViolation,
                std::string("mu is not ") + (spec.lambda > 0.0 ? "periodic" : "antiperiodic") + " with period h at t = " +
                    std::to_string(*membership.witness));
  return SolutionFunction(spec, std::move(mu), std::move(slack));
}

struct InequalityReport {
  std::size_t samples = 0;
  double min_residual = std::numeric_limits<double>::infinity();
  double max_residual = -std::numeric_limits<double>::infinity();
  std::vector<double> direction_violations;  // r(t) on the wrong side of zero
  std::vector<double> sign_violations;       // slack(t) with the wrong sign
  std::vector<double> slack_mismatches;      // r(t) != slack(t)

  bool pass() const { return direction_violations.empty() && sign_violations.empty() && slack_mismatches.empty(); }
};

/// Evaluates r(t) = y(t+h) - lambda y(t) at each sample.
inline InequalityReport check_inequality(const SolutionFunction& y, std::span<const double> t_samples) {
  const auto& spec = y.spec();
  InequalityReport report;
  for (double t : t_samples) {
    const double next = y(t + spec.h);
    const double scaled = spec.lambda * y(t);
    const double r = next - scaled;
    const double slack = y.slack()(t);
    ++report.samples;
    report.min_residual = std::min(report.min_residual, r);
    report.max_residual = std::max(report.max_residual, r);

    const bool direction_ok = spec.direction == Direction::Geq ? r >= -kDirectionTolerance : r <= kDirectionTolerance;
    if (!direction_ok) report.direction_violations.push_back(t);
    const bool sign_ok = spec.direction == Direction::Geq ? slack >= 0.0 : slack <= 0.0;
    if (!sign_ok) report.sign_violations.push_back(t);
    const double scale = std::max({1.0, std::abs(next), std::abs(scaled), std::abs(slack)});
    if (!(std::abs(r - slack) <= kSlackMatchTolerance * scale)) report.slack_mismatches.push_back(t);
  }
  return report;
}

}  // namespace adiff::ineq
