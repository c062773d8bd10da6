#pragma once

// Seeded numerical verification of the summation identities.
//
// Each identity draws `samples` random points, computes a residual per
// point and passes iff the largest residual is <= tol. Residuals are
// absolute for digamma, sincos and mueller; the others divide by the natural
// magnitude of the sums involved (documented per identity below).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "adiff/antidiff.hpp"
#include "adiff/cli/io.hpp"
#include "adiff/function.hpp"
#include "adiff/numkit.hpp"
#include "adiff/opalgebra.hpp"

namespace adiff::cli {

struct VerifyReport {
  std::string identity;
  std::size_t samples = 0;
  double max_abs_residual = 0.0;
  double tolerance = 0.0;
  std::vector<double> witnesses;  // sample points whose residual exceeded tol

  bool pass() const { return max_abs_residual <= tolerance; }
};

inline constexpr std::string_view kIdentityNames[] = {
    "digamma", "lngamma",         "gammaratio",     "exponential", "sincos",      "mueller",
    "offset",  "factor-e2minus4", "factor-e2plus1", "periodic",    "fundamental",
};

inline bool is_identity_name(std::string_view name) {
  if (name == "all") return true;
  return std::find(std::begin(kIdentityNames), std::end(kIdentityNames), name) != std::end(kIdentityNames);
}

/// Uniform doubles from a 64-bit Mersenne Twister; reproducible across
/// platforms for a fixed seed.
class SampleSource {
 public:
  explicit SampleSource(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  /// Uniform in (lo, hi), at least `gap` away from every integer.
  double non_integer(double lo, double hi, double gap = 1e-6) {
    for (;;) {
      const double t = uniform(lo, hi);
      if (t <= lo) continue;
      if (std::abs(t - std::round(t)) >= gap) return t;
    }
  }

  std::uint64_t index(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

/// A random smooth test function: polynomial, exponential or trig mix.
inline Function random_function(SampleSource& rng) {
  switch (rng.index(4)) {
    case 0: {
      std::vector<double> c(1 + rng.index(4));
      for (auto& a : c) a = rng.uniform(-2.0, 2.0);
      return Function(fn::Polynomial{c}, "polynomial");
    }
    case 1: {
      const double a = rng.uniform(0.5, 1.5);
      return Function(fn::Exponential{a}, "exponential");
    }
    case 2: {
      const fn::Sine s{rng.uniform(0.5, 2.0), rng.uniform(0.2, 3.0), rng.uniform(0.0, 3.0)};
      const fn::Cosine c{rng.uniform(0.5, 2.0), rng.uniform(0.2, 3.0), rng.uniform(0.0, 3.0)};
      return Function([s, c](double t) { return s(t) + c(t); }, "trig");
    }
    default: {
      const double k = rng.uniform(-0.2, 0.2);
      const double w = rng.uniform(0.5, 2.0);
      return Function([k, w](double t) { return std::exp(k * t) * std::cos(w * t) + 0.25 * t; }, "damped");
    }
  }
}

namespace detail {

class ReportBuilder {
 public:
  ReportBuilder(std::string_view name, double tol) {
    report_.identity = std::string(name);
    report_.tolerance = tol;
  }

  void add(double t, double residual) {
    ++report_.samples;
    if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
    report_.max_abs_residual = std::max(report_.max_abs_residual, residual);
    if (!(residual <= report_.tolerance)) report_.witnesses.push_back(t);
  }

  VerifyReport finish() { return std::move(report_); }

 private:
  VerifyReport report_;
};

inline double scaled(double diff, double scale) { return std::abs(diff) / std::max(1.0, std::abs(scale)); }

// |Psi(t) - Psi({t}) - sum_{s=1}^{[t]} 1/(t-s)|
inline VerifyReport verify_digamma(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("digamma", tol);
  const auto inv = [](double u) { return 1.0 / u; };
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = rng.non_integer(0.0, 20.0);
    const double sum = antidifference(inv, t).value;
    b.add(t, std::abs(numkit::digamma(t) - numkit::digamma(numkit::frac(t)) - sum));
  }
  return b.finish();
}

// |sum ln(t-s) - (lnGamma(t) - lnGamma({t}))| / max(1, |lnGamma(t)|)
inline VerifyReport verify_lngamma(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("lngamma", tol);
  const auto ln = [](double u) { return std::log(u); };
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = rng.non_integer(0.0, 20.0);
    const double sum = antidifference(ln, t).value;
    const double lg = numkit::ln_gamma(t);
    b.add(t, scaled(sum - (lg - numkit::ln_gamma(numkit::frac(t))), lg));
  }
  return b.finish();
}

// |prod (t-s) - exp(lnGamma(t) - lnGamma({t}))| / |prod (t-s)|
inline VerifyReport verify_gammaratio(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("gammaratio", tol);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = rng.non_integer(0.0, 20.0);
    const double product = gamma_ratio_product(t);
    const double ratio = std::exp(numkit::ln_gamma(t) - numkit::ln_gamma(numkit::frac(t)));
    b.add(t, std::abs(product - ratio) / std::abs(product));
  }
  return b.finish();
}

// (antidifference of a^t) - a^t/(a-1) against -a^{t}/(a-1), relative to
// a^t/(a-1); a cycles through 0.5, 2, 3. Fixed witness a=2, t=3.5 -> 7 sqrt 2.
inline VerifyReport verify_exponential(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("exponential", tol);
  {
    const double value = antidifference(fn::Exponential{2.0}, 3.5).value;
    b.add(3.5, std::abs(value - 7.0 * std::numbers::sqrt2) / (7.0 * std::numbers::sqrt2));
  }
  constexpr double bases[] = {0.5, 2.0, 3.0};
  for (std::size_t i = 1; i < samples; ++i) {
    const double a = bases[i % 3];
    const double t = rng.uniform(1.0, 12.0);
    const double tabulated = exp_antidifference(a, t);
    const double defect = antidifference(fn::Exponential{a}, t).value - tabulated;
    const double expected = -std::pow(a, numkit::frac(t)) / (a - 1.0);
    b.add(t, scaled(defect - expected, tabulated));
  }
  return b.finish();
}

// max(|DeltaF_sin(t) - sin t|, |DeltaF_cos(t) - cos t|) for the closed forms
inline VerifyReport verify_sincos(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("sincos", tol);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = rng.uniform(0.0, 20.0);
    const double rs = sin_antidifference(t + 1.0) - sin_antidifference(t) - std::sin(t);
    const double rc = cos_antidifference(t + 1.0) - cos_antidifference(t) - std::cos(t);
    b.add(t, std::max(std::abs(rs), std::abs(rc)));
  }
  return b.finish();
}

// d(x) = mueller(x) - antidifference(x) must be 1-periodic: |d(x+1) - d(x)|,
// f = a^x with a cycling through 0.3, 0.5, 0.9.
inline VerifyReport verify_mueller(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("mueller", tol);
  constexpr double bases[] = {0.3, 0.5, 0.9};
  for (std::size_t i = 0; i < samples; ++i) {
    const fn::Exponential f{bases[i % 3]};
    const double x = rng.uniform(0.0, 20.0);
    const auto defect = [&](double u) {
      return mueller_sum(f, u, 1e-17, 100000).value - resolvent_sum(f, u, 1.0, 1.0).value.real();
    };
    b.add(x, std::abs(defect(x + 1.0) - defect(x)));
  }
  return b.finish();
}

// offset_residual for tabulated sin, cos, 2^t and a random cubic, relative
// to max(1, |F(x)|).
inline VerifyReport verify_offset(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("offset", tol);
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = rng.uniform(0.0, 20.0);
    double residual = 0.0;
    switch (i % 4) {
      case 0:
        residual = scaled(offset_residual(sin_antidifference, [](double u) { return std::sin(u); }, x), sin_antidifference(x));
        break;
      case 1:
        residual = scaled(offset_residual(cos_antidifference, [](double u) { return std::cos(u); }, x), cos_antidifference(x));
        break;
      case 2: {
        const auto tab = [](double u) { return exp_antidifference(2.0, u); };
        residual = scaled(offset_residual(tab, fn::Exponential{2.0}, x), tab(x));
        break;
      }
      default: {
        const std::vector<double> c = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        const auto tab = [&c](double u) { return poly_antidifference(c, u); };
        residual = scaled(offset_residual(tab, fn::Polynomial{c}, x), tab(x));
      }
    }
    b.add(x, residual);
  }
  return b.finish();
}

// |LHS - RHS| / max(1, sum of |RHS terms|); fixed witness f = 1, t = 4.5
// for E^2 - 4I must give 20 on both sides.
inline VerifyReport verify_factor(ops::FactorIdentity identity, SampleSource& rng, std::size_t samples, double tol) {
  const bool e2minus4 = identity == ops::FactorIdentity::E2minus4;
  ReportBuilder b(e2minus4 ? "factor-e2minus4" : "factor-e2plus1", tol);
  if (e2minus4) {
    const auto sides = ops::factorization_identity_sides(identity, fn::Constant{1.0}, 4.5);
    b.add(4.5, std::abs(sides.lhs - Complex(20.0, 0.0)) + std::abs(sides.rhs - 20.0));
  }
  for (std::size_t i = e2minus4 ? 1 : 0; i < samples; ++i) {
    const Function f = random_function(rng);
    const double t = rng.uniform(0.0, 20.0);
    const auto sides = ops::factorization_identity_sides(identity, f, t);
    double scale = 0.0;
    for (std::int64_t s = 1; s <= numkit::term_count(t, 2.0); ++s)
      scale += (e2minus4 ? std::ldexp(1.0, static_cast<int>(2 * s)) : 1.0) * std::abs(f(t - 2.0 * static_cast<double>(s)));
    b.add(t, sides.residual() / std::max(1.0, scale));
  }
  return b.finish();
}

// |periodic_antidifference(f, T, t) - antidifference(f(T .), t)| / max(1, [t] |A|)
// for f(x) = A sin(2 pi x / T + phase).
inline VerifyReport verify_periodic(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("periodic", tol);
  for (std::size_t i = 0; i < samples; ++i) {
    const double period = rng.uniform(0.5, 3.0);
    const double amplitude = rng.uniform(0.5, 2.0);
    const double phase = rng.uniform(0.0, 3.0);
    const fn::Sine f{amplitude, 2.0 * std::numbers::pi / period, phase};
    const double t = rng.uniform(0.0, 20.0);
    const double closed = periodic_antidifference(f, period, t);
    const double direct = antidifference([&](double x) { return f(period * x); }, t).value;
    b.add(t, scaled(closed - direct, static_cast<double>(numkit::term_count(t)) * amplitude));
  }
  return b.finish();
}

// |(F(n+1) - F(m)) - sum_{k=m}^{n} f(k)| / max(1, sum |f(k)|); fixed witness
// sum_{k=1}^{5} k^2 = 55.
inline VerifyReport verify_fundamental(SampleSource& rng, std::size_t samples, double tol) {
  ReportBuilder b("fundamental", tol);
  {
    const auto sum = definite_sum(fn::Polynomial{{0.0, 0.0, 1.0}}, 1, 5);
    b.add(5.0, std::abs(sum.value - 55.0));
  }
  for (std::size_t i = 1; i < samples; ++i) {
    const Function f = random_function(rng);
    const auto m = static_cast<std::int64_t>(rng.index(20));
    const auto n = m + static_cast<std::int64_t>(rng.index(20));
    const auto sum = definite_sum(f, m, n);
    double scale = 0.0;
    for (std::int64_t k = 0; k <= n; ++k) scale += std::abs(f(static_cast<double>(k)));
    b.add(static_cast<double>(n), scaled(sum.value - sum.direct, scale));
  }
  return b.finish();
}

}  // namespace detail

/// Runs one identity, or every identity for "all", each with its own
/// sample stream derived from `seed`.
inline std::vector<VerifyReport> run_verify(std::string_view identity, std::size_t samples, double tol,
                                            std::uint64_t seed) {
  std::vector<VerifyReport> reports;
  std::uint64_t stream = 0;
  for (std::string_view name : kIdentityNames) {
    ++stream;
    if (identity != "all" && identity != name) continue;
    SampleSource rng(seed * 1000003ULL + stream);
    if (name == "digamma") reports.push_back(detail::verify_digamma(rng, samples, tol));
    else if (name == "lngamma") reports.push_back(detail::verify_lngamma(rng, samples, tol));
    else if (name == "gammaratio") reports.push_back(detail::verify_gammaratio(rng, samples, tol));
    else if (name == "exponential") reports.push_back(detail::verify_exponential(rng, samples, tol));
    else if (name == "sincos") reports.push_back(detail::verify_sincos(rng, samples, tol));
    else if (name == "mueller") reports.push_back(detail::verify_mueller(rng, samples, tol));
    else if (name == "offset") reports.push_back(detail::verify_offset(rng, samples, tol));
    else if (name == "factor-e2minus4") reports.push_back(detail::verify_factor(ops::FactorIdentity::E2minus4, rng, samples, tol));
    else if (name == "factor-e2plus1") reports.push_back(detail::verify_factor(ops::FactorIdentity::E2plus1, rng, samples, tol));
    else if (name == "periodic") reports.push_back(detail::verify_periodic(rng, samples, tol));
    else if (name == "fundamental") reports.push_back(detail::verify_fundamental(rng, samples, tol));
  }
  return reports;
}

/// One line per report:
/// "<identity> samples=N max_abs_residual=R tol=T pass=yes|no failures=K witnesses=[t1,...]"
/// At most 8 witnesses are listed.
inline std::string format_report(const VerifyReport& r) {
  char head[160];
  std::snprintf(head, sizeof head, "%s samples=%zu max_abs_residual=%.6e tol=%.6e pass=%s failures=%zu witnesses=[",
                r.identity.c_str(), r.samples, r.max_abs_residual, r.tolerance, r.pass() ? "yes" : "no",
                r.witnesses.size());
  std::string line = head;
  for (std::size_t i = 0; i < r.witnesses.size() && i < 8; ++i) {
    if (i) line += ',';
    line += format_real(r.witnesses[i]);
  }
  line += ']';
  return line;
}

}  // namespace adiff::cli
