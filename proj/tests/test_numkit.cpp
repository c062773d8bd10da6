#include <cmath>
#include <limits>
#include <random>

#include <boost/math/special_functions/digamma.hpp>
#include <gtest/gtest.h>

#include "adiff/numkit.hpp"
#include "oracles.hpp"

namespace nk = adiff::numkit;
using adiff::Error;
using adiff::ErrorCode;

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an adiff::Error";
  return ErrorCode::ParseError;
}

}  // namespace

TEST(FloorMod, Examples) {
  const auto a = nk::floor_mod(7.3, 2.0);
  EXPECT_EQ(a.n, 3);
  EXPECT_NEAR(a.r, 1.3, 1e-15);

  const auto b = nk::floor_mod(-0.5, 1.0);
  EXPECT_EQ(b.n, -1);
  EXPECT_EQ(b.r, 0.5);

  // exhaustive candidate check n*h + r over n in [-10, 10]
  const auto c = nk::floor_mod(5.0, 2.0);
  int matches = 0;
  for (int n = -10; n <= 10; ++n) {
    const double r = 5.0 - 2.0 * n;
    if (r >= 0.0 && r < 2.0) {
      ++matches;
      EXPECT_EQ(c.n, n);
      EXPECT_EQ(c.r, r);
    }
  }
  EXPECT_EQ(matches, 1);
}

TEST(FloorMod, Errors) {
  EXPECT_EQ(code_of([] { nk::floor_mod(1.0, 0.0); }), ErrorCode::NonPositiveShift);
  EXPECT_EQ(code_of([] { nk::floor_mod(1.0, -2.0); }), ErrorCode::NonPositiveShift);
  EXPECT_EQ(code_of([] { nk::floor_mod(std::nan(""), 1.0); }), ErrorCode::NonFiniteInput);
  EXPECT_EQ(code_of([] { nk::floor_mod(INFINITY, 1.0); }), ErrorCode::NonFiniteInput);
}

TEST(FloorMod, ReconstructsRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> tdist(-1e6, 1e6);
  std::uniform_real_distribution<double> hexp(-8.0, 3.0);
  for (int i = 0; i < 20000; ++i) {
    const double t = tdist(rng) * (i % 2 ? 1e-4 : 1.0);
    const double h = std::pow(10.0, hexp(rng));
    const auto fm = nk::floor_mod(t, h);
    ASSERT_GE(fm.r, 0.0) << t << " " << h;
    ASSERT_LT(fm.r, h) << t << " " << h;
    ASSERT_EQ(static_cast<double>(fm.n), std::floor(t / h)) << t << " " << h;
    const double back = static_cast<double>(fm.n) * h + fm.r;
    // the product n*h itself rounds, so allow an ulp of each operand
    ASSERT_LE(std::abs(back - t), 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), std::abs(fm.n * h)) + 1e-300);
  }
}

TEST(FloorMod, UnitShiftIsStandardFloor) {
  for (double t : {-3.75, -1.0, -0.25, 0.0, 0.4, 1.0, 2.5, 1e6 + 0.125}) {
    const auto fm = nk::floor_mod(t, 1.0);
    EXPECT_EQ(static_cast<double>(fm.n), std::floor(t));
    EXPECT_EQ(fm.r, t - std::floor(t));
  }
}

TEST(FloorMod, LimitsAsShiftShrinks) {
  for (double t : {0.3, 2.7, 13.25, -4.1}) {
    for (double h = 1e-1; h >= 1e-8; h /= 10.0) {
      const auto fm = nk::floor_mod(t, h);
      // the product h*n rounds; allow a few ulps of t on top of h
      EXPECT_LE(std::abs(h * static_cast<double>(fm.n) - t), h + 4 * std::numeric_limits<double>::epsilon() * std::abs(t));
      EXPECT_LT(fm.r, h);
    }
  }
}

TEST(Factorials, Examples) {
  EXPECT_EQ(nk::falling_factorial(5, 3), 60.0);
  EXPECT_EQ(nk::falling_factorial(-2.75, 0), 1.0);
  EXPECT_EQ(nk::falling_factorial(2.5, 2), 3.75);
  EXPECT_EQ(nk::rising_factorial(3, 2), 12.0);
  EXPECT_EQ(nk::rising_factorial(1.7, 1), 1.7);
  EXPECT_EQ(nk::rising_factorial(0.5, 3), 1.875);
}

TEST(Factorials, ForwardDifferenceLowersDegree) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  for (int i = 0; i < 500; ++i) {
    const double t = dist(rng);
    for (unsigned n = 1; n <= 8; ++n) {
      const double lhs = nk::falling_factorial(t + 1, n) - nk::falling_factorial(t, n);
      const double rhs = n * nk::falling_factorial(t, n - 1);
      const double scale = std::max({1.0, std::abs(nk::falling_factorial(t + 1, n)), std::abs(nk::falling_factorial(t, n))});
      EXPECT_LE(std::abs(lhs - rhs), 1e-10 * scale) << t << " " << n;
    }
  }
}

TEST(Stirling, Examples) {
  EXPECT_EQ(nk::stirling2(0, 0), 1);
  EXPECT_EQ(nk::stirling2(3, 2), oracle::count_set_partitions(3, 2));
  EXPECT_EQ(nk::stirling2(3, 2), 3);
  EXPECT_EQ(nk::stirling2(4, 2), oracle::count_set_partitions(4, 2));
  EXPECT_EQ(nk::stirling2(4, 2), 7);
  EXPECT_EQ(nk::stirling2(5, 0), 0);
  EXPECT_EQ(nk::stirling2(2, 5), 0);
}

TEST(Stirling, MatchesPartitionEnumeration) {
  for (int n = 0; n <= 9; ++n)
    for (int k = 0; k <= n + 1; ++k) EXPECT_EQ(nk::stirling2(n, k), oracle::count_set_partitions(n, k)) << n << "," << k;
}

TEST(Stirling, ExactBeyondSixtyFourBits) {
  // S(n, n-1) = C(n, 2) and S(n, 2) = 2^(n-1) - 1 hold exactly at the cap.
  EXPECT_EQ(nk::stirling2(64, 63), 64 * 63 / 2);
  EXPECT_EQ(nk::stirling2(64, 2), (nk::BigInt(1) << 63) - 1);
  // the row sum (Bell number B_64) is far beyond 2^64
  nk::BigInt bell = 0;
  for (int k = 0; k <= 64; ++k) bell += nk::stirling2(64, k);
  EXPECT_GT(bell, nk::BigInt(1) << 200);
  EXPECT_EQ(code_of([] { nk::stirling2(65, 3); }), ErrorCode::CapExceeded);
}

TEST(Stirling, PowersAsFallingFactorials) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double t = dist(rng);
    for (int n = 0; n <= 10; ++n) {
      double falling = 0.0, rising = 0.0, scale = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double s = nk::stirling2_double(n, k);
        falling += s * nk::falling_factorial(t, k);
        rising += ((n - k) % 2 ? -1.0 : 1.0) * s * nk::rising_factorial(t, k);
        scale += s * std::abs(nk::falling_factorial(t, k)) + s * std::abs(nk::rising_factorial(t, k));
      }
      const double power = std::pow(t, n);
      EXPECT_LE(std::abs(falling - power), 1e-9 * std::max(1.0, scale)) << t << " " << n;
      EXPECT_LE(std::abs(rising - power), 1e-9 * std::max(1.0, scale)) << t << " " << n;
    }
  }
}

TEST(Digamma, Examples) {
  EXPECT_NEAR(nk::digamma(1.0), -kEulerGamma, 1e-15);
  EXPECT_NEAR(nk::digamma(2.5) - nk::digamma(0.5), 8.0 / 3.0, 1e-14);
  for (double x : {0.1, 0.5, 1.3, 7.9, 33.0, 99.5}) EXPECT_NEAR(nk::digamma(x + 1) - nk::digamma(x), 1.0 / x, 1e-12 / x);
}

TEST(Digamma, MatchesReferenceOnPositiveAxis) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(1e-3, 100.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = i < 100 ? 1e-6 * (i + 1) : dist(rng);
    const double expected = boost::math::digamma(x);
    EXPECT_LE(std::abs(nk::digamma(x) - expected), 1e-12 * std::max(1.0, std::abs(expected))) << x;
  }
}

TEST(Digamma, NegativeArgumentsAndPoles) {
  for (double x : {-0.5, -1.25, -3.7, -10.1}) {
    const double expected = boost::math::digamma(x);
    EXPECT_LE(std::abs(nk::digamma(x) - expected), 1e-11 * std::max(1.0, std::abs(expected))) << x;
  }
  EXPECT_EQ(code_of([] { nk::digamma(0.0); }), ErrorCode::PoleError);
  EXPECT_EQ(code_of([] { nk::digamma(-3.0); }), ErrorCode::PoleError);
}

TEST(LnGamma, Examples) {
  EXPECT_EQ(nk::ln_gamma(1.0), 0.0);
  EXPECT_EQ(nk::ln_gamma(2.0), 0.0);
  EXPECT_NEAR(nk::ln_gamma(2.5) - nk::ln_gamma(0.5), std::log(0.75), 1e-14);
  EXPECT_EQ(code_of([] { nk::ln_gamma(0.0); }), ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { nk::ln_gamma(-1.5); }), ErrorCode::DomainError);
}

TEST(LnGamma, MatchesReferenceOnPositiveAxis) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(1e-3, 100.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = i < 100 ? 1e-6 * (i + 1) : dist(rng);
    const double expected = std::lgamma(x);
    EXPECT_LE(std::abs(nk::ln_gamma(x) - expected), 1e-12 * std::max(1.0, std::abs(expected))) << x;
  }
}

TEST(SpecialFunctions, OneStepRecurrences) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> dist(1e-3, 50.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = dist(rng);
    const double dpsi = nk::digamma(x + 1) - nk::digamma(x);
    EXPECT_LE(std::abs(dpsi - 1.0 / x), 1e-11 * std::max({1.0 / x, std::abs(nk::digamma(x)), 1.0})) << x;
    const double dlg = nk::ln_gamma(x + 1) - nk::ln_gamma(x);
    EXPECT_LE(std::abs(dlg - std::log(x)), 1e-11 * std::max({std::abs(std::log(x)), std::abs(nk::ln_gamma(x)), 1.0})) << x;
  }
}

TEST(Gamma, PositiveAndReflected) {
  EXPECT_NEAR(nk::gamma(5.0), 24.0, 1e-12);
  EXPECT_NEAR(nk::gamma(0.5), std::sqrt(M_PI), 1e-14);
  EXPECT_NEAR(nk::gamma(-0.5), -2.0 * std::sqrt(M_PI), 1e-13);
  EXPECT_NEAR(nk::gamma(-2.5), std::tgamma(-2.5), 1e-13);
  EXPECT_EQ(code_of([] { nk::gamma(-2.0); }), ErrorCode::PoleError);
}
