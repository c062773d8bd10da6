#pragma once

// Subcommand implementations of the adiff CLI. Each returns a process exit
// code and writes results to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 term budget exceeded, 4 cross-check failure, 5 I/O error.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adiff/antidiff.hpp"
#include "adiff/cli/io.hpp"
#include "adiff/cli/verify.hpp"
#include "adiff/error.hpp"
#include "adiff/expr.hpp"
#include "adiff/inequality.hpp"
#include "adiff/opalgebra.hpp"

namespace adiff::cli {

inline constexpr const char* kBudgetEnv = "ADIFF_TERM_BUDGET";

/// --budget wins over ADIFF_TERM_BUDGET, which wins over the default.
inline ops::TermBudget resolve_budget(std::optional<std::uint64_t> flag, const char* env_value) {
  if (flag) {
    if (*flag == 0) throw Error(ErrorCode::DomainError, "budget must be positive");
    return {*flag};
  }
  if (env_value && *env_value) {
    const std::string text(env_value);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v == 0)
      throw Error(ErrorCode::DomainError, std::string(kBudgetEnv) + " must be a positive integer");
    return {v};
  }
  return {};
}

inline ops::TermBudget resolve_budget(std::optional<std::uint64_t> flag) {
  return resolve_budget(flag, std::getenv(kBudgetEnv));
}

/// Runs `body`, mapping library errors onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::TermBudgetExceeded ? kExitBudget : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

inline double require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::NonPositiveShift, std::string(what) + " must be positive");
  return v;
}

// eval ---------------------------------------------------------------------

struct EvalOptions {
  std::string expr;
  double t = 0.0;
  std::string lambda = "1";
  double h = 1.0;
  Format format = Format::Csv;
  std::optional<std::uint64_t> budget;
};

inline OutputRecord resolvent_record(const expr::Expr& f, double t, Complex lambda, double h) {
  const auto y = resolvent_sum(f, t, lambda, h);
  const Complex next = resolvent_sum(f, t + h, lambda, h).value;
  const double residual = std::abs(next - lambda * y.value - Complex(f(t), 0.0));
  return {t, y.value.real(), y.value.imag(), y.terms_used, residual};
}

inline void check_single_budget(double t, double h, ops::TermBudget budget) {
  const auto n = static_cast<std::uint64_t>(numkit::term_count(t + h, h));
  if (n > budget.max_terms)
    throw Error(ErrorCode::TermBudgetExceeded,
                std::to_string(n) + " terms exceed the budget of " + std::to_string(budget.max_terms));
}

/// Resolvent sum of f at t for y(t+h) - lambda y(t) = f(t), with its residual.
inline int cmd_eval(const EvalOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto f = expr::parse(o.expr);
    const Complex lambda = parse_complex(o.lambda);
    require_nonzero_lambda(lambda);
    require_positive(o.h, "h");
    numkit::require_finite(o.t, "t");
    check_single_budget(o.t, o.h, resolve_budget(o.budget));
    write_records(out, {resolvent_record(f, o.t, lambda, o.h)}, o.format);
    return static_cast<int>(kExitOk);
  });
}

// solve --------------------------------------------------------------------

struct SolveOptions {
  std::string factors;
  std::string expr;
  double t = 0.0;
  Format format = Format::Csv;
  std::optional<std::uint64_t> budget;
};

inline OutputRecord solve_record(const ops::FactoredOperator& op, const expr::Expr& f, double t, ops::TermBudget budget) {
  const Complex y = ops::particular_solution(op, f, t, budget);
  const double residual = ops::verify_particular(op, f, t, budget);
  return {t, y.real(), y.imag(), static_cast<std::int64_t>(ops::estimate_terms(op, t)), residual};
}

/// Particular solution of Phi(E) y = f for a factored operator.
inline int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto op = parse_factors(o.factors);
    const auto f = expr::parse(o.expr);
    numkit::require_finite(o.t, "t");
    write_records(out, {solve_record(op, f, o.t, resolve_budget(o.budget))}, o.format);
    return static_cast<int>(kExitOk);
  });
}

// sum ----------------------------------------------------------------------

struct SumOptions {
  std::string expr;
  std::int64_t from = 0;
  std::int64_t to = 0;
};

inline constexpr double kCrossCheckTolerance = 1e-9;

/// f(from) + ... + f(to) via F(to+1) - F(from), cross-checked by the direct loop.
inline int cmd_sum(const SumOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto f = expr::parse(o.expr);
    const auto sum = definite_sum(f, o.from, o.to);
    if (sum.via_antidifference) {
      double scale = 1.0;
      for (std::int64_t k = 0; k <= o.to; ++k) scale += std::abs(f(static_cast<double>(k)));
      if (!(std::abs(sum.value - sum.direct) <= kCrossCheckTolerance * scale)) {
        err << "error: cross-check failed: F(n+1)-F(m) = " << format_real(sum.value)
            << " but the direct sum is " << format_real(sum.direct) << '\n';
        return static_cast<int>(kExitCrossCheck);
      }
    }
    out << format_real(sum.value) << '\n';
    return static_cast<int>(kExitOk);
  });
}

// table --------------------------------------------------------------------

enum class TableMode { Antidiff, Resolvent, Solve };

struct TableOptions {
  std::string expr;
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  TableMode mode = TableMode::Antidiff;
  Format format = Format::Csv;
  std::optional<std::string> out_path;
  std::string lambda = "1";
  double h = 1.0;
  std::string factors = "1:1";
  std::optional<std::uint64_t> budget;
};

inline constexpr double kMaxTableRows = 1e6;

/// Grid from..to inclusive with spacing `step`.
inline std::vector<double> table_grid(double from, double to, double step) {
  const auto count = static_cast<std::int64_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) grid.push_back(from + static_cast<double>(i) * step);
  return grid;
}

inline int cmd_table(const TableOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (!std::isfinite(o.from) || !std::isfinite(o.to) || !(o.from < o.to)) {
      err << "error: --from must be less than --to\n";
      return kExitInput;
    }
    if (!(o.step > 0.0) || !std::isfinite(o.step)) {
      err << "error: --step must be positive\n";
      return kExitInput;
    }
    if ((o.to - o.from) / o.step >= kMaxTableRows) {
      err << "error: grid has more than " << format_real(kMaxTableRows) << " rows\n";
      return kExitInput;
    }
    const auto f = expr::parse(o.expr);
    const auto budget = resolve_budget(o.budget);
    std::vector<OutputRecord> records;
    switch (o.mode) {
      case TableMode::Antidiff:
        check_single_budget(o.to, 1.0, budget);
        for (double t : table_grid(o.from, o.to, o.step)) {
          const auto F = antidifference(f, t);
          const double residual = std::abs(antidifference(f, t + 1.0).value - F.value - f(t));
          records.push_back({t, F.value, 0.0, F.terms_used, residual});
        }
        break;
      case TableMode::Resolvent: {
        const Complex lambda = parse_complex(o.lambda);
        require_nonzero_lambda(lambda);
        require_positive(o.h, "h");
        check_single_budget(o.to, o.h, budget);
        for (double t : table_grid(o.from, o.to, o.step)) records.push_back(resolvent_record(f, t, lambda, o.h));
        break;
      }
      case TableMode::Solve: {
        const auto op = parse_factors(o.factors);
        for (double t : table_grid(o.from, o.to, o.step)) records.push_back(solve_record(op, f, t, budget));
        break;
      }
    }
    if (o.out_path) {
      std::ofstream file(*o.out_path, std::ios::binary | std::ios::trunc);
      if (!file) {
        err << "error: cannot open '" << *o.out_path << "' for writing\n";
        return kExitIo;
      }
      write_records(file, records, o.format);
      file.flush();
      if (!file) {
        err << "error: failed writing '" << *o.out_path << "'\n";
        return kExitIo;
      }
    } else {
      write_records(out, records, o.format);
    }
    return kExitOk;
  });
}

// verify -------------------------------------------------------------------

struct VerifyOptions {
  std::string identity = "all";
  std::int64_t samples = 200;
  double tol = 1e-8;
  std::uint64_t seed = 42;
};

inline int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (!is_identity_name(o.identity)) {
      err << "error: unknown identity '" << o.identity << "'\n";
      return kExitInput;
    }
    if (o.samples < 1) {
      err << "error: --samples must be at least 1\n";
      return kExitInput;
    }
    if (!(o.tol >= 0.0)) {
      err << "error: --tol must be nonnegative\n";
      return kExitInput;
    }
    bool all_pass = true;
    for (const auto& report : run_verify(o.identity, static_cast<std::size_t>(o.samples), o.tol, o.seed)) {
      out << format_report(report) << '\n';
      all_pass = all_pass && report.pass();
    }
    return all_pass ? kExitOk : kExitVerifyFailed;
  });
}

// inequality ---------------------------------------------------------------

struct InequalityOptions {
  double h = 1.0;
  double lambda = 1.0;
  ineq::Direction direction = ineq::Direction::Geq;
  std::string mu = "0";
  std::string slack = "0";
  double from = 0.0;
  double to = 10.0;
  int samples = 64;
};

inline std::string format_inequality_report(const ineq::InequalityReport& r) {
  return "inequality samples=" + std::to_string(r.samples) + " min_residual=" + format_real(r.min_residual) +
         " max_residual=" + format_real(r.max_residual) +
         " direction_violations=" + std::to_string(r.direction_violations.size()) +
         " sign_violations=" + std::to_string(r.sign_violations.size()) +
         " slack_mismatches=" + std::to_string(r.slack_mismatches.size()) + " pass=" + (r.pass() ? "yes" : "no");
}

inline int cmd_inequality(const InequalityOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    if (!(o.from < o.to) || o.samples < 1) {
      err << "error: need --from < --to and --samples >= 1\n";
      return kExitInput;
    }
    const auto mu = expr::parse(o.mu);
    const auto slack = expr::parse(o.slack);
    const ineq::InequalitySpec spec{o.h, o.lambda, o.direction};
    const ineq::SampleRange range{o.from, o.to, o.samples};
    const auto y = ineq::build_solution(spec, Function(mu, o.mu), Function(slack, o.slack), range);
    const auto points = range.points();
    const auto report = ineq::check_inequality(y, points);
    out << format_inequality_report(report) << '\n';
    return report.pass() ? kExitOk : kExitVerifyFailed;
  });
}

}  // namespace adiff::cli
