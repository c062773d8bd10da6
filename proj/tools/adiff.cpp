// adiff: floor-bounded antidifferences, particular solutions of factored
// difference equations, and identity verification from the command line.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "adiff/cli/commands.hpp"

namespace {

using namespace adiff::cli;

const std::map<std::string, Format> kFormats = {{"csv", Format::Csv}, {"json", Format::Json}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floor-bounded indefinite sums and particular solutions of difference equations"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  int code = kExitOk;

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "resolvent sum of f for y(t+h) - lambda y(t) = f(t)");
  eval_cmd->add_option("--expr", eval.expr, "f as an expression in t")->required();
  eval_cmd->add_option("--t", eval.t, "evaluation point")->required();
  eval_cmd->add_option("--lambda", eval.lambda, "complex lambda, e.g. 2, -1i, 0.5+0.5i")->capture_default_str();
  eval_cmd->add_option("--h", eval.h, "positive shift")->capture_default_str();
  eval_cmd->add_option("--format", eval.format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
  eval_cmd->add_option("--budget", eval.budget, "maximum number of terms");
  eval_cmd->callback([&] { code = cmd_eval(eval, std::cout, std::cerr); });

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "particular solution of prod (E^h - lambda I) y = f");
  solve_cmd->add_option("--factors", solve.factors, "factor list \"h:lambda;h:lambda;...\"")->required();
  solve_cmd->add_option("--expr", solve.expr, "f as an expression in t")->required();
  solve_cmd->add_option("--t", solve.t, "evaluation point")->required();
  solve_cmd->add_option("--format", solve.format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
  solve_cmd->add_option("--budget", solve.budget, "maximum number of nested-sum terms");
  solve_cmd->callback([&] { code = cmd_solve(solve, std::cout, std::cerr); });

  SumOptions sum;
  auto* sum_cmd = app.add_subcommand("sum", "definite sum f(from) + ... + f(to)");
  sum_cmd->add_option("--expr", sum.expr, "f as an expression in t")->required();
  sum_cmd->add_option("--from", sum.from, "first index")->required();
  sum_cmd->add_option("--to", sum.to, "last index")->required();
  sum_cmd->callback([&] { code = cmd_sum(sum, std::cout, std::cerr); });

  TableOptions table;
  std::string out_path;
  const std::map<std::string, TableMode> modes = {
      {"antidiff", TableMode::Antidiff}, {"resolvent", TableMode::Resolvent}, {"solve", TableMode::Solve}};
  auto* table_cmd = app.add_subcommand("table", "tabulate values over a grid");
  table_cmd->add_option("--expr", table.expr, "f as an expression in t")->required();
  table_cmd->add_option("--from", table.from, "grid start")->required();
  table_cmd->add_option("--to", table.to, "grid end (inclusive)")->required();
  table_cmd->add_option("--step", table.step, "grid spacing")->required();
  table_cmd->add_option("--mode", table.mode, "antidiff, resolvent or solve")->transform(CLI::CheckedTransformer(modes));
  table_cmd->add_option("--format", table.format, "csv or json")->transform(CLI::CheckedTransformer(kFormats));
  table_cmd->add_option("--out", out_path, "output file (default: standard output)");
  table_cmd->add_option("--lambda", table.lambda, "lambda for resolvent mode")->capture_default_str();
  table_cmd->add_option("--h", table.h, "shift for resolvent mode")->capture_default_str();
  table_cmd->add_option("--factors", table.factors, "factor list for solve mode")->capture_default_str();
  table_cmd->add_option("--budget", table.budget, "maximum number of terms");
  table_cmd->callback([&] {
    if (!out_path.empty()) table.out_path = out_path;
    code = cmd_table(table, std::cout, std::cerr);
  });

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "numerically verify summation identities");
  verify_cmd->add_option("--identity", verify.identity, "identity name or 'all'")->capture_default_str();
  verify_cmd->add_option("--samples", verify.samples, "random samples per identity")->capture_default_str();
  verify_cmd->add_option("--tol", verify.tol, "pass threshold on the largest residual")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "random seed")->capture_default_str();
  verify_cmd->callback([&] { code = cmd_verify(verify, std::cout, std::cerr); });

  InequalityOptions inequality;
  const std::map<std::string, adiff::ineq::Direction> directions = {{"geq", adiff::ineq::Direction::Geq},
                                                                    {"leq", adiff::ineq::Direction::Leq}};
  auto* ineq_cmd = app.add_subcommand("inequality", "build and check a solution of y(t+h) - lambda y(t) >= 0 or <= 0");
  ineq_cmd->add_option("--h", inequality.h, "positive shift")->capture_default_str();
  ineq_cmd->add_option("--lambda", inequality.lambda, "nonzero real lambda")->required();
  ineq_cmd->add_option("--direction", inequality.direction, "geq or leq")
      ->required()
      ->transform(CLI::CheckedTransformer(directions));
  ineq_cmd->add_option("--mu", inequality.mu, "periodic (lambda>0) or antiperiodic (lambda<0) part")->capture_default_str();
  ineq_cmd->add_option("--slack", inequality.slack, "sign-constrained forcing term")->capture_default_str();
  ineq_cmd->add_option("--from", inequality.from, "sample range start")->capture_default_str();
  ineq_cmd->add_option("--to", inequality.to, "sample range end")->capture_default_str();
  ineq_cmd->add_option("--samples", inequality.samples, "number of sample points")->capture_default_str();
  ineq_cmd->callback([&] { code = cmd_inequality(inequality, std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  return code;
}
