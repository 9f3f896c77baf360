#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snwit_cli/cli.hpp"

namespace snwit::cli {

namespace {

/// Adds mutually exclusive `--<prefix>builtin` / `--<prefix>input` options, one of them required.
void add_source(CLI::App& app, StateSource& source, const std::string& prefix, const std::string& what) {
  auto* group = app.add_option_group(prefix.empty() ? "state" : prefix + "state");
  group->add_option("--" + prefix + "builtin", source.builtin,
                    "Built-in " + what + ": rho0, rho_family:K, maxmixed:D or maxent:D");
  group->add_option("--" + prefix + "input", source.input, what + " file (JSON)");
  group->require_option(1);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schmidt-number witness coefficients from operator Schmidt decompositions", "snwit"};
  app.require_subcommand(1);

  OscOptions osc;
  std::string osc_csv;
  auto* osc_cmd = app.add_subcommand("osc", "Print the operator Schmidt coefficients of a state");
  add_source(*osc_cmd, osc.source, "", "state");
  osc_cmd->add_option("--out", osc_csv, "Also write the spectrum as CSV (- for stdout)");

  CoeffsOptions coeffs;
  std::string coeffs_csv;
  auto* coeffs_cmd = app.add_subcommand("coeffs", "Witness coefficients lambda, theta, zeta, eta and P");
  add_source(*coeffs_cmd, coeffs.source, "", "state");
  coeffs_cmd->add_option("--k", coeffs.k, "Schmidt-rank bound; the witness targets Schmidt number k+1")
      ->required()
      ->check(CLI::Range(2, 64));
  coeffs_cmd->add_flag("--numeric", coeffs.numeric, "Also run the numeric maximizer (always on for k >= 5)");
  coeffs_cmd->add_option("--seed", coeffs.seed, "Seed for the numeric maximizer")->capture_default_str();
  coeffs_cmd->add_option("--restarts", coeffs.restarts, "Numeric maximizer restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  coeffs_cmd->add_option("--out", coeffs_csv, "Write the CSV row here instead of stdout");

  Table1Options table1;
  auto* table1_cmd = app.add_subcommand("table1", "Coefficients of the rho_family states for k = 2..5 as CSV");
  table1_cmd->add_option("--seed", table1.seed, "Seed for the numeric k = 5 entry")->capture_default_str();
  table1_cmd->add_option("--restarts", table1.restarts, "Numeric maximizer restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  EnsembleOptions ensemble;
  std::string ensemble_out = "-";
  bool dirichlet = false;
  bool full_scale = false;
  auto* ensemble_cmd = app.add_subcommand("ensemble", "Coefficients over seeded random mixed states as CSV");
  EnsembleConfig& cfg = ensemble.config;
  ensemble_cmd->add_option("--k", cfg.k, "Schmidt-rank bound")->check(CLI::Range(2, 64))->capture_default_str();
  ensemble_cmd->add_option("--dim", cfg.dim, "Local dimension")->check(CLI::Range(2, 64))->capture_default_str();
  auto* pure_opt = ensemble_cmd->add_option("--pure-count", cfg.n_pure, "Pure states mixed per sample")
                       ->check(CLI::PositiveNumber)
                       ->capture_default_str();
  ensemble_cmd->add_option("--samples", cfg.samples, "Number of samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ensemble_cmd->add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  ensemble_cmd->add_option("--restarts", cfg.restarts, "Numeric maximizer restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ensemble_cmd->add_option("--threads", cfg.threads, "Worker threads (output does not depend on this)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ensemble_cmd->add_option("--schmidt-rank", cfg.schmidt_rank,
                           "Draw constituents of Schmidt rank <= R instead of Haar states (0 = Haar)")
      ->capture_default_str();
  ensemble_cmd->add_flag("--dirichlet", dirichlet, "Flat-Dirichlet mixing weights instead of equal weights");
  ensemble_cmd->add_flag("--full-scale", full_scale, "Use 10000 pure states per sample unless --pure-count is given");
  ensemble_cmd->add_option("--out", ensemble_out, "Output CSV path (- for stdout)")->capture_default_str();

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Row-sum bounds and spectral radius of a nonnegative matrix");
  bounds_cmd->add_option("--input", bounds.input, "Matrix file (JSON)")->required();

  WitnessOptions witness;
  auto* witness_cmd = app.add_subcommand("witness", "Evaluate a Schmidt-number witness on a test state");
  add_source(*witness_cmd, witness.target, "target-", "target operator");
  add_source(*witness_cmd, witness.test, "test-", "test state");
  witness_cmd->add_option("--k", witness.k, "Schmidt-rank bound; certifies Schmidt number k+1")
      ->required()
      ->check(CLI::Range(1, 64));
  witness_cmd->add_option("--method", witness.method, "lambda, theta, zeta, eta, P, mu1 or fixed(c)")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  if (*osc_cmd) {
    if (!osc_csv.empty()) osc.csv_out = osc_csv;
    return cmd_osc(osc, out, err);
  }
  if (*coeffs_cmd) {
    if (!coeffs_csv.empty()) coeffs.csv_out = coeffs_csv;
    return cmd_coeffs(coeffs, out, err);
  }
  if (*table1_cmd) return cmd_table1(table1, out, err);
  if (*ensemble_cmd) {
    ensemble.out = ensemble_out;
    if (dirichlet) cfg.weights = MixingWeights::kDirichlet;
    if (full_scale && pure_opt->count() == 0) cfg.n_pure = 10000;
    return cmd_ensemble(ensemble, out, err);
  }
  if (*bounds_cmd) return cmd_bounds(bounds, out, err);
  return cmd_witness(witness, out, err);
}

}  // namespace snwit::cli
