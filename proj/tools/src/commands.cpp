#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "snwit/errors.hpp"
#include "snwit/io.hpp"
#include "snwit/osd.hpp"
#include "snwit/specbounds.hpp"
#include "snwit/witness.hpp"
#include "snwit_cli/cli.hpp"

namespace snwit::cli {

namespace {

BipartiteState load(const StateSource& source, Check check = Check::kDensity) {
  // Built-in states are densities, which also satisfy the Hermitian-only check.
  if (!source.builtin.empty()) return builtin_state(source.builtin);
  return read_state_file(source.input, check);
}

std::string label(const StateSource& source) {
  return source.builtin.empty() ? source.input.stem().string() : source.builtin;
}

/// Runs `body`, mapping every library or I/O failure to exit code 2.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    body();
    return kExitOk;
  } catch (const std::exception& e) {
    err << "snwit: error: " << e.what() << '\n';
    return kExitFailure;
  }
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw Error("cannot open '" + path.string() + "' for writing");
  return file;
}

/// Writes to `path`, or to `out` when path is "-".
template <class Emit>
void emit_to(const std::filesystem::path& path, std::ostream& out, Emit&& emit) {
  if (path == "-") {
    emit(out);
    return;
  }
  std::ofstream file = open_output(path);
  emit(file);
  file.flush();
  if (!file) throw Error("failed writing '" + path.string() + "'");
}

std::string optional_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

}  // namespace

int cmd_osc(const OscOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BipartiteState rho = load(options.source);
    const OSCSpectrum mu = osc(rho);
    out << "# operator Schmidt coefficients of " << label(options.source) << " (dimA=" << rho.dim_a()
        << ", dimB=" << rho.dim_b() << ")\n";
    for (std::size_t i = 1; i <= mu.size(); ++i) {
      out << "mu_" << i << ' ' << format_real(mu.mu(i));
      if (mu.numerically_zero(i)) out << "  (numerically zero)";
      out << '\n';
    }
    out << "purity " << format_real(mu.source_purity()) << '\n';
    if (options.csv_out) {
      emit_to(*options.csv_out, out, [&](std::ostream& csv) {
        csv << "index,mu\n";
        for (std::size_t i = 1; i <= mu.size(); ++i) csv << i << ',' << format_real(mu.mu(i)) << '\n';
      });
    }
  });
}

int cmd_coeffs(const CoeffsOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.k < 2) throw DomainError("--k must be >= 2");
    const BipartiteState rho = load(options.source);
    Rng rng = substream(options.seed, 0);
    CoefficientOptions co;
    co.with_numeric = options.numeric;
    co.optim.restarts = options.restarts;
    const WitnessCoefficients c = coefficients(osc(rho), options.k, rng, co);

    out << "# witness coefficients for Schmidt number " << c.target_sn << " (k=" << options.k << ")\n";
    if (c.lambda) out << "lambda         " << format_real(*c.lambda) << '\n';
    if (c.lambda_numeric) {
      out << "lambda_numeric " << format_real(*c.lambda_numeric) << "  (numeric, seed " << options.seed << ", "
          << options.restarts << " restarts)\n";
    }
    out << "theta          " << format_real(c.theta) << '\n'
        << "zeta           " << format_real(c.zeta) << '\n'
        << "eta            " << format_real(c.eta) << '\n'
        << "P              " << format_real(c.big_p) << '\n';

    std::ostringstream row;
    row << label(options.source) << ',' << options.k << ',' << c.target_sn << ',' << optional_real(c.lambda) << ','
        << optional_real(c.lambda_numeric) << ',' << format_real(c.theta) << ',' << format_real(c.zeta) << ','
        << format_real(c.eta) << ',' << format_real(c.big_p) << '\n';
    const std::filesystem::path csv_path = options.csv_out.value_or("-");
    emit_to(csv_path, out, [&](std::ostream& csv) { csv << kCoeffsCsvHeader << '\n' << row.str(); });
  });
}

int cmd_table1(const Table1Options& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << kTable1CsvHeader << '\n';
    for (std::size_t k = 2; k <= 5; ++k) {
      const OSCSpectrum mu = osc(rho_family(k));
      Rng rng = substream(options.seed, k);
      CoefficientOptions co;
      co.optim.restarts = options.restarts;
      const WitnessCoefficients c = coefficients(mu, k, rng, co);
      const bool exact = c.lambda.has_value();
      out << "rho" << k << ',' << format_real(exact ? *c.lambda : *c.lambda_numeric) << ','
          << format_real(c.theta) << ',' << format_real(c.zeta) << ',' << format_real(c.eta) << ','
          << format_real(c.big_p) << ',' << (exact ? "exact" : "numeric") << '\n';
    }
  });
}

int cmd_ensemble(const EnsembleOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.out == "-") {
      write_csv(out, run_ensemble(options.config));
      return;
    }
    // Opened before sampling so an unwritable path fails fast.
    std::ofstream file = open_output(options.out);
    write_csv(file, run_ensemble(options.config));
    file.flush();
    if (!file) throw Error("failed writing '" + options.out.string() + "'");
  });
}

int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Eigen::MatrixXd m = read_matrix_file(options.input);
    const std::vector<BoundPair> pairs = all_bounds(m);
    out << "method,lower,upper\n";
    for (const BoundPair& b : pairs) {
      out << to_string(b.method) << ',' << format_real(b.lower) << ',' << format_real(b.upper) << '\n';
    }
    out << "spectral_radius," << format_real(spectral_radius(m)) << ",\n";
  });
}

int cmd_witness(const WitnessOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BipartiteState target = load(options.target, Check::kHermitianOnly);
    const BipartiteState test = load(options.test);
    if (target.dim_a() != test.dim_a() || target.dim_b() != test.dim_b()) {
      throw ValidationError("target is " + std::to_string(target.dim_a()) + "x" + std::to_string(target.dim_b()) +
                            " but test state is " + std::to_string(test.dim_a()) + "x" +
                            std::to_string(test.dim_b()));
    }
    const SchmidtWitness w = build_witness(target, options.k, WitnessMethod::parse(options.method));
    const double value = evaluate_witness(w, test);
    out << "method " << w.method.name() << '\n'
        << "coefficient " << format_real(w.coefficient) << '\n'
        << "value " << format_real(value) << '\n'
        << "verdict "
        << (value < kCertifyThreshold ? "SN \u2265 " + std::to_string(w.target_sn) + " certified" : "not certified")
        << '\n';
  });
}

}  // namespace snwit::cli
