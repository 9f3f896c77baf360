#include "snwit/witness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "snwit/errors.hpp"
#include "snwit/specbounds.hpp"

namespace snwit {

namespace {

using Rows = std::initializer_list<std::initializer_list<std::size_t>>;

std::vector<std::size_t> flatten(Rows rows) {
  std::vector<std::size_t> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::size_t isqrt_exact(std::size_t n) {
  auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (r * r != n) throw DimensionError("pattern length " + std::to_string(n) + " is not a perfect square");
  return r;
}

void require_k(std::size_t k, std::size_t min) {
  if (k < min) throw DomainError("Schmidt-rank bound k must be >= " + std::to_string(min));
}

struct RowSums {
  double P;
  double p;
  double m;
};

RowSums canonical_row_sums(const OSCSpectrum& mu, std::size_t k) {
  return {first_row_sum(mu, k), last_row_sum(mu, k), mu.mu(k * k)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Patterns

ArrangementPattern::ArrangementPattern(std::size_t k, std::vector<std::size_t> indices)
    : k_(k), indices_(std::move(indices)) {
  if (k_ < 1 || indices_.size() != k_ * k_) throw DimensionError("arrangement pattern must hold k^2 indices");
  std::vector<bool> seen(k_ * k_ + 1, false);
  for (std::size_t v : indices_) {
    if (v < 1 || v > k_ * k_ || seen[v]) {
      throw ValidationError("arrangement pattern is not a bijection onto 1..k^2");
    }
    seen[v] = true;
  }
}

ArrangementPattern::ArrangementPattern(Rows rows)
    : ArrangementPattern(isqrt_exact(flatten(rows).size()), flatten(rows)) {}

ArrangementPattern canonical_pattern(std::size_t k) {
  require_k(k, 1);
  std::vector<std::size_t> idx(k * k);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return idx[(i - 1) * k + (j - 1)]; };
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t offset = (i - 1) * (2 * k - i + 1);
    at(i, i) = offset + 1;
    for (std::size_t j = i + 1; j <= k; ++j) {
      at(i, j) = offset + 2 * (j - i);
      at(j, i) = offset + 2 * (j - i) + 1;
    }
  }
  return ArrangementPattern(k, std::move(idx));
}

ArrangementMatrix realize(const ArrangementPattern& pattern, const OSCSpectrum& mu) {
  const std::size_t k = pattern.k();
  Eigen::MatrixXd values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mu.mu(pattern.at(i, j));
  return {pattern, std::move(values)};
}

ArrangementMatrix canonical_matrix(const OSCSpectrum& mu, std::size_t k) {
  return realize(canonical_pattern(k), mu);
}

std::vector<ArrangementPattern> arrangement_set(std::size_t k) {
  switch (k) {
    case 2:
      return {ArrangementPattern{{1, 2}, {3, 4}}};
    case 3:
      return {ArrangementPattern{{1, 2, 4}, {3, 6, 7}, {5, 8, 9}},
              ArrangementPattern{{1, 2, 5}, {3, 4, 7}, {6, 8, 9}}};
    case 4:
      // The twelve orderings of the products s_i s_j for k = 4.
      return {
          ArrangementPattern{{1, 2, 4, 6}, {3, 8, 9, 11}, {5, 10, 13, 14}, {7, 12, 15, 16}},
          ArrangementPattern{{1, 2, 4, 6}, {3, 8, 9, 12}, {5, 10, 11, 14}, {7, 13, 15, 16}},
          ArrangementPattern{{1, 2, 4, 10}, {3, 6, 7, 12}, {5, 8, 9, 14}, {11, 13, 15, 16}},
          ArrangementPattern{{1, 2, 5, 10}, {3, 4, 7, 12}, {6, 8, 9, 14}, {11, 13, 15, 16}},
          ArrangementPattern{{1, 2, 4, 9}, {3, 6, 7, 12}, {5, 8, 11, 14}, {10, 13, 15, 16}},
          ArrangementPattern{{1, 2, 5, 9}, {3, 4, 7, 12}, {6, 8, 11, 14}, {10, 13, 15, 16}},
          ArrangementPattern{{1, 2, 4, 9}, {3, 6, 7, 11}, {5, 8, 13, 14}, {10, 12, 15, 16}},
          ArrangementPattern{{1, 2, 5, 9}, {3, 4, 7, 11}, {6, 8, 13, 14}, {10, 12, 15, 16}},
          ArrangementPattern{{1, 2, 4, 7}, {3, 6, 9, 12}, {5, 10, 11, 14}, {8, 13, 15, 16}},
          ArrangementPattern{{1, 2, 5, 7}, {3, 4, 9, 12}, {6, 10, 11, 14}, {8, 13, 15, 16}},
          ArrangementPattern{{1, 2, 4, 7}, {3, 6, 9, 11}, {5, 10, 13, 14}, {8, 12, 15, 16}},
          ArrangementPattern{{1, 2, 5, 7}, {3, 4, 9, 11}, {6, 10, 13, 14}, {8, 12, 15, 16}},
      };
    default:
      throw UnsupportedError("no arrangement enumeration for k = " + std::to_string(k) +
                             "; use the numeric maximizer");
  }
}

// ---------------------------------------------------------------------------
// Exact coefficients

double symmetrized_max_eigenvalue(const ArrangementMatrix& m) {
  const Eigen::MatrixXd sym = 0.5 * (m.values + m.values.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double perron_root(const ArrangementMatrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m.values, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double lambda3_closed_form(const OSCSpectrum& mu) {
  const double a = mu.mu(1);
  const double d = mu.mu(4);
  const double b = mu.mu(2) + mu.mu(3);
  return 0.5 * (a + d + std::sqrt((a - d) * (a - d) + b * b));
}

double lambda_exact(const OSCSpectrum& mu, std::size_t k) {
  if (k == 2) return lambda3_closed_form(mu);
  double best = 0.0;
  for (const auto& pattern : arrangement_set(k)) best = std::max(best, symmetrized_max_eigenvalue(realize(pattern, mu)));
  return best;
}

double lambda_perron(const OSCSpectrum& mu, std::size_t k, bool canonical_only) {
  if (canonical_only || k < 2 || k > 4) return perron_root(canonical_matrix(mu, k));
  double best = 0.0;
  for (const auto& pattern : arrangement_set(k)) best = std::max(best, perron_root(realize(pattern, mu)));
  return best;
}

// ---------------------------------------------------------------------------
// Row-sum bounds

double first_row_sum(const OSCSpectrum& mu, std::size_t k) {
  require_k(k, 1);
  double sum = mu.mu(1);
  for (std::size_t j = 1; j < k; ++j) sum += mu.mu(2 * j);
  return sum;
}

double last_row_sum(const OSCSpectrum& mu, std::size_t k) {
  require_k(k, 1);
  double sum = mu.mu(k * k);
  for (std::size_t j = 1; j < k; ++j) {
    const std::size_t offset = (j - 1) * (2 * k - j + 1);
    sum += mu.mu(offset + 2 * (k - j) + 1);
  }
  return sum;
}

double theta(const OSCSpectrum& mu, std::size_t k) {
  require_k(k, 2);
  const RowSums s = canonical_row_sums(mu, k);
  return brauer_upper(s.P, s.p, s.m);
}

double zeta(const OSCSpectrum& mu, std::size_t k) {
  require_k(k, 2);
  const RowSums s = canonical_row_sums(mu, k);
  if (s.m == 0.0 || s.P <= s.m) return s.P;
  return s.P - s.m * (1.0 - std::sqrt((s.p - s.m) / (s.P - s.m)));
}

double eta(const OSCSpectrum& mu, std::size_t k) {
  require_k(k, 2);
  const RowSums s = canonical_row_sums(mu, k);
  if (s.m == 0.0 || s.P <= 0.0) return s.P;
  return s.P - s.m * (1.0 - std::sqrt(s.p / s.P));
}

// ---------------------------------------------------------------------------
// Coefficient bundle

bool WitnessCoefficients::satisfies_chain(double slack) const { return chain_violation(slack).empty(); }

std::string WitnessCoefficients::chain_violation(double slack) const {
  std::ostringstream out;
  out.precision(12);
  auto check = [&](const char* lo_name, double lo, const char* hi_name, double hi) {
    if (out.tellp() == 0 && !(lo <= hi + slack)) out << lo_name << " = " << lo << " > " << hi_name << " = " << hi;
  };
  if (lambda_numeric && lambda) check("lambda_numeric", *lambda_numeric, "lambda", *lambda);
  if (lambda) {
    check("lambda", *lambda, "theta", theta);
  } else if (lambda_numeric) {
    check("lambda_numeric", *lambda_numeric, "theta", theta);
  }
  check("theta", theta, "zeta", zeta);
  check("zeta", zeta, "eta", eta);
  check("eta", eta, "P", big_p);
  return out.str();
}

WitnessCoefficients coefficients(const OSCSpectrum& mu, std::size_t k, Rng& rng, const CoefficientOptions& options) {
  require_k(k, 2);
  WitnessCoefficients c{};
  c.target_sn = k + 1;
  if (k <= 4) c.lambda = lambda_exact(mu, k);
  if (options.with_numeric || k >= 5) c.lambda_numeric = maximize_F(mu, k, rng, options.optim).best_value;
  c.theta = theta(mu, k);
  c.zeta = zeta(mu, k);
  c.eta = eta(mu, k);
  c.big_p = first_row_sum(mu, k);
  return c;
}

WitnessCoefficients coefficients(const BipartiteState& x, std::size_t k, Rng& rng, const CoefficientOptions& options) {
  return coefficients(osc(x), k, rng, options);
}

// ---------------------------------------------------------------------------
// Witnesses

WitnessMethod WitnessMethod::fixed(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("fixed witness coefficient must be finite and >= 0");
  WitnessMethod m(Kind::kFixed);
  m.fixed_ = c;
  return m;
}

namespace {

double parse_number(std::string_view text) {
  const auto parse_one = [](std::string_view t) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      throw ParseError("invalid number '" + std::string(t) + "'");
    }
    return v;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double den = parse_one(text.substr(slash + 1));
    if (den == 0.0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return parse_one(text.substr(0, slash)) / den;
  }
  return parse_one(text);
}

}  // namespace

WitnessMethod WitnessMethod::parse(std::string_view text) {
  if (text == "lambda") return Kind::kLambda;
  if (text == "theta") return Kind::kTheta;
  if (text == "zeta") return Kind::kZeta;
  if (text == "eta") return Kind::kEta;
  if (text == "P" || text == "bigP") return Kind::kBigP;
  if (text == "mu1") return Kind::kMu1;
  if (text.starts_with("fixed:")) return fixed(parse_number(text.substr(6)));
  if (text.starts_with("fixed(") && text.ends_with(")")) return fixed(parse_number(text.substr(6, text.size() - 7)));
  throw ParseError("unknown witness method '" + std::string(text) + "'");
}

std::string WitnessMethod::name() const {
  switch (kind_) {
    case Kind::kLambda: return "lambda";
    case Kind::kTheta: return "theta";
    case Kind::kZeta: return "zeta";
    case Kind::kEta: return "eta";
    case Kind::kBigP: return "P";
    case Kind::kMu1: return "mu1";
    case Kind::kFixed: {
      std::ostringstream out;
      out.precision(10);
      out << "fixed(" << fixed_ << ")";
      return out.str();
    }
  }
  return "unknown";
}

SchmidtWitness build_witness(const BipartiteState& x, std::size_t k, WitnessMethod method) {
  require_k(k, 1);
  const OSCSpectrum mu = osc(x);
  double c = 0.0;
  switch (method.kind()) {
    case WitnessMethod::Kind::kLambda:
      if (k >= 5) {
        throw UnsupportedError("exact lambda is only available for k <= 4; use theta, zeta, eta or P");
      }
      c = (k == 1) ? mu.mu(1) : lambda_exact(mu, k);
      break;
    case WitnessMethod::Kind::kTheta: c = theta(mu, k); break;
    case WitnessMethod::Kind::kZeta: c = zeta(mu, k); break;
    case WitnessMethod::Kind::kEta: c = eta(mu, k); break;
    case WitnessMethod::Kind::kBigP: c = first_row_sum(mu, k); break;
    case WitnessMethod::Kind::kMu1: c = mu.mu(1); break;
    case WitnessMethod::Kind::kFixed: c = method.fixed_value(); break;
  }
  return {c, x, k + 1, method};
}

double evaluate_witness(const SchmidtWitness& w, const BipartiteState& rho) {
  if (w.target.dim_a() != rho.dim_a() || w.target.dim_b() != rho.dim_b()) {
    throw DimensionError("witness acts on " + std::to_string(w.target.dim_a()) + "x" +
                         std::to_string(w.target.dim_b()) + " but the state is " + std::to_string(rho.dim_a()) +
                         "x" + std::to_string(rho.dim_b()));
  }
  // Tr(X rho) = sum_ij X_ij rho_ji.
  const Complex overlap = w.target.matrix().cwiseProduct(rho.matrix().transpose()).sum();
  const double scale = std::max(1.0, w.target.matrix().norm());
  if (std::abs(overlap.imag()) > 1e-10 * scale) {
    throw ValidationError("witness expectation has imaginary part " + std::to_string(overlap.imag()));
  }
  return w.coefficient * rho.matrix().trace().real() - overlap.real();
}

double fidelity_bound(std::size_t k, std::size_t n) {
  if (k < 1 || k > n) throw DomainError("fidelity bound needs 1 <= k <= n");
  return static_cast<double>(k) / static_cast<double>(n);
}

}  // namespace snwit
