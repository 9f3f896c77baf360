#pragma once

// Schmidt-number witnesses built from operator Schmidt coefficients.
//
// For a Hermitian target X and a Schmidt-rank bound k, the operator
// c * I - X is nonnegative on every state of Schmidt number <= k whenever
// c >= max over such states of <X>. That maximum is bounded above by the
// largest eigenvalue over a family of k x k "arrangement" matrices of the
// coefficients mu_i of X; each arrangement fixes one admissible descending
// ordering of the products s_i s_j of a Schmidt vector. The row-sum bounds
// theta <= zeta <= eta <= P of the canonical arrangement give closed-form
// upper bounds for every k.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "snwit/optim.hpp"
#include "snwit/osd.hpp"
#include "snwit/qstate.hpp"

namespace snwit {

/// k x k array of 1-based mu subscripts, row-major.
class ArrangementPattern {
 public:
  ArrangementPattern(std::size_t k, std::vector<std::size_t> indices);
  ArrangementPattern(std::initializer_list<std::initializer_list<std::size_t>> rows);

  std::size_t k() const noexcept { return k_; }
  /// 0-based row and column.
  std::size_t at(std::size_t row, std::size_t col) const { return indices_[row * k_ + col]; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

  friend bool operator==(const ArrangementPattern&, const ArrangementPattern&) = default;

 private:
  std::size_t k_;
  std::vector<std::size_t> indices_;
};

/// A pattern realized on a spectrum: values(i, j) = mu[pattern.at(i, j)].
struct ArrangementMatrix {
  ArrangementPattern pattern;
  Eigen::MatrixXd values;
};

/// Pattern induced by s_1^2 >= s_1 s_2 = s_2 s_1 >= ... >= s_1 s_k >= s_2^2 >= ... >= s_k^2.
ArrangementPattern canonical_pattern(std::size_t k);
ArrangementMatrix realize(const ArrangementPattern& pattern, const OSCSpectrum& mu);
ArrangementMatrix canonical_matrix(const OSCSpectrum& mu, std::size_t k);

/// Every admissible pattern for k in {2, 3, 4}, canonical first.
std::vector<ArrangementPattern> arrangement_set(std::size_t k);

/// Largest eigenvalue of (M + M^T) / 2.
double symmetrized_max_eigenvalue(const ArrangementMatrix& m);
/// Perron root of M itself, without symmetrization. Never exceeds the
/// symmetrized value, so it is a diagnostic only and not a witness coefficient.
double perron_root(const ArrangementMatrix& m);

/// Exact coefficient lambda_{k+1} for k in {2, 3, 4}: max over arrangement_set(k)
/// of the symmetrized largest eigenvalue (closed form for k = 2).
double lambda_exact(const OSCSpectrum& mu, std::size_t k);
/// Closed form for k = 2.
double lambda3_closed_form(const OSCSpectrum& mu);
/// Max over arrangement_set(k) (or the canonical matrix alone) of the unsymmetrized Perron root.
double lambda_perron(const OSCSpectrum& mu, std::size_t k, bool canonical_only = false);

/// P_{k+1}: sum of the canonical first row.
double first_row_sum(const OSCSpectrum& mu, std::size_t k);
/// p_{k+1}: sum of the canonical last row.
double last_row_sum(const OSCSpectrum& mu, std::size_t k);
double theta(const OSCSpectrum& mu, std::size_t k);
double zeta(const OSCSpectrum& mu, std::size_t k);
double eta(const OSCSpectrum& mu, std::size_t k);

struct WitnessCoefficients {
  std::size_t target_sn;  ///< k + 1
  std::optional<double> lambda;
  std::optional<double> lambda_numeric;
  double theta;
  double zeta;
  double eta;
  double big_p;

  /// lambda_numeric <= lambda <= theta <= zeta <= eta <= P with the given slack.
  bool satisfies_chain(double slack = 1e-9) const;
  /// Human-readable first violation, empty when the chain holds.
  std::string chain_violation(double slack = 1e-9) const;
};

struct CoefficientOptions {
  bool with_numeric = false;
  OptimOptions optim{};
};

/// lambda_exact when k <= 4; lambda_numeric when requested or when k >= 5.
/// `rng` is consumed only by the numeric maximizer.
WitnessCoefficients coefficients(const OSCSpectrum& mu, std::size_t k, Rng& rng,
                                 const CoefficientOptions& options = {});
WitnessCoefficients coefficients(const BipartiteState& x, std::size_t k, Rng& rng,
                                 const CoefficientOptions& options = {});

class WitnessMethod {
 public:
  enum class Kind { kLambda, kTheta, kZeta, kEta, kBigP, kMu1, kFixed };

  constexpr WitnessMethod(Kind kind) : kind_(kind) {}  // NOLINT(google-explicit-constructor)
  static WitnessMethod fixed(double c);
  /// Accepts lambda, theta, zeta, eta, P (or bigP), mu1, fixed:<c> or fixed(<c>);
  /// <c> may be a fraction such as 3/4.
  static WitnessMethod parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double fixed_value() const noexcept { return fixed_; }
  std::string name() const;

 private:
  Kind kind_;
  double fixed_ = 0.0;
};

/// coefficient * I - target; certifies Schmidt number >= target_sn when its
/// expectation is negative.
struct SchmidtWitness {
  double coefficient;
  BipartiteState target;
  std::size_t target_sn;
  WitnessMethod method;
};

/// Witness for Schmidt number k + 1 from target X. mu1 with k = 1 is the plain
/// OSD entanglement witness mu_1 I - X.
SchmidtWitness build_witness(const BipartiteState& x, std::size_t k, WitnessMethod method);

/// Tr(W rho) = coefficient - Tr(X rho) for a unit-trace rho.
double evaluate_witness(const SchmidtWitness& w, const BipartiteState& rho);

/// k / n: the largest fidelity with |phi+_n> over states of Schmidt number <= k.
double fidelity_bound(std::size_t k, std::size_t n);

}  // namespace snwit
