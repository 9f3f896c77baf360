#include "snwit/specbounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snwit/errors.hpp"

namespace snwit {

std::string_view to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::kFrobenius: return "frobenius";
    case BoundMethod::kLedermann: return "ledermann";
    case BoundMethod::kOstrowski: return "ostrowski";
    case BoundMethod::kBrauer: return "brauer";
  }
  return "unknown";
}

void require_nonnegative_square(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError("expected a non-empty square matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!(m(i, j) >= 0.0) || !std::isfinite(m(i, j))) {
        throw DomainError("matrix entry (" + std::to_string(i) + ", " + std::to_string(j) +
                          ") is negative or not finite");
      }
}

RowSumStats row_sum_stats(const Eigen::MatrixXd& m) {
  require_nonnegative_square(m);
  RowSumStats stats;
  stats.row_sums.resize(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) stats.row_sums[static_cast<std::size_t>(r)] = m.row(r).sum();
  const auto [lo, hi] = std::minmax_element(stats.row_sums.begin(), stats.row_sums.end());
  stats.p = *lo;
  stats.P = *hi;
  stats.m = m.minCoeff();
  return stats;
}

namespace {

double power_iteration(const Eigen::MatrixXd& m) {
  // Shifted by I so a periodic irreducible matrix still converges.
  const Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(m.rows(), m.cols());
  Eigen::VectorXd x = Eigen::VectorXd::Ones(m.rows());
  double estimate = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd y = shifted * x;
    const double norm = y.lpNorm<Eigen::Infinity>();
    if (norm == 0.0) return 0.0;
    y /= norm;
    const double next = norm - 1.0;
    const bool done = std::abs(next - estimate) <= 1e-14 * std::max(1.0, std::abs(next));
    estimate = next;
    x = y;
    if (done) break;
  }
  return estimate;
}

bool row_sums_equal(const RowSumStats& s) { return s.P - s.p < kEqualRowSumTolerance; }

}  // namespace

double spectral_radius(const Eigen::MatrixXd& m) {
  require_nonnegative_square(m);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) return power_iteration(m);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

BoundPair frobenius_bounds(const Eigen::MatrixXd& m) {
  const RowSumStats s = row_sum_stats(m);
  if (row_sums_equal(s)) return {s.P, s.P, BoundMethod::kFrobenius};
  return {s.p, s.P, BoundMethod::kFrobenius};
}

BoundPair ledermann_bounds(const Eigen::MatrixXd& m) {
  const RowSumStats s = row_sum_stats(m);
  if (row_sums_equal(s)) return {s.P, s.P, BoundMethod::kLedermann};
  if (s.m == 0.0) return {s.p, s.P, BoundMethod::kLedermann};
  // The largest ratio P_r / P_s over P_r < P_s sits between neighbouring distinct sums.
  std::vector<double> sums = s.row_sums;
  std::sort(sums.begin(), sums.end());
  double delta = 0.0;
  for (std::size_t i = 1; i < sums.size(); ++i)
    if (sums[i - 1] < sums[i]) delta = std::max(delta, sums[i - 1] / sums[i]);
  const double root = std::sqrt(delta);
  return {s.p + s.m * (1.0 / root - 1.0), s.P - s.m * (1.0 - root), BoundMethod::kLedermann};
}

BoundPair ostrowski_bounds(const Eigen::MatrixXd& m) {
  const RowSumStats s = row_sum_stats(m);
  if (row_sums_equal(s)) return {s.P, s.P, BoundMethod::kOstrowski};
  if (s.p == s.m) return {s.p, s.P - s.m, BoundMethod::kOstrowski};
  const double sigma = std::sqrt((s.p - s.m) / (s.P - s.m));
  return {s.p + s.m * (1.0 / sigma - 1.0), s.P - s.m * (1.0 - sigma), BoundMethod::kOstrowski};
}

double brauer_upper(double P, double p, double m) {
  if (m == 0.0 || P - p < kEqualRowSumTolerance) return P;
  const double denom = P - 2.0 * m + std::sqrt(std::max(0.0, P * P - 4.0 * m * (P - p)));
  if (denom <= 0.0) return P - m;
  // 1/g written out so that p = m (1/g = 0) needs no special division.
  const double inv_g = 2.0 * (p - m) / denom;
  return P - m * (1.0 - inv_g);
}

BoundPair brauer_bounds(const Eigen::MatrixXd& m) {
  const RowSumStats s = row_sum_stats(m);
  if (row_sums_equal(s)) return {s.P, s.P, BoundMethod::kBrauer};
  if (s.m == 0.0) return {s.p, s.P, BoundMethod::kBrauer};
  // Brauer's h uses p^2 under the root.
  const double h = (-s.p + 2.0 * s.m + std::sqrt(s.p * s.p + 4.0 * s.m * (s.P - s.p))) / (2.0 * s.m);
  return {s.p + s.m * (h - 1.0), brauer_upper(s.P, s.p, s.m), BoundMethod::kBrauer};
}

std::vector<BoundPair> all_bounds(const Eigen::MatrixXd& m) {
  return {frobenius_bounds(m), ledermann_bounds(m), ostrowski_bounds(m), brauer_bounds(m)};
}

}  // namespace snwit
