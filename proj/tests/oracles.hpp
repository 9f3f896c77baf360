#pragma once

// Reference implementations used only by tests. Each is written independently
// of the library code path it checks: explicit loops instead of reshapes,
// JacobiSVD instead of BDCSVD, power iteration instead of an eigensolver,
// and plain enumeration instead of index formulas.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Realigned matrix with rows (i, j) over A and columns (k, l) over B:
/// entry <i k|rho|j l>, built entry by entry.
inline Mat realign_loops(const Mat& rho, std::size_t da, std::size_t db) {
  const auto A = static_cast<Eigen::Index>(da);
  const auto B = static_cast<Eigen::Index>(db);
  Mat r(A * A, B * B);
  for (Eigen::Index i = 0; i < A; ++i)
    for (Eigen::Index j = 0; j < A; ++j)
      for (Eigen::Index k = 0; k < B; ++k)
        for (Eigen::Index l = 0; l < B; ++l) r(i * A + j, k * B + l) = rho(i * B + k, j * B + l);
  return r;
}

/// Descending singular values via JacobiSVD.
inline std::vector<double> svals(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

inline std::vector<double> osc_loops(const Mat& rho, std::size_t da, std::size_t db) {
  return svals(realign_loops(rho, da, db));
}

/// Partial transpose on B, entry by entry.
inline Mat partial_transpose_loops(const Mat& rho, std::size_t da, std::size_t db) {
  Mat out(rho.rows(), rho.cols());
  const auto A = static_cast<Eigen::Index>(da);
  const auto B = static_cast<Eigen::Index>(db);
  for (Eigen::Index i = 0; i < A; ++i)
    for (Eigen::Index k = 0; k < B; ++k)
      for (Eigen::Index j = 0; j < A; ++j)
        for (Eigen::Index l = 0; l < B; ++l) out(i * B + k, j * B + l) = rho(i * B + l, j * B + k);
  return out;
}

/// Spectral radius of a nonnegative matrix by power iteration on M + I
/// (the shift removes periodicity without moving the Perron vector).
inline double power_radius(const Eigen::MatrixXd& m, int iterations = 20000) {
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd shifted = m + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = shifted * x;
    y /= y.norm();
    const bool converged = (y - x).norm() < 1e-15;
    x = y;
    if (converged) break;
  }
  // x is the unit Perron vector, so the Rayleigh quotient is the eigenvalue.
  return x.dot(shifted * x) - 1.0;
}

/// Canonical ordering of the products s_i s_j for a Schmidt vector whose
/// products sort lexicographically: s_1^2, s_1 s_2, s_2 s_1, ..., s_1 s_k,
/// s_k s_1, s_2^2, s_2 s_3, s_3 s_2, ... Returned as a k x k array of
/// 1-based ranks, filled by walking that sequence.
inline std::vector<std::vector<std::size_t>> canonical_ranks(std::size_t k) {
  std::vector<std::vector<std::size_t>> rank(k, std::vector<std::size_t>(k, 0));
  std::size_t next = 1;
  for (std::size_t i = 0; i < k; ++i) {
    rank[i][i] = next++;
    for (std::size_t j = i + 1; j < k; ++j) {
      rank[i][j] = next++;
      rank[j][i] = next++;
    }
  }
  return rank;
}

/// F(s) = sum_l mu_l t_l with t the sorted products; computed from scratch.
inline double f_value(const std::vector<double>& mu, const std::vector<double>& s) {
  std::vector<double> t;
  for (double a : s)
    for (double b : s) t.push_back(a * b);
  std::sort(t.begin(), t.end(), std::greater<>());
  double f = 0.0;
  for (std::size_t l = 0; l < t.size() && l < mu.size(); ++l) f += mu[l] * t[l];
  return f;
}

/// Random search for max F over unit vectors in R^k_{>=0}: uniform samples
/// on the squared simplex followed by local perturbation of the best point.
inline double random_search_max_f(const std::vector<double>& mu, std::size_t k, std::uint64_t seed,
                                  int samples = 20000) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto to_s = [](std::vector<double> x) {
    double sum = 0.0;
    for (double v : x) sum += v;
    for (double& v : x) v = std::sqrt(std::max(v, 0.0) / sum);
    return x;
  };
  std::vector<double> best_x(k, 0.0);
  best_x[0] = 1.0;
  double best = f_value(mu, to_s(best_x));
  for (int n = 0; n < samples; ++n) {
    std::vector<double> x(k);
    for (double& v : x) v = expo(rng);
    const double f = f_value(mu, to_s(x));
    if (f > best) best = f, best_x = x;
  }
  double scale = 0.1;
  for (int n = 0; n < samples; ++n) {
    std::vector<double> x = best_x;
    for (double& v : x) v = std::max(0.0, v + scale * gauss(rng));
    double sum = 0.0;
    for (double v : x) sum += v;
    if (sum == 0.0) continue;
    const double f = f_value(mu, to_s(x));
    if (f > best) best = f, best_x = x;
    if (n % 1000 == 999) scale *= 0.5;
  }
  return best;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// |phi+><phi+| on n (x) n, built from the definition.
inline Mat bell_projector(std::size_t n) {
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N * N);
  for (Eigen::Index i = 0; i < N; ++i) v(i * N + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return v * v.adjoint();
}

}  // namespace oracle
