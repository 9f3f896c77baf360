#include "snwit/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "snwit/errors.hpp"

namespace snwit {

namespace {

bool all_finite(const ComplexMatrix& m) {
  return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

void require_dim(std::size_t n, std::size_t min, const char* what) {
  if (n < min) {
    throw DimensionError(std::string(what) + " must be >= " + std::to_string(min) + ", got " +
                         std::to_string(n));
  }
}

Complex standard_complex_normal(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (Eigen::Index c = 0; c < g.cols(); ++c)
    for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = standard_complex_normal(rng);
  return g;
}

std::vector<double> dirichlet_flat(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

Rng substream(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

// ---------------------------------------------------------------------------
// BipartiteState

BipartiteState::BipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexMatrix matrix, Check check)
    : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)), check_(check) {
  require_dim(dim_a_, 2, "dimA");
  require_dim(dim_b_, 2, "dimB");
  const auto n = static_cast<Eigen::Index>(dim_a_ * dim_b_);
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw DimensionError("state matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  if (!all_finite(matrix_)) throw ValidationError("finite: state matrix has NaN or Inf entries");

  const double scale = matrix_.cwiseAbs().maxCoeff();
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tolerance::kHermitian * scale) {
    throw ValidationError("hermitian: max|rho - rho^dagger| = " + std::to_string(asym));
  }
  if (check_ == Check::kHermitianOnly) return;

  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tolerance::kTrace) {
    throw ValidationError("unit trace: Tr(rho) = " + std::to_string(tr));
  }
  const double lowest = min_eigenvalue(matrix_);
  if (lowest < -tolerance::kPsd * tr) {
    throw ValidationError("positive semidefinite: smallest eigenvalue " + std::to_string(lowest));
  }
}

BipartiteState BipartiteState::scaled(double c) const {
  const Check check = (c == 1.0) ? check_ : Check::kHermitianOnly;
  return BipartiteState(dim_a_, dim_b_, matrix_ * c, check);
}

// ---------------------------------------------------------------------------
// PureBipartite / SchmidtVector

PureBipartite::PureBipartite(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes)
    : dim_a_(dim_a), dim_b_(dim_b), amplitudes_(std::move(amplitudes)) {
  require_dim(dim_a_, 1, "dimA");
  require_dim(dim_b_, 1, "dimB");
  if (static_cast<std::size_t>(amplitudes_.size()) != dim_a_ * dim_b_) {
    throw DimensionError("amplitude vector has length " + std::to_string(amplitudes_.size()) +
                         ", expected " + std::to_string(dim_a_ * dim_b_));
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > tolerance::kNorm) {
    throw ValidationError("unit norm: |psi| = " + std::to_string(norm));
  }
}

BipartiteState PureBipartite::projector() const {
  ComplexMatrix p = amplitudes_ * amplitudes_.adjoint();
  return BipartiteState(dim_a_, dim_b_, std::move(p));
}

SchmidtVector::SchmidtVector(std::vector<double> s) : s_(std::move(s)) {
  if (s_.empty()) throw DimensionError("Schmidt vector must be non-empty");
  double sq = 0.0;
  for (std::size_t i = 0; i < s_.size(); ++i) {
    if (!(s_[i] >= 0.0)) throw ValidationError("Schmidt coefficients must be nonnegative");
    if (i > 0 && s_[i] > s_[i - 1]) throw ValidationError("Schmidt coefficients must be descending");
    sq += s_[i] * s_[i];
  }
  if (std::abs(sq - 1.0) > tolerance::kSchmidtNorm) {
    throw ValidationError("Schmidt coefficients must have unit square sum, got " + std::to_string(sq));
  }
}

SchmidtVector SchmidtVector::normalized(std::vector<double> s) {
  for (auto& x : s) x = std::abs(x);
  std::sort(s.begin(), s.end(), std::greater<>());
  double sq = 0.0;
  for (double x : s) sq += x * x;
  if (!(sq > 0.0)) throw DomainError("cannot normalize a zero Schmidt vector");
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& x : s) x *= inv;
  return SchmidtVector(std::move(s));
}

SchmidtVector SchmidtVector::uniform(std::size_t k) {
  require_dim(k, 1, "k");
  return SchmidtVector(std::vector<double>(k, 1.0 / std::sqrt(static_cast<double>(k))));
}

SchmidtVector SchmidtVector::basis(std::size_t k) {
  require_dim(k, 1, "k");
  std::vector<double> s(k, 0.0);
  s[0] = 1.0;
  return SchmidtVector(std::move(s));
}

// ---------------------------------------------------------------------------
// Named states

PureBipartite max_entangled(std::size_t n) {
  require_dim(n, 2, "n");
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(n * n));
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) psi(static_cast<Eigen::Index>(i * n + i)) = amp;
  return PureBipartite(n, n, std::move(psi));
}

PureBipartite product_basis_state(std::size_t dim_a, std::size_t dim_b, std::size_t i, std::size_t j) {
  if (i >= dim_a || j >= dim_b) throw DimensionError("basis index out of range");
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(dim_a * dim_b));
  psi(static_cast<Eigen::Index>(i * dim_b + j)) = 1.0;
  return PureBipartite(dim_a, dim_b, std::move(psi));
}

namespace {

// 1/2 |phi_n+><phi_n+| + 1/4 (|ab>+|ba>)(<ab|+<ba|) on d (x) d, |phi_n+> over the first n levels.
BipartiteState half_phi_plus_quarter_pair(std::size_t d, std::size_t n, std::size_t a, std::size_t b) {
  const auto dim = static_cast<Eigen::Index>(d * d);
  ComplexVector phi = ComplexVector::Zero(dim);
  for (std::size_t i = 0; i < n; ++i) phi(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(n));
  ComplexVector pair = ComplexVector::Zero(dim);
  pair(static_cast<Eigen::Index>(a * d + b)) += 1.0;
  pair(static_cast<Eigen::Index>(b * d + a)) += 1.0;
  ComplexMatrix rho = 0.5 * phi * phi.adjoint() + 0.25 * pair * pair.adjoint();
  return BipartiteState(d, d, std::move(rho));
}

}  // namespace

BipartiteState rho0() { return half_phi_plus_quarter_pair(4, 3, 2, 3); }

BipartiteState rho_family(std::size_t k) {
  require_dim(k, 2, "k");
  return half_phi_plus_quarter_pair(k, k, k - 2, k - 1);
}

BipartiteState maximally_mixed(std::size_t d) {
  require_dim(d, 2, "d");
  const auto n = static_cast<Eigen::Index>(d * d);
  return BipartiteState(d, d, ComplexMatrix::Identity(n, n) / static_cast<double>(n));
}

PureBipartite schmidt_form_state(const SchmidtVector& s, const ComplexMatrix& u, const ComplexMatrix& v) {
  const auto k = static_cast<Eigen::Index>(s.size());
  if (u.rows() != u.cols() || v.rows() != v.cols()) throw DimensionError("local unitaries must be square");
  if (k > u.cols() || k > v.cols()) throw DimensionError("Schmidt rank exceeds local dimension");
  const auto da = static_cast<std::size_t>(u.rows());
  const auto db = static_cast<std::size_t>(v.rows());
  // Amplitude matrix A = U_k diag(s) V_k^T, then row-major flatten.
  ComplexMatrix a = ComplexMatrix::Zero(u.rows(), v.rows());
  for (Eigen::Index i = 0; i < k; ++i) a += s[static_cast<std::size_t>(i)] * u.col(i) * v.col(i).transpose();
  ComplexVector psi(static_cast<Eigen::Index>(da * db));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      psi(static_cast<Eigen::Index>(i * db + j)) = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  psi /= psi.norm();  // absorbs rounding from the unitaries
  return PureBipartite(da, db, std::move(psi));
}

// ---------------------------------------------------------------------------
// Random generation

ComplexVector haar_vector(std::size_t n, Rng& rng) {
  require_dim(n, 1, "n");
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = standard_complex_normal(rng);
  return v / v.norm();
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
  require_dim(n, 1, "n");
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(g.rows(), g.cols());
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

PureBipartite haar_pure(std::size_t dim_a, std::size_t dim_b, Rng& rng) {
  return PureBipartite(dim_a, dim_b, haar_vector(dim_a * dim_b, rng));
}

SchmidtVector random_schmidt_vector(std::size_t k, Rng& rng) {
  require_dim(k, 1, "k");
  std::vector<double> squares = dirichlet_flat(k, rng);
  for (auto& x : squares) x = std::sqrt(x);
  return SchmidtVector::normalized(std::move(squares));
}

BipartiteState random_mixed(std::size_t d, std::size_t n_pure, Rng& rng, MixingWeights weights) {
  require_dim(d, 2, "d");
  require_dim(n_pure, 1, "nPure");
  const auto n = static_cast<Eigen::Index>(d * d);
  std::vector<double> w = (weights == MixingWeights::kEqual)
                              ? std::vector<double>(n_pure, 1.0 / static_cast<double>(n_pure))
                              : dirichlet_flat(n_pure, rng);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n_pure; ++i) {
    const ComplexVector psi = haar_vector(d * d, rng);
    rho.noalias() += w[i] * psi * psi.adjoint();
  }
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return BipartiteState(d, d, std::move(rho));
}

BipartiteState random_sn_bounded(std::size_t d, std::size_t k, std::size_t n_pure, Rng& rng) {
  require_dim(d, 2, "d");
  require_dim(n_pure, 1, "nPure");
  if (k < 1 || k > d) {
    throw DomainError("Schmidt rank bound k = " + std::to_string(k) + " must lie in [1, " + std::to_string(d) + "]");
  }
  const auto n = static_cast<Eigen::Index>(d * d);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n_pure; ++i) {
    const SchmidtVector s = random_schmidt_vector(k, rng);
    const ComplexMatrix u = haar_unitary(d, rng);
    const ComplexMatrix v = haar_unitary(d, rng);
    const ComplexVector psi = schmidt_form_state(s, u, v).amplitudes();
    rho.noalias() += psi * psi.adjoint();
  }
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return BipartiteState(d, d, std::move(rho));
}

BipartiteState random_hermitian(std::size_t dim_a, std::size_t dim_b, Rng& rng) {
  const std::size_t n = dim_a * dim_b;
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  h /= h.norm();
  return BipartiteState(dim_a, dim_b, std::move(h), Check::kHermitianOnly);
}

// ---------------------------------------------------------------------------
// Diagnostics

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  const auto n = static_cast<Eigen::Index>(dim_a * dim_b);
  if (m.rows() != n || m.cols() != n) throw DimensionError("partial transpose: size mismatch");
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t k = 0; k < dim_b; ++k)
      for (std::size_t j = 0; j < dim_a; ++j)
        for (std::size_t l = 0; l < dim_b; ++l)
          out(static_cast<Eigen::Index>(i * dim_b + k), static_cast<Eigen::Index>(j * dim_b + l)) =
              m(static_cast<Eigen::Index>(i * dim_b + l), static_cast<Eigen::Index>(j * dim_b + k));
  return out;
}

ComplexMatrix partial_transpose(const BipartiteState& rho) {
  return partial_transpose(rho.matrix(), rho.dim_a(), rho.dim_b());
}

double purity(const BipartiteState& rho) {
  // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

SchmidtVector schmidt_coefficients(const PureBipartite& psi) {
  const auto da = static_cast<Eigen::Index>(psi.dim_a());
  const auto db = static_cast<Eigen::Index>(psi.dim_b());
  ComplexMatrix a(da, db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j) a(i, j) = psi.amplitudes()(i * db + j);
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  std::vector<double> s(static_cast<std::size_t>(std::min(da, db)), 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) s[static_cast<std::size_t>(i)] = sv(i);
  return SchmidtVector::normalized(std::move(s));
}

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace snwit
