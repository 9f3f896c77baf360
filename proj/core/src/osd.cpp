#include "snwit/osd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "snwit/errors.hpp"

namespace snwit {

namespace {

constexpr double kPurityTolerance = 1e-10;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

// ---------------------------------------------------------------------------
// OSCSpectrum

OSCSpectrum::OSCSpectrum(std::vector<double> mu, double source_purity)
    : mu_(std::move(mu)), purity_(source_purity) {
  double sq = 0.0;
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    if (!(mu_[i] >= 0.0) || !std::isfinite(mu_[i])) throw ValidationError("OSC must be finite and nonnegative");
    if (i > 0 && mu_[i] > mu_[i - 1]) throw ValidationError("OSC must be descending");
    sq += mu_[i] * mu_[i];
  }
  if (std::abs(sq - purity_) > kPurityTolerance * std::max(1.0, purity_)) {
    throw ValidationError("sum of squared OSC " + std::to_string(sq) + " differs from purity " +
                          std::to_string(purity_));
  }
}

OSCSpectrum OSCSpectrum::from_values(std::vector<double> mu) {
  std::sort(mu.begin(), mu.end(), std::greater<>());
  const double sq = std::inner_product(mu.begin(), mu.end(), mu.begin(), 0.0);
  return OSCSpectrum(std::move(mu), sq);
}

double OSCSpectrum::mu(std::size_t i) const {
  if (i == 0) throw DomainError("OSC indices are 1-based");
  return i <= mu_.size() ? mu_[i - 1] : 0.0;
}

std::vector<double> OSCSpectrum::padded(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  std::copy_n(mu_.begin(), std::min(n, mu_.size()), out.begin());
  return out;
}

bool OSCSpectrum::numerically_zero(std::size_t i) const {
  const double top = mu_.empty() ? 0.0 : mu_.front();
  return mu(i) <= kZeroThreshold * top;
}

std::size_t OSCSpectrum::numerical_rank() const {
  std::size_t r = 0;
  while (r < mu_.size() && !numerically_zero(r + 1)) ++r;
  return r;
}

OSCSpectrum OSCSpectrum::scaled(double c) const {
  if (!(c >= 0.0)) throw DomainError("OSC scale factor must be nonnegative");
  std::vector<double> mu = mu_;
  for (auto& x : mu) x *= c;
  const double sq = std::inner_product(mu.begin(), mu.end(), mu.begin(), 0.0);
  return OSCSpectrum(std::move(mu), sq);
}

// ---------------------------------------------------------------------------
// Bases

OperatorBasis matrix_unit_basis(std::size_t d) {
  if (d < 1) throw DimensionError("basis dimension must be >= 1");
  OperatorBasis basis{d, {}};
  basis.elements.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(idx(d), idx(d));
      e(idx(i), idx(j)) = 1.0;
      basis.elements.push_back(std::move(e));
    }
  return basis;
}

OperatorBasis gellmann_basis(std::size_t d) {
  if (d < 2) throw DimensionError("Gell-Mann basis needs d >= 2");
  OperatorBasis basis{d, {}};
  basis.elements.reserve(d * d);
  const auto n = idx(d);
  basis.elements.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(d)));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Symmetric and antisymmetric off-diagonal generators.
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(idx(j), idx(k)) = inv_sqrt2;
      sym(idx(k), idx(j)) = inv_sqrt2;
      basis.elements.push_back(std::move(sym));
      ComplexMatrix anti = ComplexMatrix::Zero(n, n);
      anti(idx(j), idx(k)) = Complex(0.0, -inv_sqrt2);
      anti(idx(k), idx(j)) = Complex(0.0, inv_sqrt2);
      basis.elements.push_back(std::move(anti));
    }
  // Diagonal generators diag(1, ..., 1, -l, 0, ...), normalized.
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix diag = ComplexMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) diag(idx(j), idx(j)) = norm;
    diag(idx(l), idx(l)) = -static_cast<double>(l) * norm;
    basis.elements.push_back(std::move(diag));
  }
  return basis;
}

ComplexMatrix gram_matrix(const OperatorBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.elements.size());
  ComplexMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = (basis.elements[static_cast<std::size_t>(i)].adjoint() * basis.elements[static_cast<std::size_t>(j)])
                    .trace();
  return g;
}

// ---------------------------------------------------------------------------
// Correlation matrices

CorrelationMatrix realign(const BipartiteState& rho) {
  const std::size_t da = rho.dim_a();
  const std::size_t db = rho.dim_b();
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix r(idx(da * da), idx(db * db));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          r(idx(i * da + j), idx(k * db + l)) = m(idx(i * db + k), idx(j * db + l));
  return {std::move(r)};
}

CorrelationMatrix correlation_matrix(const BipartiteState& rho, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b) {
  if (basis_a.dim != rho.dim_a() || basis_b.dim != rho.dim_b()) {
    throw DimensionError("basis dimensions (" + std::to_string(basis_a.dim) + ", " + std::to_string(basis_b.dim) +
                         ") do not match state dimensions (" + std::to_string(rho.dim_a()) + ", " +
                         std::to_string(rho.dim_b()) + ")");
  }
  // Tr((C^dag (x) D^dag) rho) = sum conj(C_ij) conj(D_kl) R[(i,j),(k,l)]
  //                          = vec(C)^dag R conj(vec(D)), vec row-major.
  const ComplexMatrix r = realign(rho).entries;
  const auto stack = [](const OperatorBasis& basis) {
    const auto d = static_cast<Eigen::Index>(basis.dim);
    ComplexMatrix out(d * d, static_cast<Eigen::Index>(basis.elements.size()));
    for (std::size_t c = 0; c < basis.elements.size(); ++c)
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) out(i * d + j, idx(c)) = basis.elements[c](i, j);
    return out;
  };
  return {stack(basis_a).adjoint() * r * stack(basis_b).conjugate()};
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

OSCSpectrum osc(const BipartiteState& rho) {
  return OSCSpectrum(singular_values(realign(rho).entries), purity(rho));
}

OperatorSchmidtDecomposition operator_schmidt_decomposition(const BipartiteState& rho) {
  const std::size_t da = rho.dim_a();
  const std::size_t db = rho.dim_b();
  const ComplexMatrix r = realign(rho).entries;
  Eigen::BDCSVD<ComplexMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  std::vector<double> mu(sv.data(), sv.data() + sv.size());

  OperatorSchmidtDecomposition out{OSCSpectrum(mu, purity(rho)), {}, {}};
  // R = sum mu_i u_i v_i^dag, and R[(i,j),(k,l)] = A_ij B_kl, so
  // A_i = reshape(u_i), B_i = reshape(conj(v_i)).
  for (Eigen::Index c = 0; c < sv.size(); ++c) {
    ComplexMatrix a(idx(da), idx(da));
    ComplexMatrix b(idx(db), idx(db));
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) a(idx(i), idx(j)) = svd.matrixU()(idx(i * da + j), c);
    for (std::size_t k = 0; k < db; ++k)
      for (std::size_t l = 0; l < db; ++l) b(idx(k), idx(l)) = std::conj(svd.matrixV()(idx(k * db + l), c));
    out.factors_a.push_back(std::move(a));
    out.factors_b.push_back(std::move(b));
  }
  return out;
}

double ccnr_value(const BipartiteState& rho) {
  const OSCSpectrum spec = osc(rho);
  return std::accumulate(spec.values().begin(), spec.values().end(), 0.0);
}

}  // namespace snwit
