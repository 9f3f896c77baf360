#pragma once

// Bipartite states: carriers, named constructions, random generation and
// elementary diagnostics.

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace snwit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Random stream. Callers never share one across threads; use substream().
using Rng = std::mt19937_64;

/// Independent stream derived from (master seed, index).
Rng substream(std::uint64_t master_seed, std::uint64_t index);

/// Which invariants a BipartiteState enforces on construction.
enum class Check {
  kDensity,        ///< Hermitian, unit trace, PSD.
  kHermitianOnly,  ///< Hermitian only; used for witness targets X.
};

namespace tolerance {
inline constexpr double kHermitian = 1e-10;  // relative to max |entry|
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-10;  // relative to the trace
inline constexpr double kNorm = 1e-12;
inline constexpr double kSchmidtNorm = 1e-12;
}  // namespace tolerance

/// Hermitian operator on C^dimA (x) C^dimB; a density matrix unless
/// constructed with Check::kHermitianOnly.
class BipartiteState {
 public:
  BipartiteState(std::size_t dim_a, std::size_t dim_b, ComplexMatrix matrix,
                 Check check = Check::kDensity);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return dim_a_ * dim_b_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  bool hermitian_only() const noexcept { return check_ == Check::kHermitianOnly; }

  /// Same operator scaled by c; the result is Hermitian-only unless c == 1.
  BipartiteState scaled(double c) const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexMatrix matrix_;
  Check check_;
};

class PureBipartite {
 public:
  /// Amplitudes are indexed i * dimB + j for |i>|j>. Throws unless normalized.
  PureBipartite(std::size_t dim_a, std::size_t dim_b, ComplexVector amplitudes);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

  /// |psi><psi| as a density state.
  BipartiteState projector() const;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
  ComplexVector amplitudes_;
};

/// Descending nonnegative Schmidt coefficients with unit square sum.
class SchmidtVector {
 public:
  explicit SchmidtVector(std::vector<double> s);

  /// Sorts and renormalizes arbitrary nonnegative input.
  static SchmidtVector normalized(std::vector<double> s);
  static SchmidtVector uniform(std::size_t k);
  static SchmidtVector basis(std::size_t k);

  std::size_t size() const noexcept { return s_.size(); }
  double operator[](std::size_t i) const { return s_[i]; }
  std::span<const double> values() const noexcept { return s_; }

 private:
  std::vector<double> s_;
};

// Named states.
PureBipartite max_entangled(std::size_t n);
/// Example mixed two-ququad state of Schmidt number three.
BipartiteState rho0();
/// k (x) k family: half |phi+><phi+| plus a quarter of the symmetric pair on |k-2,k-1>.
BipartiteState rho_family(std::size_t k);
BipartiteState maximally_mixed(std::size_t d);
PureBipartite product_basis_state(std::size_t dim_a, std::size_t dim_b, std::size_t i, std::size_t j);

/// Sum_i s_i U|i> (x) V|i> on dimA (x) dimB; U and V must be unitary of matching size.
PureBipartite schmidt_form_state(const SchmidtVector& s, const ComplexMatrix& u,
                                 const ComplexMatrix& v);

// Random generation.
enum class MixingWeights { kEqual, kDirichlet };

ComplexVector haar_vector(std::size_t n, Rng& rng);
/// Haar unitary by QR of a complex Gaussian matrix with the phase fix on R's diagonal.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);
PureBipartite haar_pure(std::size_t dim_a, std::size_t dim_b, Rng& rng);
/// Squares uniform on the simplex, sorted descending.
SchmidtVector random_schmidt_vector(std::size_t k, Rng& rng);

BipartiteState random_mixed(std::size_t d, std::size_t n_pure, Rng& rng,
                            MixingWeights weights = MixingWeights::kEqual);
/// Mixture of n_pure pure states of Schmidt rank <= k on d (x) d.
BipartiteState random_sn_bounded(std::size_t d, std::size_t k, std::size_t n_pure, Rng& rng);
/// Hermitian-only operator with i.i.d. Gaussian entries (GUE-like), Frobenius norm 1.
BipartiteState random_hermitian(std::size_t dim_a, std::size_t dim_b, Rng& rng);

// Diagnostics.
ComplexMatrix partial_transpose(const BipartiteState& rho);
/// Transpose on the B factor of a (dimA*dimB)-square matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b);
double purity(const BipartiteState& rho);
SchmidtVector schmidt_coefficients(const PureBipartite& psi);
double min_eigenvalue(const ComplexMatrix& hermitian);

}  // namespace snwit
