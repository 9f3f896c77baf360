#pragma once

// Operator Schmidt decomposition: realignment, correlation matrices in
// explicit local operator bases, and the coefficient spectrum.

#include <span>
#include <vector>

#include "snwit/qstate.hpp"

namespace snwit {

/// Descending operator Schmidt coefficients mu_1 >= mu_2 >= ... >= 0.
class OSCSpectrum {
 public:
  /// Relative floor below which a coefficient counts as numerically zero.
  static constexpr double kZeroThreshold = 1e-12;

  /// Validates ordering, nonnegativity and sum(mu^2) == source_purity (1e-10).
  OSCSpectrum(std::vector<double> mu, double source_purity);

  /// Spectrum given directly (e.g. a printed list); purity is taken as sum(mu^2).
  static OSCSpectrum from_values(std::vector<double> mu);

  std::size_t size() const noexcept { return mu_.size(); }
  std::span<const double> values() const noexcept { return mu_; }
  double source_purity() const noexcept { return purity_; }

  /// 1-based coefficient mu_i; zero past the stored length.
  double mu(std::size_t i) const;
  /// First n coefficients, zero-padded.
  std::vector<double> padded(std::size_t n) const;

  bool numerically_zero(std::size_t i) const;
  /// Count of coefficients not flagged numerically zero.
  std::size_t numerical_rank() const;

  OSCSpectrum scaled(double c) const;

 private:
  std::vector<double> mu_;
  double purity_;
};

/// Hilbert-Schmidt orthonormal basis of d x d operators.
struct OperatorBasis {
  std::size_t dim;
  std::vector<ComplexMatrix> elements;
};

/// Matrix of overlaps, rows indexed by the A-basis and columns by the B-basis.
struct CorrelationMatrix {
  ComplexMatrix entries;
};

OperatorBasis matrix_unit_basis(std::size_t d);
/// Normalized identity followed by the d^2 - 1 generalized Gell-Mann matrices.
OperatorBasis gellmann_basis(std::size_t d);
/// Tr(E_i^dagger E_j).
ComplexMatrix gram_matrix(const OperatorBasis& basis);

/// R[i*dA + j, k*dB + l] = <i k| rho |j l> (0-based).
CorrelationMatrix realign(const BipartiteState& rho);
/// Entry (k, l) = Tr((C_k^dagger (x) D_l^dagger) rho).
CorrelationMatrix correlation_matrix(const BipartiteState& rho, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b);

std::vector<double> singular_values(const ComplexMatrix& m);

OSCSpectrum osc(const BipartiteState& rho);

/// Full decomposition rho = sum_i mu_i A_i (x) B_i, recovered from the SVD of
/// the realignment. For inspection; witness computations only need mu.
struct OperatorSchmidtDecomposition {
  OSCSpectrum spectrum;
  std::vector<ComplexMatrix> factors_a;
  std::vector<ComplexMatrix> factors_b;
};
OperatorSchmidtDecomposition operator_schmidt_decomposition(const BipartiteState& rho);

/// Sum of operator Schmidt coefficients; above 1 certifies entanglement.
double ccnr_value(const BipartiteState& rho);

}  // namespace snwit
