#pragma once

// Spectral radius of nonnegative square matrices and the classical
// row-sum bounds of Frobenius, Ledermann, Ostrowski and Brauer.

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace snwit {

/// Row sums P_r, their min p and max P, and the smallest entry m.
struct RowSumStats {
  std::vector<double> row_sums;
  double p;
  double P;
  double m;
};

enum class BoundMethod { kFrobenius, kLedermann, kOstrowski, kBrauer };

std::string_view to_string(BoundMethod method);

struct BoundPair {
  double lower;
  double upper;
  BoundMethod method;
};

/// Row sums are treated as equal when P - p falls below this.
inline constexpr double kEqualRowSumTolerance = 1e-14;

/// Throws DomainError on a negative or non-finite entry, DimensionError if not square.
void require_nonnegative_square(const Eigen::MatrixXd& m);

RowSumStats row_sum_stats(const Eigen::MatrixXd& m);

/// Perron root: the largest eigenvalue modulus.
double spectral_radius(const Eigen::MatrixXd& m);

BoundPair frobenius_bounds(const Eigen::MatrixXd& m);
BoundPair ledermann_bounds(const Eigen::MatrixXd& m);
BoundPair ostrowski_bounds(const Eigen::MatrixXd& m);
BoundPair brauer_bounds(const Eigen::MatrixXd& m);

/// Upper half of Brauer's bound from (P, p, m) alone:
/// P - m (1 - 1/g), g = (P - 2m + sqrt(P^2 - 4m(P - p))) / (2(p - m)).
/// The analytic limits are used when m = 0, p = m, or P = p.
double brauer_upper(double P, double p, double m);

/// All four pairs in the order Frobenius, Ledermann, Ostrowski, Brauer.
std::vector<BoundPair> all_bounds(const Eigen::MatrixXd& m);

}  // namespace snwit
