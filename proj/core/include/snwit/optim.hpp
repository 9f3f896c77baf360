#pragma once

// Numeric maximization of F(s) = sum_l mu_l t_l(s), where t(s) are the k^2
// products s_i s_j sorted descending. Its maximum over Schmidt vectors upper
// bounds the witness coefficient for Schmidt number k + 1.

#include <vector>

#include "snwit/osd.hpp"
#include "snwit/qstate.hpp"

namespace snwit {

/// The k^2 products s_i s_j, sorted descending.
struct ProductSpectrum {
  std::vector<double> t;
};

ProductSpectrum product_spectrum(const SchmidtVector& s);

/// F(s); mu is zero-padded to k^2 coefficients.
double eval_F(const OSCSpectrum& mu, const SchmidtVector& s);

struct OptimOptions {
  std::size_t restarts = 32;
  std::size_t max_iterations = 10000;
  double tolerance = 1e-12;
};

struct OptimResult {
  SchmidtVector best_s;
  double best_value;
  std::size_t restarts;    ///< local searches actually run
  std::size_t iterations;  ///< sweeps summed over all local searches
};

/// Multistart pattern search on the squared simplex x_i = s_i^2. Starts from
/// the uniform vector, e_1, and restarts - 2 random draws; the iterate is
/// re-sorted after every accepted move. Ties keep the lowest restart index.
OptimResult maximize_F(const OSCSpectrum& mu, std::size_t k, Rng& rng, const OptimOptions& options = {});

/// Exhaustive search over the ordered squared simplex {x : x_1 >= ... >= x_k,
/// sum x = 1, x_i in (1/resolution) Z}. Test oracle; k <= 3, resolution <= 200.
double grid_oracle(const OSCSpectrum& mu, std::size_t k, std::size_t resolution);

}  // namespace snwit
