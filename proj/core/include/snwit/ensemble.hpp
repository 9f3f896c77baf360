#pragma once

// Random-ensemble experiments: one coefficient bundle per sampled mixed
// state, emitted as CSV rows in sample order.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snwit/optim.hpp"
#include "snwit/qstate.hpp"

namespace snwit {

struct EnsembleRecord {
  std::size_t sample_id;
  std::size_t k;
  std::size_t dim;
  std::size_t n_pure;
  std::uint64_t seed;
  std::optional<double> lambda_exact;
  double lambda_numeric;
  double theta;
  double zeta;
  double eta;
  double big_p;
  double purity;
};

struct EnsembleConfig {
  std::size_t k = 3;
  std::size_t dim = 3;
  std::size_t n_pure = 2000;
  std::size_t samples = 50;
  std::uint64_t seed = 1;
  /// 0 draws Haar pure states; r > 0 draws constituents of Schmidt rank <= r.
  std::size_t schmidt_rank = 0;
  /// Mixing weights for Haar draws; ignored when schmidt_rank > 0.
  MixingWeights weights = MixingWeights::kEqual;
  std::size_t restarts = 32;
  std::size_t threads = 1;
};

/// Samples are independent: sample i uses substream(seed, i) for both the
/// state and the optimizer, so results do not depend on `threads`.
/// Throws ValidationError if any record breaks the coefficient chain.
std::vector<EnsembleRecord> run_ensemble(const EnsembleConfig& config);

EnsembleRecord ensemble_sample(const EnsembleConfig& config, std::size_t sample_id);

inline constexpr const char* kEnsembleCsvHeader =
    "sample_id,k,dim,n_pure,seed,lambda_exact,lambda_numeric,theta,zeta,eta,P,purity";

/// %.10g, the fixed float format of every CSV column.
std::string format_real(double x);
std::string to_csv_row(const EnsembleRecord& r);
void write_csv(std::ostream& out, const std::vector<EnsembleRecord>& records);

}  // namespace snwit
