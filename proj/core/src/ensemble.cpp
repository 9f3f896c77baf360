#include "snwit/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "snwit/errors.hpp"
#include "snwit/osd.hpp"
#include "snwit/witness.hpp"

namespace snwit {

EnsembleRecord ensemble_sample(const EnsembleConfig& config, std::size_t sample_id) {
  Rng rng = substream(config.seed, sample_id);
  const BipartiteState rho = config.schmidt_rank == 0
                                 ? random_mixed(config.dim, config.n_pure, rng, config.weights)
                                 : random_sn_bounded(config.dim, config.schmidt_rank, config.n_pure, rng);
  CoefficientOptions options;
  options.with_numeric = true;
  options.optim.restarts = config.restarts;
  const OSCSpectrum mu = osc(rho);
  const WitnessCoefficients c = coefficients(mu, config.k, rng, options);

  EnsembleRecord r{};
  r.sample_id = sample_id;
  r.k = config.k;
  r.dim = config.dim;
  r.n_pure = config.n_pure;
  r.seed = config.seed;
  r.lambda_exact = c.lambda;
  r.lambda_numeric = *c.lambda_numeric;
  r.theta = c.theta;
  r.zeta = c.zeta;
  r.eta = c.eta;
  r.big_p = c.big_p;
  r.purity = mu.source_purity();

  if (const std::string bad = c.chain_violation(); !bad.empty()) {
    throw ValidationError("sample " + std::to_string(sample_id) + " breaks the coefficient chain: " + bad);
  }
  return r;
}

std::vector<EnsembleRecord> run_ensemble(const EnsembleConfig& config) {
  if (config.k < 2) throw DomainError("ensemble k must be >= 2");
  if (config.dim < 2 || config.n_pure < 1 || config.samples < 1 || config.restarts < 1) {
    throw DomainError("ensemble dim must be >= 2 and pure-count, samples, restarts >= 1");
  }
  if (config.schmidt_rank > config.dim) throw DomainError("schmidt rank exceeds the local dimension");

  std::vector<std::optional<EnsembleRecord>> slots(config.samples);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < config.samples; i = next++) {
      try {
        slots[i] = ensemble_sample(config, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.samples;
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(config.threads, 1, config.samples);
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  std::vector<EnsembleRecord> records;
  records.reserve(config.samples);
  for (auto& slot : slots) records.push_back(*slot);
  return records;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string to_csv_row(const EnsembleRecord& r) {
  std::string row;
  row += std::to_string(r.sample_id) + ',' + std::to_string(r.k) + ',' + std::to_string(r.dim) + ',' +
         std::to_string(r.n_pure) + ',' + std::to_string(r.seed) + ',';
  if (r.lambda_exact) row += format_real(*r.lambda_exact);
  row += ',' + format_real(r.lambda_numeric) + ',' + format_real(r.theta) + ',' + format_real(r.zeta) + ',' +
         format_real(r.eta) + ',' + format_real(r.big_p) + ',' + format_real(r.purity);
  return row;
}

void write_csv(std::ostream& out, const std::vector<EnsembleRecord>& records) {
  out << kEnsembleCsvHeader << '\n';
  for (const auto& r : records) out << to_csv_row(r) << '\n';
}

}  // namespace snwit
