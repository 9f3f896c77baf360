#include "snwit/optim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "snwit/errors.hpp"

namespace snwit {

namespace {

// F evaluated directly on a descending squared-simplex point, reusing buffers.
class Objective {
 public:
  Objective(const OSCSpectrum& mu, std::size_t k) : k_(k), mu_(mu.padded(k * k)), t_(k * k) {}

  double operator()(const std::vector<double>& x) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) t_[n++] = std::sqrt(x[i] * x[j]);
    std::sort(t_.begin(), t_.end(), std::greater<>());
    return std::inner_product(mu_.begin(), mu_.end(), t_.begin(), 0.0);
  }

 private:
  std::size_t k_;
  std::vector<double> mu_;
  std::vector<double> t_;
};

struct LocalResult {
  std::vector<double> x;
  double value;
  std::size_t iterations;
};

LocalResult local_search(Objective& f, std::vector<double> x, const OptimOptions& options) {
  const std::size_t k = x.size();
  std::sort(x.begin(), x.end(), std::greater<>());
  double value = f(x);
  double step = 0.25;
  std::size_t it = 0;
  std::vector<double> y(k);
  while (it < options.max_iterations && step > 1e-15) {
    ++it;
    const double sweep_start = value;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        const double amount = std::min(step, x[j]);
        if (amount <= 0.0) continue;
        y = x;
        y[i] += amount;
        y[j] -= amount;
        std::sort(y.begin(), y.end(), std::greater<>());
        const double candidate = f(y);
        if (candidate > value) {
          value = candidate;
          x.swap(y);
        }
      }
    if (value - sweep_start < options.tolerance) step *= 0.5;
  }
  return {std::move(x), value, it};
}

SchmidtVector to_schmidt(const std::vector<double>& x) {
  std::vector<double> s(x.size());
  std::transform(x.begin(), x.end(), s.begin(), [](double v) { return std::sqrt(std::max(0.0, v)); });
  return SchmidtVector::normalized(std::move(s));
}

}  // namespace

ProductSpectrum product_spectrum(const SchmidtVector& s) {
  ProductSpectrum out;
  out.t.reserve(s.size() * s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) out.t.push_back(s[i] * s[j]);
  std::sort(out.t.begin(), out.t.end(), std::greater<>());
  return out;
}

double eval_F(const OSCSpectrum& mu, const SchmidtVector& s) {
  const ProductSpectrum t = product_spectrum(s);
  const std::vector<double> m = mu.padded(t.t.size());
  return std::inner_product(m.begin(), m.end(), t.t.begin(), 0.0);
}

OptimResult maximize_F(const OSCSpectrum& mu, std::size_t k, Rng& rng, const OptimOptions& options) {
  if (k < 1) throw DimensionError("maximize_F needs k >= 1");
  if (options.restarts < 1) throw DomainError("maximize_F needs at least one restart");

  Objective f(mu, k);
  std::vector<std::vector<double>> starts;
  starts.emplace_back(k, 1.0 / static_cast<double>(k));
  std::vector<double> e1(k, 0.0);
  e1[0] = 1.0;
  starts.push_back(std::move(e1));
  for (std::size_t r = 2; r < options.restarts; ++r) {
    const SchmidtVector s = random_schmidt_vector(k, rng);
    std::vector<double> x(k);
    for (std::size_t i = 0; i < k; ++i) x[i] = s[i] * s[i];
    starts.push_back(std::move(x));
  }

  std::vector<double> best_x;
  double best_value = -1.0;
  std::size_t iterations = 0;
  for (auto& start : starts) {
    LocalResult local = local_search(f, std::move(start), options);
    iterations += local.iterations;
    if (local.value > best_value) {
      best_value = local.value;
      best_x = std::move(local.x);
    }
  }
  SchmidtVector best_s = to_schmidt(best_x);
  // Report F at the normalized vector so best_value == eval_F(mu, best_s).
  best_value = eval_F(mu, best_s);
  return {std::move(best_s), best_value, starts.size(), iterations};
}

double grid_oracle(const OSCSpectrum& mu, std::size_t k, std::size_t resolution) {
  if (k < 1 || k > 3) throw UnsupportedError("grid_oracle supports k <= 3, got " + std::to_string(k));
  if (resolution < 1 || resolution > 200) throw DomainError("grid_oracle resolution must lie in [1, 200]");
  Objective f(mu, k);
  const double r = static_cast<double>(resolution);
  double best = -1.0;
  std::vector<double> x(k);
  if (k == 1) return f({1.0});
  for (std::size_t a = 0; a <= resolution; ++a) {
    const std::size_t rest = resolution - a;
    if (k == 2) {
      if (rest > a) continue;
      x = {a / r, rest / r};
      best = std::max(best, f(x));
      continue;
    }
    for (std::size_t b = 0; b <= std::min(a, rest); ++b) {
      const std::size_t c = rest - b;
      if (c > b) continue;
      x = {a / r, b / r, c / r};
      best = std::max(best, f(x));
    }
  }
  return best;
}

}  // namespace snwit
