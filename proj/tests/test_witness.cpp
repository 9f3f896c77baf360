#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "snwit/errors.hpp"
#include "snwit/optim.hpp"
#include "snwit/osd.hpp"
#include "snwit/qstate.hpp"
#include "snwit/witness.hpp"
#include "support.hpp"

using namespace snwit;

namespace {

OSCSpectrum random_spectrum(std::mt19937_64& rng, std::size_t n, double zero_tail = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> mu(n);
  for (double& v : mu) v = u(rng) < zero_tail ? 0.0 : u(rng);
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return OSCSpectrum::from_values(std::move(mu));
}

/// Pattern induced by a Schmidt vector: rank each pair (i, j) by the
/// descending order of s_i s_j, with (i, j), i < j, ranked just before (j, i).
std::vector<std::size_t> induced_pattern(const std::vector<double>& s) {
  const std::size_t k = s.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    const double pa = s[a.first] * s[a.second];
    const double pb = s[b.first] * s[b.second];
    if (pa != pb) return pa > pb;
    return std::min(a.first, a.second) == std::min(b.first, b.second) && a.first < b.first;
  });
  std::vector<std::size_t> idx(k * k);
  for (std::size_t r = 0; r < pairs.size(); ++r) idx[pairs[r].first * k + pairs[r].second] = r + 1;
  return idx;
}

std::vector<double> sorted_random_s(std::mt19937_64& rng, std::size_t k) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> s(k);
  for (double& v : s) v = std::sqrt(expo(rng));
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

}  // namespace

TEST_SUITE("witness") {
  TEST_CASE("canonical pattern") {
    CHECK(canonical_pattern(3) == ArrangementPattern{{1, 2, 4}, {3, 6, 7}, {5, 8, 9}});
    CHECK(canonical_pattern(4) == ArrangementPattern{{1, 2, 4, 6}, {3, 8, 9, 11}, {5, 10, 13, 14}, {7, 12, 15, 16}});
    for (std::size_t k = 1; k <= 10; ++k) {
      const ArrangementPattern p = canonical_pattern(k);
      const auto ranks = oracle::canonical_ranks(k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) CHECK(p.at(i, j) == ranks[i][j]);
      CHECK(p.at(0, 0) == 1);
      for (std::size_t j = 1; j < k; ++j) {
        CHECK(p.at(0, j) == 2 * j);
        CHECK(p.at(j, 0) == 2 * j + 1);
      }
    }
  }

  TEST_CASE("ArrangementPattern rejects non-bijections") {
    CHECK_THROWS_AS(ArrangementPattern(2, {1, 2, 2, 4}), ValidationError);
    CHECK_THROWS_AS(ArrangementPattern(2, {1, 2, 3, 5}), ValidationError);
    CHECK_THROWS_AS(ArrangementPattern(2, {1, 2, 3}), DimensionError);
    CHECK_THROWS_AS((ArrangementPattern{{1, 2, 3}}), DimensionError);
  }

  TEST_CASE("arrangement sets") {
    CHECK(arrangement_set(2).size() == 1);
    CHECK(arrangement_set(3).size() == 2);
    CHECK(arrangement_set(4).size() == 12);
    for (std::size_t k = 2; k <= 4; ++k) {
      const auto set = arrangement_set(k);
      CHECK(set.front() == canonical_pattern(k));
      for (const ArrangementPattern& p : set) {
        CHECK(p.at(0, 0) == 1);
        CHECK(p.at(k - 1, k - 1) == k * k);
      }
      for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b) CHECK_FALSE(set[a] == set[b]);
    }
    CHECK_THROWS_AS(arrangement_set(5), UnsupportedError);
    CHECK_THROWS_AS(arrangement_set(1), UnsupportedError);
  }

  TEST_CASE("arrangement sets cover every product ordering of Schmidt vectors") {
    // Patterns 7 and 10 of the k = 4 list admit no strictly ordered Schmidt
    // vector (e.g. for 7: s1s3 > s2^2, s2s3 > s1s4 and s2s4 > s3^2 multiply to
    // a contradiction). They only enlarge the maximum, so lambda_exact stays
    // an upper bound; the sampling below must never produce them.
    std::mt19937_64 rng(51);
    for (std::size_t k = 2; k <= 4; ++k) {
      const auto set = arrangement_set(k);
      const std::set<std::size_t> unreachable = k == 4 ? std::set<std::size_t>{6, 9} : std::set<std::size_t>{};
      std::set<std::size_t> seen;
      for (int n = 0; n < 200000; ++n) {
        const ArrangementPattern induced(k, induced_pattern(sorted_random_s(rng, k)));
        const auto it = std::find(set.begin(), set.end(), induced);
        REQUIRE(it != set.end());
        seen.insert(static_cast<std::size_t>(it - set.begin()));
      }
      CHECK(seen.size() + unreachable.size() == set.size());
      for (std::size_t u : unreachable) CHECK(seen.count(u) == 0);
    }
  }

  TEST_CASE("lambda_exact closed form for k = 2") {
    CHECK_NEAR(lambda_exact(OSCSpectrum::from_values({1.0, 0.0, 0.0, 0.0}), 2), 1.0, 1e-15);
    std::mt19937_64 rng(52);
    for (int n = 0; n < 50; ++n) {
      const OSCSpectrum mu = random_spectrum(rng, 4);
      CHECK_NEAR(lambda3_closed_form(mu), symmetrized_max_eigenvalue(canonical_matrix(mu, 2)), 1e-14);
    }
  }

  TEST_CASE("lambda_exact dominates F and is attained for k = 2..4") {
    std::mt19937_64 rng(53);
    for (std::size_t k = 2; k <= 4; ++k) {
      for (int n = 0; n < 10; ++n) {
        const OSCSpectrum mu = random_spectrum(rng, k * k);
        const double lam = lambda_exact(mu, k);
        Rng opt = substream(53, k * 100 + static_cast<std::uint64_t>(n));
        const double f = maximize_F(mu, k, opt).best_value;
        CHECK(f <= lam + 1e-9);
        CHECK(oracle::random_search_max_f(testing::values(mu), k, 500 + n, 3000) <= lam + 1e-9);
      }
    }
  }

  TEST_CASE("row sums follow the canonical index map") {
    std::vector<double> geo(25);
    for (std::size_t i = 0; i < 25; ++i) geo[i] = std::pow(0.5, double(i + 1));
    const OSCSpectrum mu = OSCSpectrum::from_values(geo);
    auto m = [&](std::size_t i) { return geo[i - 1]; };
    CHECK_NEAR(last_row_sum(mu, 3), m(5) + m(8) + m(9), 1e-16);
    CHECK_NEAR(last_row_sum(mu, 4), m(7) + m(12) + m(15) + m(16), 1e-16);
    CHECK_NEAR(last_row_sum(mu, 5), m(9) + m(16) + m(21) + m(24) + m(25), 1e-16);
    CHECK_NEAR(first_row_sum(mu, 4), m(1) + m(2) + m(4) + m(6), 1e-16);
    for (std::size_t k = 2; k <= 5; ++k) {
      const Eigen::MatrixXd c = canonical_matrix(mu, k).values;
      CHECK_NEAR(first_row_sum(mu, k), c.row(0).sum(), 1e-16);
      CHECK_NEAR(last_row_sum(mu, k), c.row(static_cast<Eigen::Index>(k - 1)).sum(), 1e-16);
    }
    const OSCSpectrum top = OSCSpectrum::from_values({1.0});
    for (std::size_t k = 2; k <= 6; ++k) CHECK(first_row_sum(top, k) == 1.0);
  }

  TEST_CASE("bound formulas on a published spectrum") {
    // The four coefficients listed for the k = 2 example.
    const OSCSpectrum mu = OSCSpectrum::from_values({0.2571, 0.2517, 0.2473, 0.2439});
    CHECK_NEAR(lambda_exact(mu, 2), 0.5001, 1e-3);
    CHECK_NEAR(theta(mu, 2), 0.5002, 1e-3);
    CHECK_NEAR(zeta(mu, 2), 0.5006, 1e-3);
    CHECK_NEAR(eta(mu, 2), 0.5045, 1e-3);
    CHECK_NEAR(first_row_sum(mu, 2), 0.5088, 1e-3);
  }

  TEST_CASE("bounds for rho_family(3), rho_family(4) and rho0") {
    const OSCSpectrum m3 = osc(rho_family(3));
    CHECK_NEAR(theta(m3, 3), 0.9420, 2e-3);
    CHECK_NEAR(eta(m3, 3), 0.9649, 2e-3);
    CHECK_NEAR(first_row_sum(m3, 3), 1.0001, 2e-3);

    const OSCSpectrum m4 = osc(rho_family(4));
    CHECK_NEAR(theta(m4, 4), 0.9330, 2e-3);
    CHECK_NEAR(zeta(m4, 4), 0.9568, 2e-3);
    CHECK_NEAR(eta(m4, 4), 0.9634, 2e-3);
    CHECK_NEAR(first_row_sum(m4, 4), 1.0000, 2e-3);

    // mu_16 = 0 for rho0, so every row-sum bound collapses to P.
    const OSCSpectrum m0 = osc(rho0());
    CHECK_NEAR(first_row_sum(m0, 4), 0.9438, 1e-3);
    CHECK(theta(m0, 4) == first_row_sum(m0, 4));
    CHECK(zeta(m0, 4) == first_row_sum(m0, 4));
    CHECK(eta(m0, 4) == first_row_sum(m0, 4));
  }

  TEST_CASE("unsymmetrized Perron roots of the canonical matrices") {
    // The tabulated lambda column for k = 3, 4, 5 is reproduced by the Perron
    // root of M itself; the witness coefficient uses the symmetric part.
    CHECK_NEAR(lambda_perron(osc(rho_family(3)), 3, true), 0.6642, 1e-3);
    CHECK_NEAR(lambda_perron(osc(rho_family(4)), 4, true), 0.6545, 1e-3);
    CHECK_NEAR(lambda_perron(osc(rho_family(5)), 5, true), 0.6628, 1e-3);
    std::mt19937_64 rng(54);
    for (std::size_t k = 2; k <= 4; ++k) {
      const OSCSpectrum mu = random_spectrum(rng, k * k);
      CHECK(lambda_perron(mu, k) <= lambda_exact(mu, k) + 1e-12);
    }
  }

  TEST_CASE("exact lambda for rho0 agrees with an independent search") {
    const OSCSpectrum m0 = osc(rho0());
    const double search = oracle::random_search_max_f(testing::values(m0), 4, 91, 40000);
    CHECK_NEAR(lambda_exact(m0, 4), search, 1e-4);
    // The canonical matrix alone gives the smaller value.
    CHECK_NEAR(symmetrized_max_eigenvalue(canonical_matrix(m0, 4)), 0.6848, 1e-3);
  }

  TEST_CASE("mu_{k^2} = 0 makes theta, zeta and eta equal P") {
    std::mt19937_64 rng(55);
    for (std::size_t k = 2; k <= 10; ++k) {
      std::vector<double> v = testing::values(random_spectrum(rng, k * k - 1));
      v.push_back(0.0);
      const OSCSpectrum mu = OSCSpectrum::from_values(v);
      const double P = first_row_sum(mu, k);
      CHECK(theta(mu, k) == P);
      CHECK(zeta(mu, k) == P);
      CHECK(eta(mu, k) == P);
    }
  }

  TEST_CASE("coefficient chain on random spectra") {
    std::mt19937_64 rng(56);
    for (std::size_t k = 2; k <= 6; ++k) {
      for (int n = 0; n < 40; ++n) {
        const OSCSpectrum mu = random_spectrum(rng, k * k + (n % 3), n % 4 == 0 ? 0.3 : 0.0);
        Rng opt = substream(56, k * 1000 + static_cast<std::uint64_t>(n));
        const WitnessCoefficients c = coefficients(mu, k, opt, {.with_numeric = true, .optim = {.restarts = 8}});
        INFO(c.chain_violation());
        CHECK(c.satisfies_chain());
        CHECK(c.target_sn == k + 1);
        CHECK(c.lambda.has_value() == (k <= 4));
        CHECK(c.lambda_numeric.has_value());
      }
    }
  }

  TEST_CASE("chain_violation reports the first broken link") {
    WitnessCoefficients c{3, 0.5, 0.4, 0.6, 0.7, 0.8, 0.9};
    CHECK(c.chain_violation().empty());
    c.zeta = 0.55;
    CHECK(c.chain_violation().find("theta") == 0);
    c.zeta = 0.7;
    c.lambda_numeric = 0.51;
    CHECK(c.chain_violation().find("lambda_numeric") == 0);
    CHECK(c.satisfies_chain(0.02));
  }

  TEST_CASE("maximally mixed targets collapse every coefficient to 1/k") {
    for (std::size_t k = 2; k <= 5; ++k) {
      Rng opt = substream(57, k);
      const WitnessCoefficients c = coefficients(maximally_mixed(k), k, opt, {.with_numeric = true});
      const double inv = 1.0 / static_cast<double>(k);
      if (c.lambda) CHECK_NEAR(*c.lambda, inv, 1e-9);
      CHECK_NEAR(*c.lambda_numeric, inv, 1e-9);
      CHECK_NEAR(c.theta, inv, 1e-9);
      CHECK_NEAR(c.zeta, inv, 1e-9);
      CHECK_NEAR(c.eta, inv, 1e-9);
      CHECK_NEAR(c.big_p, inv, 1e-9);
    }
    Rng opt = substream(57, 0);
    CHECK_THROWS_AS(coefficients(maximally_mixed(3), 1, opt), DomainError);
  }

  TEST_CASE("WitnessMethod parsing") {
    CHECK(WitnessMethod::parse("lambda").kind() == WitnessMethod::Kind::kLambda);
    CHECK(WitnessMethod::parse("P").kind() == WitnessMethod::Kind::kBigP);
    CHECK(WitnessMethod::parse("bigP").kind() == WitnessMethod::Kind::kBigP);
    CHECK(WitnessMethod::parse("mu1").kind() == WitnessMethod::Kind::kMu1);
    CHECK(WitnessMethod::parse("fixed(3/4)").fixed_value() == 0.75);
    CHECK(WitnessMethod::parse("fixed:0.5").fixed_value() == 0.5);
    CHECK(WitnessMethod::parse("fixed(3/4)").name() == "fixed(0.75)");
    CHECK_THROWS_AS(WitnessMethod::parse("gamma"), ParseError);
    CHECK_THROWS_AS(WitnessMethod::parse("fixed(1/0)"), ParseError);
    CHECK_THROWS_AS(WitnessMethod::parse("fixed(x)"), ParseError);
    CHECK_THROWS_AS(WitnessMethod::parse("fixed(-1)"), DomainError);
  }

  TEST_CASE("build_witness coefficients") {
    const BipartiteState r0 = rho0();
    const SchmidtWitness w = build_witness(r0, 4, WitnessMethod::Kind::kLambda);
    CHECK(w.coefficient == lambda_exact(osc(r0), 4));
    CHECK(w.target_sn == 5);
    CHECK(build_witness(r0, 4, WitnessMethod::Kind::kMu1).coefficient == osc(r0).mu(1));
    CHECK(build_witness(r0, 1, WitnessMethod::Kind::kLambda).coefficient == osc(r0).mu(1));
    CHECK_THROWS_AS(build_witness(rho_family(5), 5, WitnessMethod::Kind::kLambda), UnsupportedError);
    CHECK(build_witness(r0, 4, WitnessMethod::Kind::kTheta).coefficient == theta(osc(r0), 4));
    CHECK(build_witness(r0, 3, WitnessMethod::fixed(0.75)).coefficient == 0.75);
  }

  TEST_CASE("evaluate_witness") {
    const BipartiteState r0 = rho0();
    const SchmidtWitness w = build_witness(r0, 4, WitnessMethod::Kind::kLambda);
    // Tr(W rho0) = lambda - purity(rho0); positive, so rho0 is not detected.
    CHECK_NEAR(evaluate_witness(w, r0), w.coefficient - purity(r0), 1e-12);
    CHECK(evaluate_witness(w, r0) > 0.18);

    // Fidelity witness k/n - |phi+><phi+| saturates on |phi+>.
    const BipartiteState phi = max_entangled(4).projector();
    CHECK_NEAR(evaluate_witness(build_witness(phi, 3, WitnessMethod::fixed(fidelity_bound(3, 4))), phi), -0.25, 1e-12);

    Rng rng = substream(58, 0);
    const SchmidtWitness flat = build_witness(maximally_mixed(3), 2, WitnessMethod::Kind::kTheta);
    for (int n = 0; n < 5; ++n) {
      const BipartiteState r = random_mixed(3, 3, rng);
      CHECK_NEAR(evaluate_witness(flat, r), flat.coefficient - 1.0 / 9.0, 1e-12);
    }
    CHECK_THROWS_AS(evaluate_witness(flat, maximally_mixed(2)), DimensionError);
  }

  TEST_CASE("theta witnesses never certify states of Schmidt number <= k") {
    Rng rng = substream(59, 0);
    std::size_t violations = 0;
    for (std::size_t k = 2; k <= 3; ++k) {
      for (int t = 0; t < 10; ++t) {
        const SchmidtWitness w = build_witness(random_hermitian(k + 1, k + 1, rng), k, WitnessMethod::Kind::kTheta);
        for (int n = 0; n < 10; ++n)
          if (evaluate_witness(w, random_sn_bounded(k + 1, k, 1 + n % 3, rng)) < -1e-9) ++violations;
      }
    }
    CHECK(violations == 0);
  }

  TEST_CASE("fidelity bound") {
    CHECK(fidelity_bound(3, 4) == 0.75);
    CHECK(fidelity_bound(5, 5) == 1.0);
    CHECK_THROWS_AS(fidelity_bound(0, 3), DomainError);
    CHECK_THROWS_AS(fidelity_bound(4, 3), DomainError);
    Rng rng = substream(60, 0);
    const Eigen::MatrixXcd phi = oracle::bell_projector(4);
    for (std::size_t k = 1; k <= 3; ++k)
      for (int n = 0; n < 100; ++n) {
        const BipartiteState s = random_sn_bounded(4, k, 50, rng);
        CHECK((phi * s.matrix()).trace().real() <= fidelity_bound(k, 4) + 1e-9);
      }
  }
}
