#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "htlpp/distributions.hpp"

using namespace htlpp;

TEST_CASE("quantiles match the closed forms") {
  CHECK(WeightDistribution::pareto(1.0).quantile(0.5) == 2.0);
  CHECK(WeightDistribution::slowly_varying_log().quantile(0.9) ==
        doctest::Approx(22026.4658).epsilon(1e-9));
  for (double u : {0.0, 0.1, 0.37, 0.9, 0.999}) {
    CHECK(WeightDistribution::pareto(1.5).quantile(u) == std::pow(1.0 - u, -1.0 / 1.5));
    CHECK(WeightDistribution::slowly_varying_log().quantile(u) ==
          std::min(std::exp(1.0 / (1.0 - u)), std::numeric_limits<double>::max()));
  }
}

TEST_CASE("u = 0 gives the family minimum") {
  CHECK(WeightDistribution::pareto(0.7).quantile(0.0) == 1.0);
  CHECK(WeightDistribution::exponential().quantile(0.0) == 0.0);
  CHECK(WeightDistribution::slowly_varying_log().quantile(0.0) == std::exp(1.0));
}

TEST_CASE("quantile is nondecreasing, nonnegative and unbounded") {
  for (const auto& d : {WeightDistribution::pareto(0.5), WeightDistribution::exponential(),
                        WeightDistribution::slowly_varying_log()}) {
    double prev = -1.0;
    for (int i = 0; i < 1000; ++i) {
      const double q = d.quantile(i / 1000.0);
      CHECK(q >= prev);
      CHECK(q >= 0.0);
      prev = q;
    }
    CHECK(d.quantile(1.0 - 1e-12) > 25.0);
  }
}

TEST_CASE("quantile rejects u outside [0, 1) and clamps overflow") {
  const auto d = WeightDistribution::slowly_varying_log();
  CHECK_THROWS_AS(d.quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(d.quantile(-0.1), std::domain_error);
  CHECK(d.quantile(0.999) == std::numeric_limits<double>::max());
  CHECK(d.log_quantile(0.999) == doctest::Approx(1000.0));
}

TEST_CASE("cdf inverts quantile") {
  for (const auto& d : {WeightDistribution::pareto(1.3), WeightDistribution::exponential(2.0),
                        WeightDistribution::slowly_varying_log()}) {
    for (double u : {0.05, 0.5, 0.8}) CHECK(d.cdf(d.quantile(u)) == doctest::Approx(u));
  }
}

TEST_CASE("scale constant") {
  CHECK(WeightDistribution::pareto(2.0).scale_constant(16) == 4.0);
  CHECK(WeightDistribution::pareto(1.0).scale_constant(1) == 1.0);
  CHECK(WeightDistribution::pareto(1.0).scale_constant(2500) == doctest::Approx(2500.0));
  CHECK(WeightDistribution::pareto(0.5).scale_constant(10) == doctest::Approx(100.0));
}

TEST_CASE("sample_weights") {
  Rng rng(7);
  CHECK(sample_weights(WeightDistribution::pareto(1.0), 0, rng).empty());

  Rng a(99), b(99);
  const auto d = WeightDistribution::pareto(1.0);
  CHECK(sample_weights(d, 100, a) == sample_weights(d, 100, b));

  // P(X > 10) = 0.1 for Pareto(1).
  Rng big(2024);
  const std::size_t n = 1'000'000;
  std::size_t above = 0;
  for (double x : sample_weights(d, n, big)) above += x > 10.0;
  const double p = static_cast<double>(above) / n;
  CHECK(std::abs(p - 0.1) < 3.0 * std::sqrt(0.1 * 0.9 / n));
}

TEST_CASE("limit weight sequence") {
  const std::vector<double> w{1.0, 1.0, 1.0};
  const auto m = limit_weight_sequence_from(w, 1.0);
  CHECK(m.weights[0] == 1.0);
  CHECK(m.weights[1] == 0.5);
  CHECK(m.weights[2] == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(limit_weight_sequence_from(std::vector<double>{1.0, 0.0}, 1.0));

  Rng rng(5);
  const auto s = limit_weight_sequence(500, 1.5, rng);
  for (std::size_t i = 1; i < s.size(); ++i) {
    CHECK(s.weights[i] < s.weights[i - 1]);
    CHECK(std::pow(s.weights[i], -1.5) > std::pow(s.weights[i - 1], -1.5));
  }
}

TEST_CASE("expected order weight") {
  CHECK(expected_order_weight(2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expected_order_weight(1.0, 1.5) == doctest::Approx(2.678938535).epsilon(1e-9));
  CHECK_THROWS_AS(expected_order_weight(1.0, 1.0), std::domain_error);
  CHECK(gamma_ratio(3.0, 0.5) == doctest::Approx(std::tgamma(3.5) / std::tgamma(3.0)));
}

TEST_CASE("Monte Carlo mean of M_3 at alpha = 1.5") {
  Rng rng(31337);
  const std::size_t draws = 1'000'000;
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    // Gamma(3) sum of three exponentials.
    const double g = rng.exponential() + rng.exponential() + rng.exponential();
    sum += std::pow(g, -1.0 / 1.5);
  }
  const double oracle = std::tgamma(3.0 - 1.0 / 1.5) / std::tgamma(3.0);
  CHECK(sum / draws == doctest::Approx(oracle).epsilon(0.01));
  CHECK(expected_order_weight(3.0, 1.5) == doctest::Approx(oracle).epsilon(1e-12));
}
