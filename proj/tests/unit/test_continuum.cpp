#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "htlpp/continuum.hpp"
#include "htlpp/stats.hpp"

using namespace htlpp;

namespace {

// Heaviest chain among PRM points dominated by (x, y), by the O(k^2) DP over
// points sorted by location.
double direct_field(const PRMSample& prm, double x, double y) {
  std::vector<PrmPoint> pts;
  for (const auto& p : prm.points) {
    if (p.x <= x && p.y <= y) pts.push_back(p);
  }
  std::sort(pts.begin(), pts.end(), [](const PrmPoint& a, const PrmPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<double> best(pts.size());
  double out = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    best[i] = pts[i].z;
    for (std::size_t j = 0; j < i; ++j) {
      if (pts[j].y <= pts[i].y) best[i] = std::max(best[i], best[j] + pts[i].z);
    }
    out = std::max(out, best[i]);
  }
  return out;
}

}  // namespace

TEST_CASE("sample_continuum basics") {
  Rng rng(301);
  const auto one = sample_continuum(1, 1.0, 2, rng);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points.weight(0) == one.weights.weights[0]);
  CHECK(one.weights.weights[0] == 1.0 / one.weights.cumulative_exponentials[0]);
  CHECK(truncated_T(one).first == one.weights.weights[0]);

  Rng a(302), b(302);
  const auto small = sample_continuum(50, 1.2, 2, a);
  const auto large = sample_continuum(100, 1.2, 2, b);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(small.points.weight(i) == large.points.weight(i));
    CHECK(small.points.location(i)[0] == large.points.location(i)[0]);
    CHECK(small.points.location(i)[1] == large.points.location(i)[1]);
  }
}

TEST_CASE("locations are uniform: chi-square on a 10x10 grid") {
  Rng rng(303);
  const auto s = sample_continuum(100000, 1.0, 2, rng);
  std::vector<double> counts(100, 0.0);
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const auto loc = s.points.location(i);
    const auto cx = std::min<std::size_t>(9, static_cast<std::size_t>(loc[0] * 10));
    const auto cy = std::min<std::size_t>(9, static_cast<std::size_t>(loc[1] * 10));
    counts[cx * 10 + cy] += 1.0;
  }
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
  // 99.9th percentile of chi-square with 99 degrees of freedom.
  CHECK(chi2 < 148.23);
}

TEST_CASE("T_k is nondecreasing in k on a shared sequence") {
  Rng rng(304);
  const auto s = sample_continuum(400, 1.0, 2, rng);
  double prev = 0.0;
  for (std::size_t k = 1; k <= 400; k += 13) {
    const double t = max_weight_chain(s.points.prefix(k)).total;
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("T_k increment is controlled by the remainder bound") {
  Rng rng(305);
  const std::size_t reps = 200;
  double increment = 0.0;
  for (std::size_t r = 0; r < reps; ++r) {
    const auto s = sample_continuum(2000, 1.0, 2, rng);
    increment += truncated_T(s).first - max_weight_chain(s.points.prefix(1000)).total;
  }
  CHECK(increment / reps >= 0.0);
  CHECK(increment / reps <= expected_remainder_bound(1000, 1.0));
}

TEST_CASE("PRM sampling") {
  Rng rng(306);
  const std::size_t draws = 10000;
  double total = 0.0;
  std::size_t above = 0, count = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    const auto prm = sample_prm(1.0, 1.0, 0.01, 1.0, rng);
    total += static_cast<double>(prm.points.size());
    for (std::size_t i = 1; i < prm.points.size(); ++i) {
      CHECK(prm.points[i].z <= prm.points[i - 1].z);
    }
    for (const auto& p : prm.points) {
      above += p.z > 0.05;
      ++count;
    }
  }
  CHECK(total / draws == doctest::Approx(100.0).epsilon(0.01));
  // P(z > t) = z_min / t for alpha = 1.
  const double frac = static_cast<double>(above) / count;
  CHECK(std::abs(frac - 0.2) < 3.0 * std::sqrt(0.2 * 0.8 / count));

  std::size_t empty = 0;
  for (int d = 0; d < 100; ++d) empty += sample_prm(1.0, 1.0, 1e9, 1.0, rng).points.empty();
  CHECK(empty == 100);
  CHECK(z_min_for_budget(1.0, 100.0) == doctest::Approx(0.01));
}

TEST_CASE("field_at against a direct DP") {
  Rng rng(307);
  for (int trial = 0; trial < 20; ++trial) {
    const auto prm = sample_prm(2.0, 2.0, 0.05, 1.3, rng);
    const std::vector<Query> qs{{0.0, 0.0}, {0.5, 1.7}, {1.0, 1.0}, {2.0, 2.0}, {1.9, 0.3}};
    const auto vals = field_at(prm, qs);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      CHECK(vals[i] == doctest::Approx(direct_field(prm, qs[i].x, qs[i].y)));
      CHECK(vals[i] >= max_single_weight(prm, qs[i]));
    }
    CHECK(vals[0] == 0.0);
    CHECK(vals[2] <= vals[3]);
  }
  const auto prm = sample_prm(1.0, 1.0, 0.1, 1.0, rng);
  CHECK_THROWS_AS(field_at(prm, Query{1.5, 0.5}), std::out_of_range);
}

TEST_CASE("T is coordinatewise nondecreasing") {
  Rng rng(308);
  const auto prm = sample_prm(1.0, 1.0, 0.01, 1.0, rng);
  std::vector<Query> qs;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) qs.push_back({i / 10.0, j / 10.0});
  }
  const auto v = field_at(prm, qs);
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      if (i > 0) CHECK(v[i * 11 + j] >= v[(i - 1) * 11 + j]);
      if (j > 0) CHECK(v[i * 11 + j] >= v[i * 11 + j - 1]);
    }
  }
}

TEST_CASE("theta and airy traces") {
  Rng rng(309);
  const double tau = 0.5;
  const double side = std::exp(tau);
  const auto prm = sample_prm(side, side, 0.01, 1.0, rng);
  const std::vector<Query> uv{{0.0, 0.0}, {0.3, -0.1}, {-0.5, 0.5}};
  const auto theta = theta_at(prm, uv);
  CHECK(theta[0] == field_at(prm, Query{1.0, 1.0}));
  CHECK(theta[1] == doctest::Approx(std::exp(-0.2) * field_at(prm, Query{std::exp(0.3), std::exp(-0.1)})));
  for (double t : theta) CHECK(t >= 0.0);

  const std::vector<double> u{-0.5, 0.0, 0.25, 0.5};
  const auto trace = airy_trace(tau, u, prm);
  REQUIRE(trace.values.size() == 4);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Query q{std::exp(u[i]), std::exp(-u[i])};
    CHECK(trace.values[i] == field_at(prm, q));
    CHECK(trace.values[i] >= max_single_weight(prm, q));
  }
}

TEST_CASE("thinning keeps the heavy points") {
  Rng rng(310);
  const auto prm = sample_prm(1.0, 1.0, 0.01, 1.0, rng);
  const auto thin = prm.thinned(0.1);
  for (const auto& p : thin.points) CHECK(p.z >= 0.1);
  std::size_t expected = 0;
  for (const auto& p : prm.points) expected += p.z >= 0.1;
  CHECK(thin.points.size() == expected);
  CHECK(field_at(thin, Query{1.0, 1.0}) <= field_at(prm, Query{1.0, 1.0}));
}

TEST_CASE("expected remainder bound decreases in k") {
  double prev = expected_remainder_bound(10, 1.0);
  for (std::size_t k : {100u, 1000u, 10000u}) {
    const double v = expected_remainder_bound(k, 1.0);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}
