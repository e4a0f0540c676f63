#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "htlpp/greedy.hpp"

using namespace htlpp;

namespace {

std::set<std::vector<double>> vertex_set(const GreedyPath& p) {
  std::set<std::vector<double>> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto v = p.vertices.vertex(i);
    out.emplace(v.begin(), v.end());
  }
  return out;
}

GreedyPath linear_path() {
  GreedyPath p;
  p.eps = 1e-9;
  p.vertices.push_back(0.0, 0.0);
  p.vertices.push_back(1.0, 1.0);
  return p;
}

}  // namespace

TEST_CASE("greedy paths are strictly increasing and refine with eps") {
  for (std::size_t dims : {2u, 3u}) {
    Rng a(401), b(401), c(401);
    const auto coarse = greedy_path(0.999, dims, a);
    const auto mid = greedy_path(1.0 / 64, dims, b);
    const auto fine = greedy_path(1.0 / 1024, dims, c);
    // The first split point of the full box.
    CHECK(coarse.size() >= 3);
    for (const auto* p : {&coarse, &mid, &fine}) {
      // Strict in exact arithmetic; a split of a box only a few ulps wide can
      // round onto its edge, so ties are allowed but must stay rare.
      std::size_t ties = 0;
      for (std::size_t i = 1; i < p->size(); ++i) {
        for (std::size_t d = 0; d < dims; ++d) {
          CHECK(p->vertices.vertex(i)[d] >= p->vertices.vertex(i - 1)[d]);
          ties += p->vertices.vertex(i)[d] == p->vertices.vertex(i - 1)[d];
        }
      }
      CHECK(ties * 1000 <= p->size());
      CHECK(p->vertices.vertex(0)[0] == 0.0);
      CHECK(p->vertices.vertex(p->size() - 1)[dims - 1] == 1.0);
    }
    CHECK(mid.size() > coarse.size());
    CHECK(fine.size() > mid.size());
    const auto fine_set = vertex_set(fine);
    for (const auto& v : vertex_set(mid)) CHECK(fine_set.count(v) == 1);
    for (const auto& v : vertex_set(coarse)) CHECK(fine_set.count(v) == 1);
  }
}

TEST_CASE("largest vertical increment shrinks as eps decreases") {
  auto max_jump = [](const GreedyPath& p) {
    double m = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      m = std::max(m, p.vertices.vertex(i)[1] - p.vertices.vertex(i - 1)[1]);
    }
    return m;
  };
  double prev = 2.0;
  for (int e = 2; e <= 14; e += 3) {
    Rng rng(402);
    const double jump = max_jump(greedy_path(std::ldexp(1.0, -e), 2, rng));
    CHECK(jump <= prev);
    CHECK(jump < std::ldexp(1.0, -e));
    prev = jump;
  }
}

TEST_CASE("greedy_from_points") {
  const std::vector<double> pts{0.5, 0.5, 0.2, 0.8, 0.7, 0.9};
  CHECK(greedy_from_points(pts, 2) == std::vector<std::size_t>{0, 2});
  const std::vector<double> stair{0.1, 0.1, 0.2, 0.3, 0.5, 0.5};
  CHECK(greedy_from_points(stair, 2) == std::vector<std::size_t>{0, 1, 2});
  Rng rng(403);
  std::vector<double> random(60);
  for (auto& v : random) v = rng.uniform();
  CHECK(greedy_from_points(random, 3).front() == 0);
  CHECK_THROWS(greedy_from_points(random, 7));
}

TEST_CASE("measure cdf") {
  Rng rng(404);
  const auto p = greedy_path(1.0 / 512, 2, rng);
  CHECK(measure_cdf(p, 0.0) == 0.0);
  CHECK(measure_cdf(p, 1.0) == 1.0);
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double g = measure_cdf(p, i / 1000.0);
    CHECK(g >= prev);
    prev = g;
    CHECK(measure_cdf(p, inverse_measure_cdf(p, g)) == doctest::Approx(g).epsilon(1e-9));
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(measure_cdf(p, p.vertices.vertex(i)[0]) == p.vertices.vertex(i)[1]);
  }
  CHECK_THROWS(measure_cdf(p, 1.5));

  Rng three(405);
  CHECK_THROWS(measure_cdf(greedy_path(0.1, 3, three), 0.5));
}

TEST_CASE("mean of G(1/2) is 1/2") {
  Rng rng(406);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) sum += measure_cdf(greedy_path(1.0 / 64, 2, rng), 0.5);
  CHECK(std::abs(sum / 10000 - 0.5) < 0.01);
}

TEST_CASE("beta exponent and moment function") {
  CHECK(beta_exponent(1.0) == 0.0);
  CHECK(beta_exponent(0.0) == 1.0);
  CHECK(beta_exponent(3.0) == -0.5);
  CHECK_THROWS(beta_exponent(-1.0));
  CHECK(moment_function(0.0, 0.0) == 2.0);
  CHECK(moment_function(1.0, 1.0) == 0.5);
  for (double q : {-0.9, -0.3, 0.0, 0.7, 2.0, 10.0}) {
    CHECK(moment_function(q, beta_exponent(q)) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("spectrum") {
  CHECK(spectrum(2.0).f == 1.0);
  CHECK(spectrum(2.0).status == SpectrumStatus::interior);
  CHECK(spectrum(1.0).f == doctest::Approx(std::sqrt(8.0) - 2.0).epsilon(1e-14));
  CHECK(spectrum(kSpectrumLow).f == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(spectrum(kSpectrumLow).f) < 1e-12);
  CHECK(spectrum(0.1).status == SpectrumStatus::empty);
  CHECK(spectrum(6.0).status == SpectrumStatus::empty);
  CHECK(spectrum(6.0).f == 0.0);
}

TEST_CASE("legendre check") {
  const auto two = legendre_check(2.0);
  CHECK(std::abs(two.value - 1.0) < 1e-8);
  CHECK(std::abs(two.minimizer) < 1e-6);
  double lo = 1e9, hi = -1e9;
  for (int i = 0; i <= 100; ++i) {
    const double a = kSpectrumLow + (kSpectrumHigh - kSpectrumLow) * i / 100.0;
    const auto r = legendre_check(a);
    CHECK(std::abs(r.value - spectrum(a).f) < 1e-8);
    CHECK(std::abs(r.minimizer - (std::sqrt(2.0 / a) - 1.0)) < 1e-6);
    lo = std::min(lo, beta_exponent(r.minimizer));
    hi = std::max(hi, beta_exponent(r.minimizer));
  }
  // The optimal exponents beta(q*) sweep [1 - sqrt 2, 1 + sqrt 2].
  CHECK(std::abs(lo - (1.0 - std::sqrt(2.0))) < 1e-6);
  CHECK(std::abs(hi - (1.0 + std::sqrt(2.0))) < 1e-6);
}

TEST_CASE("chi second moment") {
  CHECK(chi_second_moment(0.0, 0.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(chi_second_moment(0.3, 1.2) == doctest::Approx(chi_second_moment(1.2, 0.3)).epsilon(1e-12));

  Rng rng(407);
  const std::size_t draws = 1'000'000;
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double vt = rng.uniform(), v = rng.uniform();
    const double chi = vt * std::pow(v, 0.0) + (1.0 - vt) * std::pow(1.0 - v, 0.0);
    sum += chi * chi;
  }
  CHECK(sum / draws == doctest::Approx(chi_second_moment(1.0, 0.0)).epsilon(0.01));

  Rng rng2(408);
  double sum2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double vt = rng2.uniform(), v = rng2.uniform();
    const double chi = std::pow(vt, 0.5) * std::pow(v, 2.0) +
                       std::pow(1.0 - vt, 0.5) * std::pow(1.0 - v, 2.0);
    sum2 += chi * chi;
  }
  CHECK(sum2 / draws == doctest::Approx(chi_second_moment(0.5, 2.0)).epsilon(0.01));
}

TEST_CASE("coarse local dimensions") {
  const auto uniform = coarse_local_dimensions(linear_path(), 1.0 / 64);
  CHECK(uniform.size() == 256);
  for (const auto& ld : uniform) CHECK(std::abs(ld.exponent - 1.0) < 0.01);

  Rng rng(409);
  const auto p = greedy_path(1.0 / 4096, 2, rng);
  for (const auto& ld : coarse_local_dimensions(p, 1.0 / 256)) CHECK(ld.exponent >= 0.0);
  CHECK_THROWS(coarse_local_dimensions(p, 1.0 / 1024));
  CHECK_THROWS(coarse_local_dimensions(p, 0.5));
}

TEST_CASE("dominance probability") {
  Rng rng(410);
  const auto d = dominance_probability(WeightDistribution::slowly_varying_log(), 10, 1, 200, rng);
  CHECK(d.probability >= 0.0);
  CHECK(d.probability <= 1.0);
  CHECK(d.standard_error >= 0.0);
  CHECK_THROWS_AS(dominance_probability(WeightDistribution::pareto(1.0), 10, 1, 10, rng),
                  std::invalid_argument);
}
