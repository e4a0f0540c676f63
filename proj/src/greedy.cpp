#include "htlpp/greedy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "htlpp/chains.hpp"

namespace htlpp {

namespace {

std::uint64_t child_key(std::uint64_t key, int side) {
  return mix64(key ^ (side == 0 ? 0x243f6a8885a308d3ULL : 0x13198a2e03707344ULL));
}

double coordinate_draw(std::uint64_t key, std::size_t c) {
  return key_to_unit(mix64(key + 0xa4093822299f31d0ULL * (c + 1)));
}

struct Builder {
  double eps;
  std::size_t dims;
  MonotonePath* out;

  void split(std::vector<double> lo, std::vector<double> hi, std::uint64_t key) {
    double diameter = 0.0;
    for (std::size_t c = 0; c < dims; ++c) diameter = std::max(diameter, hi[c] - lo[c]);
    if (diameter < eps) return;
    std::vector<double> mid(dims);
    for (std::size_t c = 0; c < dims; ++c) {
      mid[c] = lo[c] + (hi[c] - lo[c]) * coordinate_draw(key, c);
    }
    split(lo, mid, child_key(key, 0));
    out->push_back(mid);
    split(std::move(mid), std::move(hi), child_key(key, 1));
  }
};

void require_2d(const GreedyPath& path, const char* what) {
  if (path.dims() != 2) throw std::invalid_argument(std::string(what) + ": d = 2 only");
}

// Linear interpolation of coordinate `to` against coordinate `from`.
double interpolate(const MonotonePath& v, std::size_t from, std::size_t to, double t) {
  const std::size_t n = v.size();
  std::size_t lo = 0, hi = n - 1;
  if (t <= v.vertex(0)[from]) return v.vertex(0)[to];
  if (t >= v.vertex(hi)[from]) return v.vertex(hi)[to];
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (v.vertex(mid)[from] <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const auto a = v.vertex(lo);
  const auto b = v.vertex(hi);
  const double span = b[from] - a[from];
  if (span <= 0.0) return b[to];
  return a[to] + (t - a[from]) / span * (b[to] - a[to]);
}

}  // namespace

GreedyPath greedy_path(double eps, std::size_t dims, Rng& rng) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("greedy_path: eps must lie in (0, 1)");
  if (dims < 2) throw std::domain_error("greedy_path: d must be >= 2");
  GreedyPath path;
  path.eps = eps;
  path.vertices.dims = dims;
  std::vector<double> lo(dims, 0.0), hi(dims, 1.0);
  path.vertices.push_back(lo);
  Builder builder{eps, dims, &path.vertices};
  builder.split(lo, hi, rng.next_u64());
  path.vertices.push_back(hi);
  return path;
}

std::vector<std::size_t> greedy_from_points(std::span<const double> coords,
                                            std::size_t dims) {
  if (dims == 0 || coords.size() % dims != 0) {
    throw std::invalid_argument("greedy_from_points: coordinate count not a multiple of d");
  }
  std::vector<std::size_t> kept;
  const std::size_t n = coords.size() / dims;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = coords.subspan(i * dims, dims);
    const bool ok = std::all_of(kept.begin(), kept.end(), [&](std::size_t j) {
      return is_compatible(p, coords.subspan(j * dims, dims));
    });
    if (ok) kept.push_back(i);
  }
  return kept;
}

double measure_cdf(const GreedyPath& path, double x) {
  require_2d(path, "measure_cdf");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("measure_cdf: x outside [0, 1]");
  return interpolate(path.vertices, 0, 1, x);
}

double inverse_measure_cdf(const GreedyPath& path, double y) {
  require_2d(path, "inverse_measure_cdf");
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("inverse_measure_cdf: y outside [0, 1]");
  return interpolate(path.vertices, 1, 0, y);
}

double beta_exponent(double q) {
  if (!(q > -1.0)) throw std::domain_error("beta_exponent: q must be > -1");
  return 2.0 / (q + 1.0) - 1.0;
}

double moment_function(double q, double theta) {
  if (!(q > -1.0 && theta > -1.0)) {
    throw std::domain_error("moment_function: q and theta must be > -1");
  }
  return 2.0 / ((1.0 + q) * (1.0 + theta));
}

SpectrumPoint spectrum(double a) {
  if (!(a >= 0.0)) throw std::domain_error("spectrum: a must be >= 0");
  SpectrumPoint p;
  p.a = a;
  if (a < kSpectrumLow || a > kSpectrumHigh) {
    p.status = SpectrumStatus::empty;
    p.f = 0.0;
    return p;
  }
  p.status = SpectrumStatus::interior;
  p.f = std::max(0.0, std::sqrt(8.0 * a) - a - 1.0);
  return p;
}

LegendreResult legendre_check(double a) {
  if (!(a > 0.0)) throw std::domain_error("legendre_check: a must be > 0");
  const auto objective = [a](double q) { return a * q + 2.0 / (q + 1.0) - 1.0; };

  // Grow the upper end until the convex objective turns upward.
  double lo = -1.0 + 1e-12;
  double hi = 1.0;
  while (objective(2.0 * hi + 1.0) < objective(hi)) hi = 2.0 * hi + 1.0;
  hi = 2.0 * hi + 1.0;

  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = objective(x2);
    }
  }
  const double q = 0.5 * (lo + hi);
  return {objective(q), q};
}

double chi_second_moment(double q, double beta) {
  if (!(q > -0.5 && beta > -0.5)) {
    throw std::domain_error("chi_second_moment: q and beta must be > -1/2");
  }
  const auto beta_fn = [](double s) {
    return std::exp(2.0 * std::lgamma(s + 1.0) - std::lgamma(2.0 * s + 2.0));
  };
  return 2.0 / ((1.0 + 2.0 * q) * (1.0 + 2.0 * beta)) + 2.0 * beta_fn(q) * beta_fn(beta);
}

std::vector<LocalDimension> coarse_local_dimensions(const GreedyPath& path, double r,
                                                    std::size_t count) {
  require_2d(path, "coarse_local_dimensions");
  if (!(r > 0.0 && r < 0.25)) {
    throw std::domain_error("coarse_local_dimensions: r must lie in (0, 1/4)");
  }
  if (path.eps > r / 16.0) {
    throw std::domain_error("coarse_local_dimensions: path resolution eps must be <= r/16");
  }
  if (count == 0) return {};
  std::vector<LocalDimension> out;
  out.reserve(count);
  const double log_r = std::log(r);
  for (std::size_t j = 0; j < count; ++j) {
    const double x = r + (1.0 - 2.0 * r) * (static_cast<double>(j) + 0.5) /
                             static_cast<double>(count);
    const double mass = measure_cdf(path, x + 0.5 * r) - measure_cdf(path, x - 0.5 * r);
    out.push_back({x, std::log(mass) / log_r});
  }
  return out;
}

DominanceEstimate dominance_probability(const WeightDistribution& dist, std::size_t n,
                                        std::size_t r, std::size_t reps, Rng& rng) {
  if (!dist.slowly_varying()) {
    throw std::invalid_argument("dominance_probability: distribution must be slowly varying");
  }
  if (n < 1 || r < 1 || reps < 1) {
    throw std::domain_error("dominance_probability: n, r and reps must be >= 1");
  }
  const std::size_t count = n * n;
  if (r > count) throw std::domain_error("dominance_probability: r exceeds n^2");
  std::vector<double> logs(count);
  std::size_t hits = 0;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    for (auto& l : logs) l = dist.log_quantile(rng.uniform());
    std::sort(logs.begin(), logs.end(), std::greater<>());
    const double pivot = logs[r - 1];
    double rest = 0.0;  // sum_{i>r} M_i / M_r
    for (std::size_t i = r; i < count && rest < 1.0; ++i) rest += std::exp(logs[i] - pivot);
    if (rest < 1.0) ++hits;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(reps);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps))};
}

}  // namespace htlpp
