#include "htlpp/stats.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace htlpp {

double EmpiricalSample::mean() const {
  if (values_.empty()) throw std::invalid_argument("mean: empty sample");
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

double EmpiricalSample::standard_error() const {
  if (values_.size() < 2) return 0.0;
  const double m = mean();
  double ss = 0.0;
  for (double v : values_) ss += (v - m) * (v - m);
  const double n = static_cast<double>(values_.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

double EmpiricalSample::quantile(double p) const {
  if (values_.empty()) throw std::invalid_argument("quantile: empty sample");
  std::vector<double> copy;
  std::span<const double> v = values_;
  if (!sorted_) {
    copy = values_;
    std::sort(copy.begin(), copy.end());
    v = copy;
  }
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] + frac * (v[hi] - v[lo]);
}

double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::vector<double> x(a.values().begin(), a.values().end());
  std::vector<double> y(b.values().begin(), b.values().end());
  if (!a.sorted()) std::sort(x.begin(), x.end());
  if (!b.sorted()) std::sort(y.begin(), y.end());

  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  // Step both ECDFs past each distinct value before comparing.
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double empirical_moment(const EmpiricalSample& sample, double beta) {
  if (sample.empty()) throw std::invalid_argument("empirical_moment: empty");
  if (!(beta > 0.0)) throw std::domain_error("empirical_moment: beta <= 0");
  double s = 0.0;
  for (double v : sample.values()) s += std::pow(std::abs(v), beta);
  return s / static_cast<double>(sample.size());
}

bool MonotonePath::is_monotone() const {
  for (std::size_t i = 1; i < size(); ++i) {
    const auto a = vertex(i - 1);
    const auto b = vertex(i);
    for (std::size_t c = 0; c < dims; ++c) {
      if (b[c] < a[c]) return false;
    }
  }
  return true;
}

namespace {

double point_segment_distance(std::span<const double> p,
                              std::span<const double> a,
                              std::span<const double> b) {
  double ab2 = 0.0, ap_ab = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const double ab = b[c] - a[c];
    ab2 += ab * ab;
    ap_ab += (p[c] - a[c]) * ab;
  }
  const double t = ab2 > 0.0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
  double d2 = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const double diff = p[c] - (a[c] + t * (b[c] - a[c]));
    d2 += diff * diff;
  }
  return std::sqrt(d2);
}

double distance_to_polyline(std::span<const double> p, const MonotonePath& q) {
  if (q.size() == 1) return point_segment_distance(p, q.vertex(0), q.vertex(0));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < q.size(); ++i) {
    best = std::min(best, point_segment_distance(p, q.vertex(i - 1), q.vertex(i)));
    if (best == 0.0) break;
  }
  return best;
}

void check_pair(const MonotonePath& p, const MonotonePath& q) {
  if (p.empty() || q.empty()) {
    throw std::invalid_argument("hausdorff_distance: empty path");
  }
  if (p.dims != q.dims) {
    throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  }
}

}  // namespace

double directed_hausdorff(const MonotonePath& p, const MonotonePath& q,
                          double step) {
  check_pair(p, q);
  if (!(step > 0.0)) throw std::domain_error("hausdorff_distance: step <= 0");
  double worst = distance_to_polyline(p.vertex(0), q);
  std::vector<double> point(p.dims);
  for (std::size_t i = 1; i < p.size(); ++i) {
    const auto a = p.vertex(i - 1);
    const auto b = p.vertex(i);
    double len2 = 0.0;
    for (std::size_t c = 0; c < p.dims; ++c) len2 += (b[c] - a[c]) * (b[c] - a[c]);
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(len2) / step)));
    for (std::size_t s = 1; s <= pieces; ++s) {
      const double t = static_cast<double>(s) / static_cast<double>(pieces);
      for (std::size_t c = 0; c < p.dims; ++c) point[c] = a[c] + t * (b[c] - a[c]);
      worst = std::max(worst, distance_to_polyline(point, q));
    }
  }
  return worst;
}

double hausdorff_distance(const MonotonePath& p, const MonotonePath& q,
                          double step) {
  return directed_hausdorff(p, q, step) + directed_hausdorff(q, p, step);
}

Rng split_stream(std::uint64_t master_seed, std::uint64_t index) {
  // The leading tag keeps replicate streams apart from Rng(master_seed).
  std::seed_seq seq{0x5eed5eedU,
                    static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace htlpp
