#include "htlpp/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace htlpp {

ContinuumSample sample_continuum(std::size_t k, double alpha, std::size_t dims, Rng& rng) {
  if (k < 1) throw std::domain_error("sample_continuum: k must be >= 1");
  if (dims < 2) throw std::domain_error("sample_continuum: d must be >= 2");
  if (!(alpha > 0.0 && alpha < static_cast<double>(dims))) {
    throw std::domain_error("sample_continuum: alpha must lie in (0, d)");
  }
  std::vector<double> coords(k * dims);
  std::vector<double> exps(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < dims; ++c) coords[i * dims + c] = rng.uniform();
    exps[i] = rng.exponential();
  }
  ContinuumSample s;
  s.dims = dims;
  s.k = k;
  s.weights = limit_weight_sequence_from(exps, alpha);
  s.points = WeightedPointSet(dims);
  for (std::size_t i = 0; i < k; ++i) {
    s.points.add(std::span<const double>(coords.data() + i * dims, dims), s.weights.weights[i]);
  }
  return s;
}

std::pair<double, ChainResult> truncated_T(const ContinuumSample& sample) {
  ChainResult chain = max_weight_chain(sample.points);
  const double value = chain.total;
  return {value, std::move(chain)};
}

PRMSample PRMSample::thinned(double threshold) const {
  PRMSample out = *this;
  out.z_min = std::max(z_min, threshold);
  const auto keep = std::partition_point(
      out.points.begin(), out.points.end(),
      [&](const PrmPoint& p) { return p.z >= threshold; });
  out.points.erase(keep, out.points.end());
  return out;
}

PRMSample sample_prm(double cx, double cy, double z_min, double alpha, Rng& rng) {
  if (!(cx > 0.0 && cy > 0.0)) throw std::domain_error("sample_prm: box must be positive");
  if (!(z_min > 0.0)) throw std::domain_error("sample_prm: z_min must be > 0");
  if (!(alpha > 0.0)) throw std::domain_error("sample_prm: alpha must be > 0");
  PRMSample prm;
  prm.cx = cx;
  prm.cy = cy;
  prm.z_min = z_min;
  prm.alpha = alpha;
  const double mean = cx * cy * std::pow(z_min, -alpha);
  const std::uint64_t count = rng.poisson(mean);
  prm.points.resize(count);
  for (auto& p : prm.points) {
    p.x = cx * rng.uniform();
    p.y = cy * rng.uniform();
    p.z = z_min * std::pow(rng.uniform(), -1.0 / alpha);
  }
  std::sort(prm.points.begin(), prm.points.end(),
            [](const PrmPoint& a, const PrmPoint& b) { return a.z > b.z; });
  return prm;
}

double z_min_for_budget(double alpha, double budget) {
  if (!(alpha > 0.0 && budget > 0.0)) {
    throw std::domain_error("z_min_for_budget: alpha and budget must be > 0");
  }
  return std::pow(budget, -1.0 / alpha);
}

namespace {

void check_query(const PRMSample& prm, Query q) {
  if (!(q.x >= 0.0 && q.y >= 0.0 && q.x <= prm.cx && q.y <= prm.cy)) {
    throw std::out_of_range("field_at: query outside the sampled box");
  }
}

}  // namespace

double field_at(const PRMSample& prm, Query q) {
  check_query(prm, q);
  if (q.x <= 0.0 || q.y <= 0.0) return 0.0;
  // Compatibility is invariant under axis scaling, so solve in the unit box.
  WeightedPointSet set(2);
  for (const PrmPoint& p : prm.points) {
    if (p.x <= q.x && p.y <= q.y) set.add(p.x / q.x, p.y / q.y, p.z);
  }
  return max_weight_chain(set).total;
}

std::vector<double> field_at(const PRMSample& prm, std::span<const Query> queries) {
  for (const Query& q : queries) check_query(prm, q);
  std::vector<double> out;
  out.reserve(queries.size());
  for (const Query& q : queries) out.push_back(field_at(prm, q));
  return out;
}

std::vector<double> theta_at(const PRMSample& prm, std::span<const Query> queries) {
  std::vector<Query> mapped;
  mapped.reserve(queries.size());
  for (const Query& uv : queries) mapped.push_back({std::exp(uv.x), std::exp(uv.y)});
  auto values = field_at(prm, mapped);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] *= std::exp(-(queries[i].x + queries[i].y) / prm.alpha);
  }
  return values;
}

AiryTrace airy_trace(double tau, std::span<const double> u_grid, const PRMSample& prm) {
  if (!(tau >= 0.0)) throw std::domain_error("airy_trace: tau must be >= 0");
  AiryTrace trace;
  trace.tau = tau;
  trace.u_grid.assign(u_grid.begin(), u_grid.end());
  std::vector<Query> queries;
  queries.reserve(u_grid.size());
  for (double u : u_grid) {
    if (!(u >= -tau && u <= tau)) throw std::domain_error("airy_trace: u outside [-tau, tau]");
    // Clamp so that e^tau computed two ways cannot fall outside the box.
    queries.push_back({std::min(std::exp(u), prm.cx), std::min(std::exp(-u), prm.cy)});
  }
  trace.values = field_at(prm, queries);
  return trace;
}

AiryTrace airy_trace(double tau, std::span<const double> u_grid, double z_min,
                     double alpha, Rng& rng) {
  if (!(tau >= 0.0)) throw std::domain_error("airy_trace: tau must be >= 0");
  const double side = std::exp(tau);
  const PRMSample prm = sample_prm(side, side, z_min, alpha, rng);
  return airy_trace(tau, u_grid, prm);
}

double max_single_weight(const PRMSample& prm, Query q) {
  for (const PrmPoint& p : prm.points) {
    if (p.x <= q.x && p.y <= q.y) return p.z;  // sorted by z
  }
  return 0.0;
}

double expected_remainder_bound(std::size_t k, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::domain_error("expected_remainder_bound: alpha must lie in (0, 2)");
  }
  const double inv = 1.0 / alpha;
  if (static_cast<double>(k + 1) <= inv) return std::numeric_limits<double>::infinity();
  // E M_i - E M_{i+1} = Gamma(i - 1/alpha) / (alpha i Gamma(i)).
  const std::size_t explicit_terms = 100000;
  double total = 0.0;
  const std::size_t last = k + explicit_terms;
  for (std::size_t i = k + 1; i <= last; ++i) {
    const double r = static_cast<double>(i);
    total += 2.0 * std::sqrt(r) * gamma_ratio(r, -inv) / (alpha * r);
  }
  // Tail: terms ~ (2/alpha) i^(-1/2 - 1/alpha).
  const double n = static_cast<double>(last) + 0.5;
  total += (2.0 / alpha) * std::pow(n, 0.5 - inv) / (inv - 0.5);
  return total;
}

}  // namespace htlpp
