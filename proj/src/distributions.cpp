#include "htlpp/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace htlpp {

namespace {

constexpr double kMaxWeight = std::numeric_limits<double>::max();

void check_probability(double u) {
  if (!(u >= 0.0 && u < 1.0)) {
    throw std::domain_error("quantile: probability must lie in [0, 1)");
  }
}

}  // namespace

WeightDistribution WeightDistribution::pareto(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("pareto: alpha must be > 0");
  return {Family::pareto, alpha, 0.0};
}

WeightDistribution WeightDistribution::exponential(double mean) {
  if (!(mean > 0.0)) throw std::domain_error("exponential: mean must be > 0");
  return {Family::exponential, 0.0, mean};
}

WeightDistribution WeightDistribution::slowly_varying_log() {
  return {Family::slowly_varying_log, 0.0, 0.0};
}

std::string WeightDistribution::name() const {
  switch (family_) {
    case Family::pareto:
      return "pareto";
    case Family::exponential:
      return "exponential";
    case Family::slowly_varying_log:
      return "slowly_varying_log";
  }
  return "unknown";
}

double WeightDistribution::log_quantile(double u) const {
  check_probability(u);
  switch (family_) {
    case Family::pareto:
      return -std::log1p(-u) / alpha_;
    case Family::exponential:
      return std::log(-mean_ * std::log1p(-u));
    case Family::slowly_varying_log:
      return 1.0 / (1.0 - u);
  }
  return 0.0;
}

double WeightDistribution::quantile(double u) const {
  check_probability(u);
  double q = 0.0;
  switch (family_) {
    case Family::pareto:
      q = std::pow(1.0 - u, -1.0 / alpha_);
      break;
    case Family::exponential:
      q = -mean_ * std::log1p(-u);
      break;
    case Family::slowly_varying_log:
      q = std::exp(1.0 / (1.0 - u));
      break;
  }
  return std::min(q, kMaxWeight);
}

double WeightDistribution::cdf(double x) const {
  switch (family_) {
    case Family::pareto:
      return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -alpha_);
    case Family::exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-x / mean_);
    case Family::slowly_varying_log:
      return x <= std::exp(1.0) ? 0.0 : 1.0 - 1.0 / std::log(x);
  }
  return 0.0;
}

double WeightDistribution::scale_constant(std::uint64_t n) const {
  if (n < 1) throw std::domain_error("scale_constant: N must be >= 1");
  if (n == 1) return minimum();
  // 1 - 1/N loses precision for large N; go through the exceedance directly.
  switch (family_) {
    case Family::pareto:
      return std::pow(static_cast<double>(n), 1.0 / alpha_);
    case Family::exponential:
      return mean_ * std::log(static_cast<double>(n));
    case Family::slowly_varying_log:
      return std::min(std::exp(static_cast<double>(n)), kMaxWeight);
  }
  return 0.0;
}

std::vector<double> sample_weights(const WeightDistribution& dist,
                                   std::size_t count, Rng& rng,
                                   std::size_t* clamped) {
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = dist.quantile(rng.uniform());
    if (clamped != nullptr && w == kMaxWeight) ++*clamped;
    out.push_back(w);
  }
  return out;
}

LimitWeightSequence limit_weight_sequence(std::size_t k, double alpha,
                                          Rng& rng) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("limit_weight_sequence: alpha must be > 0");
  }
  std::vector<double> w(k);
  for (auto& x : w) x = rng.exponential();
  return limit_weight_sequence_from(w, alpha);
}

LimitWeightSequence limit_weight_sequence_from(
    std::span<const double> exponentials, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("limit_weight_sequence: alpha must be > 0");
  }
  LimitWeightSequence seq;
  seq.alpha = alpha;
  seq.weights.reserve(exponentials.size());
  seq.cumulative_exponentials.reserve(exponentials.size());
  double total = 0.0;
  for (double w : exponentials) {
    if (!(w > 0.0)) {
      throw std::domain_error("limit_weight_sequence: W_i must be > 0");
    }
    total += w;
    seq.cumulative_exponentials.push_back(total);
    seq.weights.push_back(std::pow(total, -1.0 / alpha));
  }
  return seq;
}

double gamma_ratio(double x, double a) {
  return std::exp(std::lgamma(x + a) - std::lgamma(x));
}

double expected_order_weight(double r, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("expected_order_weight: alpha must be > 0");
  }
  if (!(r > 1.0 / alpha)) {
    throw std::domain_error("expected_order_weight: diverges for r <= 1/alpha");
  }
  return gamma_ratio(r, -1.0 / alpha);
}

}  // namespace htlpp
