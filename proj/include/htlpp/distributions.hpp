#ifndef HTLPP_DISTRIBUTIONS_HPP_
#define HTLPP_DISTRIBUTIONS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "htlpp/rng.hpp"

namespace htlpp {

enum class Family { pareto, exponential, slowly_varying_log };

/*
 * Weight law F for the discrete model. Three closed-form families:
 *
 *   pareto(a)           1 - F(x) = x^-a,    x >= 1
 *   exponential(mean)   1 - F(x) = exp(-x / mean)
 *   slowly_varying_log  1 - F(x) = 1 / ln x, x >= e   (tail index 0)
 */
class WeightDistribution {
 public:
  static WeightDistribution pareto(double alpha);
  static WeightDistribution exponential(double mean = 1.0);
  static WeightDistribution slowly_varying_log();

  Family family() const { return family_; }
  // Tail index (0 for the slowly varying family, unused for exponential).
  double alpha() const { return alpha_; }
  double mean() const { return mean_; }
  bool slowly_varying() const { return family_ == Family::slowly_varying_log; }
  std::string name() const;

  // F^-1(u) for u in [0, 1). Throws std::domain_error otherwise. Values that
  // overflow a double are clamped to the largest finite double.
  double quantile(double u) const;
  // log F^-1(u); finite for every u in [0, 1) even when quantile() clamps.
  double log_quantile(double u) const;
  double cdf(double x) const;
  double minimum() const { return quantile(0.0); }

  // a_N = F^-1(1 - 1/N).
  double scale_constant(std::uint64_t n) const;

 private:
  WeightDistribution(Family family, double alpha, double mean)
      : family_(family), alpha_(alpha), mean_(mean) {}

  Family family_;
  double alpha_;
  double mean_;
};

// Count i.i.d. draws quantile(U). If `clamped` is given it is incremented once
// per draw that overflowed and was clamped.
std::vector<double> sample_weights(const WeightDistribution& dist,
                                   std::size_t count, Rng& rng,
                                   std::size_t* clamped = nullptr);

// Ordered limit weights M_i = (W_1 + ... + W_i)^(-1/alpha), W_i ~ Exp(1).
struct LimitWeightSequence {
  double alpha = 1.0;
  std::vector<double> weights;
  std::vector<double> cumulative_exponentials;

  std::size_t size() const { return weights.size(); }
};

LimitWeightSequence limit_weight_sequence(std::size_t k, double alpha,
                                          Rng& rng);
// Same construction from caller-supplied exponentials (all must be > 0).
LimitWeightSequence limit_weight_sequence_from(
    std::span<const double> exponentials, double alpha);

// E M_r = Gamma(r - 1/alpha) / Gamma(r), evaluated through lgamma.
// Throws std::domain_error when r <= 1/alpha (the mean is infinite).
double expected_order_weight(double r, double alpha);

// Gamma(x + a) / Gamma(x) in log space.
double gamma_ratio(double x, double a);

}  // namespace htlpp

#endif  // HTLPP_DISTRIBUTIONS_HPP_
