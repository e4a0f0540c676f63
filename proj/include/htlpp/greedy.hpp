#ifndef HTLPP_GREEDY_HPP_
#define HTLPP_GREEDY_HPP_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "htlpp/distributions.hpp"
#include "htlpp/rng.hpp"
#include "htlpp/stats.hpp"

namespace htlpp {

// The tail-index-zero limit path. Vertices run from the origin to (1,...,1),
// strictly increasing in every coordinate. Every unresolved sub-box between
// consecutive vertices has L-infinity diameter below eps.
struct GreedyPath {
  double eps = 0.0;
  MonotonePath vertices;

  std::size_t dims() const { return vertices.dims; }
  std::size_t size() const { return vertices.size(); }
};

// Recursive construction: a uniform point in the current box splits it into
// a lower and an upper sub-box, recursing until the box diameter is below
// eps. Each node draws from its own key (derived from one root draw on
// `rng`), so a smaller eps on the same seed refines the same path.
GreedyPath greedy_path(double eps, std::size_t dims, Rng& rng);

// Sequential filter: keep a point iff it is compatible with every point kept
// so far. Points are stored flat with `dims` coordinates each.
std::vector<std::size_t> greedy_from_points(std::span<const double> coords,
                                            std::size_t dims);

// G(x): the path read as a function, linear between vertices. d = 2.
double measure_cdf(const GreedyPath& path, double x);
// G^-1(y): the same with the axes exchanged.
double inverse_measure_cdf(const GreedyPath& path, double y);

// beta(q) = 2 / (q + 1) - 1, q > -1.
double beta_exponent(double q);
// m(q, theta) = 2 / ((1 + q)(1 + theta)), q, theta > -1.
double moment_function(double q, double theta);

enum class SpectrumStatus { interior, empty };

struct SpectrumPoint {
  double a = 0.0;
  double f = 0.0;
  SpectrumStatus status = SpectrumStatus::empty;
};

inline const double kSpectrumLow = 3.0 - 2.0 * std::sqrt(2.0);
inline const double kSpectrumHigh = 3.0 + 2.0 * std::sqrt(2.0);

// f(a) = sqrt(8a) - a - 1 on [3 - 2 sqrt 2, 3 + 2 sqrt 2]; 0 and empty outside.
SpectrumPoint spectrum(double a);

struct LegendreResult {
  double value = 0.0;
  double minimizer = 0.0;
};

// inf over q > -1 of a q + beta(q), by golden-section search. Independent of
// the closed form in spectrum().
LegendreResult legendre_check(double a);

// E chi^2 for chi = V~^q V^b + (1 - V~)^q (1 - V)^b, q, b > -1/2.
double chi_second_moment(double q, double beta);

struct LocalDimension {
  double x = 0.0;
  double exponent = 0.0;
};

// log mu(I) / log r for the interval I of length r centred at each of
// `count` evenly spaced points in [r, 1 - r]. Requires 0 < r < 1/4 and
// path.eps <= r / 16. d = 2.
std::vector<LocalDimension> coarse_local_dimensions(const GreedyPath& path, double r,
                                                    std::size_t count = 256);

struct DominanceEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
};

// Monte Carlo frequency of M_r > sum_{i>r} M_i among n^2 draws of a slowly
// varying law. The comparison is done on log weights, so draws beyond the
// double range are handled without clamping.
DominanceEstimate dominance_probability(const WeightDistribution& dist, std::size_t n,
                                        std::size_t r, std::size_t reps, Rng& rng);

}  // namespace htlpp

#endif  // HTLPP_GREEDY_HPP_
