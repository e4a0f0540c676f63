#ifndef HTLPP_CONTINUUM_HPP_
#define HTLPP_CONTINUUM_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "htlpp/chains.hpp"
#include "htlpp/distributions.hpp"
#include "htlpp/rng.hpp"

namespace htlpp {

// Top-k truncation of the continuous model: i.i.d. uniform locations carrying
// the ordered limit weights M_1 > ... > M_k.
struct ContinuumSample {
  std::size_t dims = 2;
  std::size_t k = 0;
  WeightedPointSet points{2};
  LimitWeightSequence weights;
};

// Location i and W_i are drawn together, so a larger k with the same seed
// extends a smaller one.
ContinuumSample sample_continuum(std::size_t k, double alpha, std::size_t dims, Rng& rng);

// T_k and its maximizing chain.
std::pair<double, ChainResult> truncated_T(const ContinuumSample& sample);

struct PrmPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Points of the Poisson random measure with intensity dx dy alpha z^(-alpha-1) dz
// restricted to [0,cx] x [0,cy] x [z_min, inf), sorted by z descending.
struct PRMSample {
  double cx = 1.0;
  double cy = 1.0;
  double z_min = 1.0;
  double alpha = 1.0;
  std::vector<PrmPoint> points;

  // Keeps only points with z >= threshold (thinning coupling).
  PRMSample thinned(double threshold) const;
};

PRMSample sample_prm(double cx, double cy, double z_min, double alpha, Rng& rng);

// Threshold whose expected retained count per unit area is `budget`.
double z_min_for_budget(double alpha, double budget);
inline constexpr double kDefaultPointBudget = 5e4;

struct Query {
  double x = 0.0;
  double y = 0.0;
};

// T(x, y): heaviest chain among points in [0,x] x [0,y]. All queries read the
// same realization. Throws std::out_of_range for queries outside the box.
std::vector<double> field_at(const PRMSample& prm, std::span<const Query> queries);
double field_at(const PRMSample& prm, Query query);

// Theta(u, v) = exp(-(u + v) / alpha) T(e^u, e^v); queries are (u, v) pairs.
std::vector<double> theta_at(const PRMSample& prm, std::span<const Query> queries);

struct AiryTrace {
  double tau = 0.0;
  std::vector<double> u_grid;
  std::vector<double> values;
};

// H_u = T(e^u, e^-u) on one PRM over [0, e^tau]^2.
AiryTrace airy_trace(double tau, std::span<const double> u_grid, double z_min,
                     double alpha, Rng& rng);
AiryTrace airy_trace(double tau, std::span<const double> u_grid, const PRMSample& prm);

// Largest single z dominated by (x, y); a one-point chain, so T(x,y) >= this.
double max_single_weight(const PRMSample& prm, Query query);

// Mean of the remainder bound U_k: sum_{i>k} 2 sqrt(i) (E M_i - E M_{i+1}),
// using E L_i ~ 2 sqrt(i). A diagnostic for truncation at k points.
double expected_remainder_bound(std::size_t k, double alpha);

}  // namespace htlpp

#endif  // HTLPP_CONTINUUM_HPP_
