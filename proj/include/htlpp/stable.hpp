#ifndef HTLPP_STABLE_HPP_
#define HTLPP_STABLE_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "htlpp/rng.hpp"

namespace htlpp {

// alpha-stable law with Levy measure c+ x^(-alpha-1) dx on x > 0 and
// c- |x|^(-alpha-1) dx on x < 0. Jumps larger than delta in magnitude are
// simulated exactly; the rest is a Gaussian with matched mean and variance.
struct StableSpec {
  double alpha = 1.5;
  double c_plus = 1.0;
  double c_minus = 0.0;
  double delta = 0.1;

  void validate() const;
  // Expected number of jumps with |size| > delta per unit time.
  double jump_rate() const;
  // Variance per unit time of the jumps with |size| < delta.
  double small_jump_variance() const;
  // Drift per unit time of the simulated process: the mean of the small jumps
  // for alpha < 1, the compensator of jumps in (delta, 1] for alpha = 1, and
  // minus the mean of the large jumps for alpha > 1 (a zero-mean process).
  double drift() const;
};

// delta such that jump_rate() equals `jumps_per_unit`.
double delta_for_budget(double alpha, double c_plus, double c_minus, double jumps_per_unit);
inline constexpr double kDefaultJumpBudget = 1000.0;
inline constexpr std::size_t kDefaultStepsPerUnit = 50;

struct Jump {
  double time = 0.0;
  double size = 0.0;
};

// n processes on [0, blocks] sampled at m steps per unit time.
struct ProcessGrid {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t blocks = 0;
  // increments[i * steps() + j] = S^i over step j.
  std::vector<double> increments;
  // Jumps above delta, per process, in time order.
  std::vector<std::vector<Jump>> jumps;

  std::size_t steps() const { return m * blocks; }
  std::span<const double> row(std::size_t i) const {
    return {increments.data() + i * steps(), steps()};
  }
};

// Each process and unit block owns two streams split from one draw of `rng`:
// jumps are generated largest first, so lowering delta on the same seed keeps
// every earlier jump and only adds smaller ones. Horizon defaults to n.
ProcessGrid simulate_processes(const StableSpec& spec, std::size_t n, std::size_t m,
                               Rng& rng, std::size_t blocks = 0);

// Sums groups of `factor` consecutive steps: the same realization on a
// coarser time grid.
ProcessGrid coarsen(const ProcessGrid& grid, std::size_t factor);

// Discretized L(n, t): sup over partition times on the step grid of
// sum_i (S^i_{t_i} - S^i_{t_(i-1)}), t_0 = 0, t_n = horizon.
double directed_L(const ProcessGrid& grid);

// (alpha / c+)^(1/alpha) n^(-2/alpha) L.
double rescaled_L(const ProcessGrid& grid, const StableSpec& spec);

// X(i, b) = sup over s <= t in block b of S^i_t - S^i_s, on the step grid.
// Row-major, n x blocks.
std::vector<double> range_sup_weights(const ProcessGrid& grid);

// Lattice passage time of the range-sup grid; bounds directed_L from above.
double directed_L_upper(const ProcessGrid& grid);

// Lower bound from the k largest positive jumps: find the lattice path that
// is optimal when each block holds only its share of those jumps, then solve
// the partition problem restricted to that corridor of blocks.
double directed_L_lower(const ProcessGrid& grid, std::size_t k);

// (x, x^alpha * P(sample > x)) for each x. Throws on an empty sample.
std::vector<std::pair<double, double>> tail_estimate(std::span<const double> samples,
                                                     std::span<const double> x_grid,
                                                     double alpha);

}  // namespace htlpp

#endif  // HTLPP_STABLE_HPP_
