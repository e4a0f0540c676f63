#ifndef HTLPP_LATTICE_HPP_
#define HTLPP_LATTICE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "htlpp/distributions.hpp"
#include "htlpp/rng.hpp"
#include "htlpp/stats.hpp"

namespace htlpp {

// Dense n^d array of nonnegative site weights, d in {2, 3}, row-major with
// the first coordinate slowest. Sites are 0-based here; site (0, ..., 0) is
// site (1, ..., 1) in 1-based notation.
class LatticeGrid {
 public:
  LatticeGrid(int dims, std::size_t side);
  LatticeGrid(int dims, std::size_t side, std::vector<double> weights);

  static LatticeGrid random(int dims, std::size_t side,
                            const WeightDistribution& dist, Rng& rng,
                            std::size_t* clamped = nullptr);

  int dims() const { return dims_; }
  std::size_t side() const { return side_; }
  std::size_t site_count() const { return weights_.size(); }
  std::span<const double> weights() const { return weights_; }
  std::span<double> weights() { return weights_; }

  double at(std::size_t i, std::size_t j) const { return weights_[i * side_ + j]; }
  double& at(std::size_t i, std::size_t j) { return weights_[i * side_ + j]; }

 private:
  int dims_;
  std::size_t side_;
  std::vector<double> weights_;
};

inline constexpr std::uint8_t kNoPredecessor = 0xFF;

struct PassageField {
  int dims = 2;
  std::size_t side = 0;
  std::vector<double> values;
  // Axis along which the optimal path entered each site; kNoPredecessor at
  // the origin.
  std::vector<std::uint8_t> predecessor;

  double corner() const { return values.back(); }
};

using Site = std::array<std::size_t, 2>;

struct LatticePath {
  std::vector<Site> sites;
};

// T(v) = X(v) + max over axis predecessors. Equal candidates resolve to the
// highest axis, so a backtracked path takes its first-axis steps as early as
// possible.
PassageField passage_field(const LatticeGrid& grid);
double passage_time(const LatticeGrid& grid);

// Backtracks from the far corner (2-d only).
LatticePath optimal_path(const PassageField& field);
// Backtracks from an arbitrary site: the optimal path of the sub-grid ending there.
LatticePath optimal_path_to(const PassageField& field, Site end);

// parent[s] is the flat index of the predecessor of site s, -1 at the origin.
std::vector<std::ptrdiff_t> geodesic_tree(const PassageField& field);

// T^(n) / a_(n^d).
double rescaled_passage(const LatticeGrid& grid, const WeightDistribution& dist);

// Exhaustive maximum over all C(2n-2, n-1) paths; d = 2 and n <= 8 only.
double brute_force_passage(const LatticeGrid& grid);
inline constexpr std::size_t kBruteForceMaxSide = 8;

// Vertices (i + 1) / n in [0, 1]^2.
MonotonePath path_to_unit_cube(const LatticePath& path, std::size_t n);

double path_weight(const LatticeGrid& grid, const LatticePath& path);

}  // namespace htlpp

#endif  // HTLPP_LATTICE_HPP_
