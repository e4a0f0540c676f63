#ifndef HTLPP_CHAINS_HPP_
#define HTLPP_CHAINS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "htlpp/stats.hpp"

namespace htlpp {

// y ~ y': comparable in the coordinatewise partial order (either direction).
bool is_compatible(std::span<const double> y, std::span<const double> y2);

// Locations in [0,1]^d with weights in nonincreasing order; the position of a
// point in the set is its weight rank (0 = heaviest).
class WeightedPointSet {
 public:
  explicit WeightedPointSet(std::size_t dims = 2);

  // Appends a point. Throws std::invalid_argument when the location has the
  // wrong dimension, leaves [0,1]^d, or the weight breaks the ordering.
  void add(std::span<const double> location, double weight);
  void add(double x, double y, double weight) {
    const double loc[2] = {x, y};
    add(loc, weight);
  }

  std::size_t dims() const { return dims_; }
  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  std::span<const double> location(std::size_t i) const {
    return {coords_.data() + i * dims_, dims_};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  // The first k points (k clamped to size()).
  WeightedPointSet prefix(std::size_t k) const;

 private:
  std::size_t dims_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

struct ChainResult {
  std::vector<std::size_t> indices;  // ascending
  double total = 0.0;
};

// Exact maximum-weight chain. d = 2: sort by location and run a
// max-weight nondecreasing subsequence over y with a prefix-max Fenwick
// tree, O(k log k). d >= 3: O(k^2) dominance DP. Equal-value predecessors
// resolve to the smaller index. Duplicate locations throw.
ChainResult max_weight_chain(const WeightedPointSet& set);

// Enumerates all 2^k subsets (k <= kBruteForceMaxPoints). Equal totals resolve
// to the lexicographically smallest index set.
ChainResult brute_force_chain(const WeightedPointSet& set);
inline constexpr std::size_t kBruteForceMaxPoints = 20;

// Length of the longest chain (unit weights), patience sorting. d = 2.
std::size_t longest_chain_length(const WeightedPointSet& set);

// L_i = longest chain among the first i points, i = 1..k (returned 0-based:
// out[i-1] = L_i). d = 2. One layered sweep per chain length, each a
// prefix-min Fenwick pass, so O(L_k * k log k).
std::vector<std::size_t> lis_profile(const WeightedPointSet& set);

// U_k = sum_{i=k+1}^{K} L_i (M_i - M_{i+1}) with M_{K+1} = 0 and
// K = min(|weights|, |profile|). Returns 0 when cutoff >= K.
double remainder_bound(std::span<const double> weights,
                       std::span<const std::size_t> profile, std::size_t cutoff);

// Selected points in increasing order framed by (0,0) and (1,1). d = 2.
MonotonePath chain_closure_path(const ChainResult& result,
                                const WeightedPointSet& set);

}  // namespace htlpp

#endif  // HTLPP_CHAINS_HPP_
