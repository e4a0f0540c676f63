#ifndef HTLPP_STATS_HPP_
#define HTLPP_STATS_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "htlpp/rng.hpp"

namespace htlpp {

class EmpiricalSample {
 public:
  EmpiricalSample() = default;
  explicit EmpiricalSample(std::vector<double> values, bool sorted = false)
      : values_(std::move(values)), sorted_(sorted) {}

  void push_back(double v) {
    values_.push_back(v);
    sorted_ = false;
  }
  void sort() {
    if (!sorted_) std::sort(values_.begin(), values_.end());
    sorted_ = true;
  }
  bool sorted() const { return sorted_; }
  bool empty() const { return values_.empty(); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  double mean() const;
  // Standard error of the mean.
  double standard_error() const;
  // Linear-interpolated quantile; sorts a copy when unsorted.
  double quantile(double p) const;

 private:
  std::vector<double> values_;
  bool sorted_ = false;
};

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|. Throws
// std::invalid_argument on an empty sample.
double ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b);

// Mean of |x|^beta.
double empirical_moment(const EmpiricalSample& sample, double beta);

// Ordered vertices of a coordinatewise nondecreasing path in [0,1]^d, stored
// flat (vertex i occupies coords[i*dims .. i*dims+dims)).
struct MonotonePath {
  std::size_t dims = 2;
  std::vector<double> coords;

  std::size_t size() const { return dims == 0 ? 0 : coords.size() / dims; }
  bool empty() const { return coords.empty(); }
  std::span<const double> vertex(std::size_t i) const {
    return {coords.data() + i * dims, dims};
  }
  void push_back(std::span<const double> v) {
    coords.insert(coords.end(), v.begin(), v.end());
  }
  void push_back(double x, double y) {
    coords.push_back(x);
    coords.push_back(y);
  }
  bool is_monotone() const;
};

inline constexpr double kDefaultDensifyStep = 1e-3;

// Hausdorff distance in the summed convention:
//   d(P, Q) = sup_{p in P} inf_{q in Q} |p - q| + sup_{q in Q} inf_{p in P} |p - q|
// which is at most twice the usual max-of-directed-distances. Both paths are
// treated as polylines; points of each are sampled every `step` along the
// segments and measured exactly against the other polyline, so the result is
// within `step` of the continuum value.
double hausdorff_distance(const MonotonePath& p, const MonotonePath& q,
                          double step = kDefaultDensifyStep);
// One directed term: sup over P of distance to Q.
double directed_hausdorff(const MonotonePath& p, const MonotonePath& q,
                          double step = kDefaultDensifyStep);

// Stream for replicate `index` under `master_seed`. Distinct from Rng(master).
Rng split_stream(std::uint64_t master_seed, std::uint64_t index);

// Runs fn(i) for i in [0, count) on `workers` threads. Each call must write
// only to its own slot; results then do not depend on the worker count.
template <typename Fn>
void for_each_replicate(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            // Stop handing out work; the first failure is rethrown below.
            const std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace htlpp

#endif  // HTLPP_STATS_HPP_
