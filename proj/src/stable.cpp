#include "htlpp/stable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "htlpp/stats.hpp"

namespace htlpp {

void StableSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("stable: alpha must lie in (0, 2)");
  if (!(c_plus > 0.0)) throw std::domain_error("stable: c_plus must be > 0");
  if (!(c_minus >= 0.0)) throw std::domain_error("stable: c_minus must be >= 0");
  if (!(delta > 0.0)) throw std::domain_error("stable: delta must be > 0");
}

double StableSpec::jump_rate() const {
  return (c_plus + c_minus) / alpha * std::pow(delta, -alpha);
}

double StableSpec::small_jump_variance() const {
  return (c_plus + c_minus) * std::pow(delta, 2.0 - alpha) / (2.0 - alpha);
}

double StableSpec::drift() const {
  const double skew = c_plus - c_minus;
  if (alpha < 1.0) return skew * std::pow(delta, 1.0 - alpha) / (1.0 - alpha);
  if (alpha == 1.0) return skew * std::log(delta);
  return -skew * std::pow(delta, 1.0 - alpha) / (alpha - 1.0);
}

double delta_for_budget(double alpha, double c_plus, double c_minus, double jumps_per_unit) {
  if (!(jumps_per_unit > 0.0)) throw std::domain_error("delta_for_budget: budget must be > 0");
  return std::pow((c_plus + c_minus) / (alpha * jumps_per_unit), 1.0 / alpha);
}

ProcessGrid simulate_processes(const StableSpec& spec, std::size_t n, std::size_t m,
                               Rng& rng, std::size_t blocks) {
  spec.validate();
  if (n < 1 || m < 1) throw std::domain_error("simulate_processes: n and m must be >= 1");
  if (blocks == 0) blocks = n;
  ProcessGrid grid;
  grid.n = n;
  grid.m = m;
  grid.blocks = blocks;
  grid.increments.assign(n * grid.steps(), 0.0);
  grid.jumps.resize(n);

  const double total_c = spec.c_plus + spec.c_minus;
  const double p_plus = spec.c_plus / total_c;
  const double dt = 1.0 / static_cast<double>(m);
  const double step_mean = spec.drift() * dt;
  const double step_sd = std::sqrt(spec.small_jump_variance() * dt);
  const std::uint64_t seed = rng.next_u64();

  for (std::size_t i = 0; i < n; ++i) {
    double* row = grid.increments.data() + i * grid.steps();
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::uint64_t cell = i * blocks + b;
      Rng gauss = split_stream(seed, 2 * cell + 1);
      for (std::size_t j = 0; j < m; ++j) {
        row[b * m + j] = step_mean + step_sd * gauss.normal();
      }
      // Magnitudes in decreasing order: |J_k| = (alpha Gamma_k / c)^(-1/alpha).
      Rng jump_rng = split_stream(seed, 2 * cell);
      std::vector<Jump> block_jumps;
      double arrival = 0.0;
      while (true) {
        arrival += jump_rng.exponential();
        const double magnitude = std::pow(spec.alpha * arrival / total_c, -1.0 / spec.alpha);
        if (magnitude <= spec.delta) break;
        const double offset = jump_rng.uniform();
        const double size = jump_rng.uniform() < p_plus ? magnitude : -magnitude;
        block_jumps.push_back({static_cast<double>(b) + offset, size});
        const auto step = std::min(m - 1, static_cast<std::size_t>(offset * static_cast<double>(m)));
        row[b * m + step] += size;
      }
      std::sort(block_jumps.begin(), block_jumps.end(),
                [](const Jump& a, const Jump& c) { return a.time < c.time; });
      grid.jumps[i].insert(grid.jumps[i].end(), block_jumps.begin(), block_jumps.end());
    }
  }
  return grid;
}

ProcessGrid coarsen(const ProcessGrid& grid, std::size_t factor) {
  if (factor < 1 || grid.m % factor != 0) {
    throw std::invalid_argument("coarsen: factor must divide m");
  }
  ProcessGrid out;
  out.n = grid.n;
  out.m = grid.m / factor;
  out.blocks = grid.blocks;
  out.jumps = grid.jumps;
  out.increments.assign(out.n * out.steps(), 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto src = grid.row(i);
    for (std::size_t j = 0; j < out.steps(); ++j) {
      double s = 0.0;
      for (std::size_t f = 0; f < factor; ++f) s += src[j * factor + f];
      out.increments[i * out.steps() + j] = s;
    }
  }
  return out;
}

double directed_L(const ProcessGrid& grid) {
  if (grid.n == 0) return 0.0;
  const std::size_t steps = grid.steps();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  // d[t]: best value with the current process finishing at time index t.
  std::vector<double> d(steps + 1, neg_inf);
  d[0] = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto inc = grid.row(i);
    for (std::size_t t = 1; t <= steps; ++t) d[t] = std::max(d[t], d[t - 1] + inc[t - 1]);
  }
  return d[steps];
}

double rescaled_L(const ProcessGrid& grid, const StableSpec& spec) {
  const double n = static_cast<double>(grid.n);
  return std::pow(spec.alpha / spec.c_plus, 1.0 / spec.alpha) *
         std::pow(n, -2.0 / spec.alpha) * directed_L(grid);
}

std::vector<double> range_sup_weights(const ProcessGrid& grid) {
  std::vector<double> x(grid.n * grid.blocks, 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto inc = grid.row(i);
    for (std::size_t b = 0; b < grid.blocks; ++b) {
      double run = 0.0, best = 0.0;
      for (std::size_t j = 0; j < grid.m; ++j) {
        run = std::max(run, 0.0) + inc[b * grid.m + j];
        best = std::max(best, run);
      }
      x[i * grid.blocks + b] = best;
    }
  }
  return x;
}

namespace {

// Rectangular lattice passage with a backtracked optimal path; rows are
// processes, columns are blocks. path[i] = {first block, last block} of row i.
double rect_passage(const std::vector<double>& x, std::size_t rows, std::size_t cols,
                    std::vector<std::pair<std::size_t, std::size_t>>* path) {
  std::vector<double> t(rows * cols);
  std::vector<std::uint8_t> from(rows * cols, 2);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t s = i * cols + j;
      double best = 0.0;
      std::uint8_t axis = 2;
      if (i > 0) {
        best = t[s - cols];
        axis = 0;
      }
      if (j > 0 && (axis == 2 || t[s - 1] >= best)) {
        best = t[s - 1];
        axis = 1;
      }
      t[s] = best + x[s];
      from[s] = axis;
    }
  }
  if (path != nullptr) {
    path->assign(rows, {cols, 0});
    std::size_t i = rows - 1, j = cols - 1;
    while (true) {
      auto& span = (*path)[i];
      span.first = std::min(span.first, j);
      span.second = std::max(span.second, j);
      const std::uint8_t axis = from[i * cols + j];
      if (axis == 2) break;
      if (axis == 0) {
        --i;
      } else {
        --j;
      }
    }
  }
  return t.back();
}

}  // namespace

double directed_L_upper(const ProcessGrid& grid) {
  return rect_passage(range_sup_weights(grid), grid.n, grid.blocks, nullptr);
}

double directed_L_lower(const ProcessGrid& grid, std::size_t k) {
  struct Ranked {
    double size;
    std::size_t process;
    std::size_t block;
  };
  std::vector<Ranked> positive;
  for (std::size_t i = 0; i < grid.n; ++i) {
    for (const Jump& j : grid.jumps[i]) {
      if (j.size > 0.0) {
        const auto block = std::min(grid.blocks - 1, static_cast<std::size_t>(j.time));
        positive.push_back({j.size, i, block});
      }
    }
  }
  k = std::min(k, positive.size());
  std::partial_sort(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(k),
                    positive.end(), [](const Ranked& a, const Ranked& b) { return a.size > b.size; });
  std::vector<double> x(grid.n * grid.blocks, 0.0);
  for (std::size_t r = 0; r < k; ++r) x[positive[r].process * grid.blocks + positive[r].block] += positive[r].size;

  std::vector<std::pair<std::size_t, std::size_t>> corridor;
  rect_passage(x, grid.n, grid.blocks, &corridor);

  // Partition DP with process i confined to time indices of its blocks.
  const std::size_t m = grid.m;
  const std::size_t steps = grid.steps();
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> d(steps + 1, neg_inf), next(steps + 1);
  d[0] = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i) {
    const auto inc = grid.row(i);
    const std::size_t lo = corridor[i].first * m;
    const std::size_t hi = (corridor[i].second + 1) * m;
    std::fill(next.begin(), next.end(), neg_inf);
    for (std::size_t t = lo; t <= hi; ++t) {
      next[t] = d[t];
      if (t > lo) next[t] = std::max(next[t], next[t - 1] + inc[t - 1]);
    }
    d.swap(next);
  }
  return d[steps];
}

std::vector<std::pair<double, double>> tail_estimate(std::span<const double> samples,
                                                     std::span<const double> x_grid,
                                                     double alpha) {
  if (samples.empty()) throw std::invalid_argument("tail_estimate: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    out.emplace_back(x, std::pow(x, alpha) * static_cast<double>(above) / n);
  }
  return out;
}

}  // namespace htlpp
