#include "htlpp/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace htlpp {

namespace {

std::size_t site_count_for(int dims, std::size_t side) {
  if (dims != 2 && dims != 3) {
    throw std::invalid_argument("LatticeGrid: dims must be 2 or 3");
  }
  if (side < 1) throw std::invalid_argument("LatticeGrid: side must be >= 1");
  std::size_t count = side * side;
  if (dims == 3) count *= side;
  return count;
}

void require_2d(const PassageField& field, const char* what) {
  if (field.dims != 2) throw std::invalid_argument(std::string(what) + ": d = 2 only");
}

}  // namespace

LatticeGrid::LatticeGrid(int dims, std::size_t side)
    : dims_(dims), side_(side), weights_(site_count_for(dims, side), 0.0) {}

LatticeGrid::LatticeGrid(int dims, std::size_t side, std::vector<double> weights)
    : dims_(dims), side_(side), weights_(std::move(weights)) {
  if (weights_.size() != site_count_for(dims, side)) {
    throw std::invalid_argument("LatticeGrid: weight count must be side^dims");
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("LatticeGrid: negative weight");
  }
}

LatticeGrid LatticeGrid::random(int dims, std::size_t side,
                                const WeightDistribution& dist, Rng& rng,
                                std::size_t* clamped) {
  const std::size_t count = site_count_for(dims, side);
  return LatticeGrid(dims, side, sample_weights(dist, count, rng, clamped));
}

PassageField passage_field(const LatticeGrid& grid) {
  const std::size_t n = grid.side();
  const auto x = grid.weights();
  PassageField field;
  field.dims = grid.dims();
  field.side = n;
  field.values.resize(x.size());
  field.predecessor.resize(x.size(), kNoPredecessor);
  auto& t = field.values;
  auto& pred = field.predecessor;

  if (grid.dims() == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t s = i * n + j;
        double best = 0.0;
        std::uint8_t axis = kNoPredecessor;
        if (i > 0) {
          best = t[s - n];
          axis = 0;
        }
        if (j > 0 && (axis == kNoPredecessor || t[s - 1] >= best)) {
          best = t[s - 1];
          axis = 1;
        }
        t[s] = best + x[s];
        pred[s] = axis;
      }
    }
    return field;
  }

  const std::size_t stride[3] = {n * n, n, 1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t s = i * stride[0] + j * stride[1] + k;
        const bool has[3] = {i > 0, j > 0, k > 0};
        double best = 0.0;
        std::uint8_t axis = kNoPredecessor;
        for (std::uint8_t a = 0; a < 3; ++a) {
          if (!has[a]) continue;
          const double cand = t[s - stride[a]];
          if (axis == kNoPredecessor || cand >= best) {
            best = cand;
            axis = a;
          }
        }
        t[s] = best + x[s];
        pred[s] = axis;
      }
    }
  }
  return field;
}

double passage_time(const LatticeGrid& grid) { return passage_field(grid).corner(); }

LatticePath optimal_path_to(const PassageField& field, Site end) {
  require_2d(field, "optimal_path");
  const std::size_t n = field.side;
  if (end[0] >= n || end[1] >= n) throw std::out_of_range("optimal_path: site outside grid");
  LatticePath path;
  path.sites.reserve(end[0] + end[1] + 1);
  Site cur = end;
  path.sites.push_back(cur);
  while (true) {
    const std::uint8_t axis = field.predecessor[cur[0] * n + cur[1]];
    if (axis == kNoPredecessor) break;
    --cur[axis];
    path.sites.push_back(cur);
  }
  std::reverse(path.sites.begin(), path.sites.end());
  return path;
}

LatticePath optimal_path(const PassageField& field) {
  return optimal_path_to(field, {field.side - 1, field.side - 1});
}

std::vector<std::ptrdiff_t> geodesic_tree(const PassageField& field) {
  require_2d(field, "geodesic_tree");
  const std::size_t n = field.side;
  std::vector<std::ptrdiff_t> parent(n * n, -1);
  for (std::size_t s = 0; s < parent.size(); ++s) {
    switch (field.predecessor[s]) {
      case 0:
        parent[s] = static_cast<std::ptrdiff_t>(s - n);
        break;
      case 1:
        parent[s] = static_cast<std::ptrdiff_t>(s - 1);
        break;
      default:
        break;
    }
  }
  return parent;
}

double rescaled_passage(const LatticeGrid& grid, const WeightDistribution& dist) {
  std::uint64_t sites = 1;
  for (int d = 0; d < grid.dims(); ++d) sites *= grid.side();
  return passage_time(grid) / dist.scale_constant(sites);
}

namespace {

double best_from(const LatticeGrid& grid, std::size_t i, std::size_t j, double acc) {
  const std::size_t n = grid.side();
  acc += grid.at(i, j);
  if (i == n - 1 && j == n - 1) return acc;
  double best = 0.0;
  bool any = false;
  if (i + 1 < n) {
    best = best_from(grid, i + 1, j, acc);
    any = true;
  }
  if (j + 1 < n) {
    const double right = best_from(grid, i, j + 1, acc);
    best = any ? std::max(best, right) : right;
  }
  return best;
}

}  // namespace

double brute_force_passage(const LatticeGrid& grid) {
  if (grid.dims() != 2) throw std::invalid_argument("brute_force_passage: d = 2 only");
  if (grid.side() > kBruteForceMaxSide) {
    throw std::invalid_argument("brute_force_passage: side too large to enumerate");
  }
  return best_from(grid, 0, 0, 0.0);
}

MonotonePath path_to_unit_cube(const LatticePath& path, std::size_t n) {
  MonotonePath out;
  out.dims = 2;
  out.coords.reserve(path.sites.size() * 2);
  const double scale = 1.0 / static_cast<double>(n);
  for (const Site& s : path.sites) {
    out.push_back(static_cast<double>(s[0] + 1) * scale,
                  static_cast<double>(s[1] + 1) * scale);
  }
  return out;
}

double path_weight(const LatticeGrid& grid, const LatticePath& path) {
  double total = 0.0;
  for (const Site& s : path.sites) total += grid.at(s[0], s[1]);
  return total;
}

}  // namespace htlpp
