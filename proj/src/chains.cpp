#include "htlpp/chains.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace htlpp {

bool is_compatible(std::span<const double> y, std::span<const double> y2) {
  if (y.size() != y2.size()) {
    throw std::invalid_argument("is_compatible: dimension mismatch");
  }
  bool le = true, ge = true;
  for (std::size_t c = 0; c < y.size(); ++c) {
    le = le && y[c] <= y2[c];
    ge = ge && y[c] >= y2[c];
  }
  return le || ge;
}

WeightedPointSet::WeightedPointSet(std::size_t dims) : dims_(dims) {
  if (dims < 2) throw std::invalid_argument("WeightedPointSet: dims must be >= 2");
}

void WeightedPointSet::add(std::span<const double> location, double weight) {
  if (location.size() != dims_) {
    throw std::invalid_argument("WeightedPointSet: dimension mismatch");
  }
  for (double c : location) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw std::invalid_argument("WeightedPointSet: location outside [0,1]^d");
    }
  }
  if (!(weight >= 0.0)) throw std::invalid_argument("WeightedPointSet: negative weight");
  if (!weights_.empty() && weight > weights_.back()) {
    throw std::invalid_argument("WeightedPointSet: weights must be nonincreasing");
  }
  coords_.insert(coords_.end(), location.begin(), location.end());
  weights_.push_back(weight);
}

WeightedPointSet WeightedPointSet::prefix(std::size_t k) const {
  k = std::min(k, size());
  WeightedPointSet out(dims_);
  out.coords_.assign(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(k * dims_));
  out.weights_.assign(weights_.begin(), weights_.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Indices sorted lexicographically by location. Throws on duplicates.
std::vector<std::size_t> location_order(const WeightedPointSet& set) {
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto la = set.location(a);
    const auto lb = set.location(b);
    if (std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end())) return true;
    if (std::lexicographical_compare(lb.begin(), lb.end(), la.begin(), la.end())) return false;
    return a < b;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto a = set.location(order[i - 1]);
    const auto b = set.location(order[i]);
    if (std::equal(a.begin(), a.end(), b.begin())) {
      throw std::invalid_argument("max_weight_chain: duplicate locations");
    }
  }
  return order;
}

// Dense ranks of the second coordinate.
std::vector<std::size_t> y_ranks(const WeightedPointSet& set, std::size_t& distinct) {
  std::vector<double> ys(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) ys[i] = set.location(i)[1];
  std::vector<double> sorted = ys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  distinct = sorted.size();
  std::vector<std::size_t> rank(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    rank[i] = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), ys[i]) - sorted.begin());
  }
  return rank;
}

struct Best {
  double value = 0.0;
  std::size_t index = kNone;
};

bool better(const Best& a, const Best& b) {
  if (b.index == kNone) return a.index != kNone;
  if (a.index == kNone) return false;
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

// Fenwick tree over ranks answering prefix maxima of Best.
class PrefixMaxTree {
 public:
  explicit PrefixMaxTree(std::size_t n) : tree_(n + 1) {}
  void update(std::size_t rank, const Best& b) {
    for (std::size_t i = rank + 1; i < tree_.size(); i += i & (~i + 1)) {
      if (better(b, tree_[i])) tree_[i] = b;
    }
  }
  Best query(std::size_t rank) const {
    Best out;
    for (std::size_t i = rank + 1; i > 0; i -= i & (~i + 1)) {
      if (better(tree_[i], out)) out = tree_[i];
    }
    return out;
  }

 private:
  std::vector<Best> tree_;
};

ChainResult collect(const WeightedPointSet& set, const std::vector<Best>& best_at,
                    const std::vector<std::size_t>& prev) {
  ChainResult result;
  Best top;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Best here{best_at[i].value, i};
    if (better(here, top)) top = here;
  }
  if (top.index == kNone) return result;
  result.total = top.value;
  for (std::size_t i = top.index; i != kNone; i = prev[i]) result.indices.push_back(i);
  std::sort(result.indices.begin(), result.indices.end());
  return result;
}

ChainResult chain_2d(const WeightedPointSet& set) {
  const auto order = location_order(set);
  std::size_t distinct = 0;
  const auto rank = y_ranks(set, distinct);
  PrefixMaxTree tree(distinct);
  std::vector<Best> best_at(set.size());
  std::vector<std::size_t> prev(set.size(), kNone);
  for (std::size_t p : order) {
    const Best q = tree.query(rank[p]);
    const double value = q.index == kNone ? set.weight(p) : q.value + set.weight(p);
    prev[p] = q.index;
    best_at[p] = {value, p};
    tree.update(rank[p], best_at[p]);
  }
  return collect(set, best_at, prev);
}

bool dominated(std::span<const double> a, std::span<const double> b) {
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c] > b[c]) return false;
  }
  return true;
}

ChainResult chain_nd(const WeightedPointSet& set) {
  const auto order = location_order(set);
  std::vector<Best> best_at(set.size());
  std::vector<std::size_t> prev(set.size(), kNone);
  for (std::size_t a = 0; a < order.size(); ++a) {
    const std::size_t p = order[a];
    Best q;
    for (std::size_t b = 0; b < a; ++b) {
      const std::size_t r = order[b];
      if (dominated(set.location(r), set.location(p)) && better(best_at[r], q)) {
        q = best_at[r];
      }
    }
    prev[p] = q.index;
    best_at[p] = {q.index == kNone ? set.weight(p) : q.value + set.weight(p), p};
  }
  return collect(set, best_at, prev);
}

}  // namespace

ChainResult max_weight_chain(const WeightedPointSet& set) {
  if (set.empty()) return {};
  return set.dims() == 2 ? chain_2d(set) : chain_nd(set);
}

ChainResult brute_force_chain(const WeightedPointSet& set) {
  const std::size_t k = set.size();
  if (k > kBruteForceMaxPoints) {
    throw std::invalid_argument("brute_force_chain: too many points to enumerate");
  }
  if (k == 0) return {};
  const auto order = location_order(set);
  std::vector<std::uint32_t> compat(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (is_compatible(set.location(i), set.location(j))) compat[i] |= 1U << j;
    }
  }
  const std::uint32_t masks = 1U << k;
  std::vector<char> is_chain(masks, 0);
  is_chain[0] = 1;
  std::uint32_t best_mask = 0;
  double best_total = 0.0;
  bool have = false;
  for (std::uint32_t mask = 1; mask < masks; ++mask) {
    const unsigned top = 31U - static_cast<unsigned>(__builtin_clz(mask));
    const std::uint32_t rest = mask & ~(1U << top);
    if (!is_chain[rest] || (compat[top] & rest) != rest) continue;
    is_chain[mask] = 1;
    // Fold in location order, as the chain solvers do.
    double total = 0.0;
    bool first = true;
    for (std::size_t p : order) {
      if (!(mask >> p & 1U)) continue;
      total = first ? set.weight(p) : total + set.weight(p);
      first = false;
    }
    bool take = !have || total > best_total;
    if (have && total == best_total) {
      // Lexicographic comparison of the ascending index sets.
      for (std::size_t i = 0; i < k; ++i) {
        const bool in_new = mask >> i & 1U, in_old = best_mask >> i & 1U;
        if (in_new == in_old) continue;
        take = in_new;
        break;
      }
    }
    if (take) {
      best_mask = mask;
      best_total = total;
      have = true;
    }
  }
  ChainResult result;
  result.total = best_total;
  for (std::size_t i = 0; i < k; ++i) {
    if (best_mask >> i & 1U) result.indices.push_back(i);
  }
  return result;
}

namespace {

void require_2d(const WeightedPointSet& set, const char* what) {
  if (set.dims() != 2) throw std::invalid_argument(std::string(what) + ": d = 2 only");
}

}  // namespace

std::size_t longest_chain_length(const WeightedPointSet& set) {
  require_2d(set, "longest_chain_length");
  const auto order = location_order(set);
  std::vector<double> piles;
  for (std::size_t p : order) {
    const double y = set.location(p)[1];
    auto it = std::upper_bound(piles.begin(), piles.end(), y);
    if (it == piles.end()) {
      piles.push_back(y);
    } else {
      *it = y;
    }
  }
  return piles.size();
}

std::vector<std::size_t> lis_profile(const WeightedPointSet& set) {
  require_2d(set, "lis_profile");
  const std::size_t k = set.size();
  if (k == 0) return {};
  const auto order = location_order(set);
  std::size_t distinct = 0;
  const auto rank = y_ranks(set, distinct);

  // completion[p] = smallest possible largest index over chains of the
  // current length that end at p; kNone when no such chain exists.
  std::vector<std::size_t> completion(k), next(k);
  std::iota(completion.begin(), completion.end(), std::size_t{0});
  std::vector<std::size_t> first_time{0};  // length 1 is reached at index 0

  std::vector<std::size_t> tree(distinct + 1);
  while (true) {
    std::fill(tree.begin(), tree.end(), kNone);
    std::size_t earliest = kNone;
    for (std::size_t p : order) {
      std::size_t q = kNone;
      for (std::size_t i = rank[p] + 1; i > 0; i -= i & (~i + 1)) q = std::min(q, tree[i]);
      next[p] = q == kNone ? kNone : std::max(p, q);
      earliest = std::min(earliest, next[p]);
      if (completion[p] != kNone) {
        for (std::size_t i = rank[p] + 1; i < tree.size(); i += i & (~i + 1)) {
          tree[i] = std::min(tree[i], completion[p]);
        }
      }
    }
    if (earliest == kNone) break;
    first_time.push_back(earliest);
    completion.swap(next);
  }

  std::vector<std::size_t> profile(k);
  std::size_t level = 0;
  for (std::size_t i = 0; i < k; ++i) {
    while (level < first_time.size() && first_time[level] <= i) ++level;
    profile[i] = level;
  }
  return profile;
}

double remainder_bound(std::span<const double> weights,
                       std::span<const std::size_t> profile, std::size_t cutoff) {
  const std::size_t big_k = std::min(weights.size(), profile.size());
  double total = 0.0;
  for (std::size_t i = cutoff; i < big_k; ++i) {
    const double next = i + 1 < big_k ? weights[i + 1] : 0.0;
    total += static_cast<double>(profile[i]) * (weights[i] - next);
  }
  return total;
}

MonotonePath chain_closure_path(const ChainResult& result,
                                const WeightedPointSet& set) {
  require_2d(set, "chain_closure_path");
  std::vector<std::size_t> pts = result.indices;
  std::sort(pts.begin(), pts.end(), [&](std::size_t a, std::size_t b) {
    const auto la = set.location(a);
    const auto lb = set.location(b);
    return la[0] < lb[0] || (la[0] == lb[0] && la[1] < lb[1]);
  });
  MonotonePath path;
  path.dims = 2;
  path.push_back(0.0, 0.0);
  for (std::size_t p : pts) path.push_back(set.location(p));
  path.push_back(1.0, 1.0);
  return path;
}

}  // namespace htlpp
