#ifndef CALLCTL_TESTS_ORACLES_HPP
#define CALLCTL_TESTS_ORACLES_HPP

// Straight restatements of the admission rules and bounds, kept apart from the
// library so that tests can compare against them. Nothing here uses Network,
// AssignmentState, Policy or the solver.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "callctl/hexnet.hpp"

namespace callctl::oracle {

inline int color_index(CellId c) { return (((c.q - c.r) % 3) + 3) % 3; }

inline bool touching(CellId a, CellId b) {
  const int dq = b.q - a.q;
  const int dr = b.r - a.r;
  return (dq == 1 && dr == 0) || (dq == -1 && dr == 0) || (dq == 0 && dr == 1) ||
         (dq == 0 && dr == -1) || (dq == 1 && dr == -1) || (dq == -1 && dr == 1);
}

/// Reference online simulator. `algorithm` is "greedy", "caco", "caco2" or
/// "partition:x:y"; frequencies are 1-based and 0 means rejected.
class ReferenceSimulator {
 public:
  ReferenceSimulator(std::vector<CellId> cells, int omega, std::string algorithm)
      : cells_(std::move(cells)), omega_(omega), used_(cells_.size()) {
    if (algorithm == "greedy") {
      kind_ = 0;
    } else if (algorithm == "caco2") {
      kind_ = 2;
    } else {
      kind_ = 1;
      x_ = 2;
      y_ = 1;
      if (algorithm.rfind("partition:", 0) == 0) {
        const auto rest = algorithm.substr(10);
        x_ = std::stoi(rest.substr(0, rest.find(':')));
        y_ = std::stoi(rest.substr(rest.find(':') + 1));
      }
    }
  }

  int submit(CellId c) {
    const std::size_t i = static_cast<std::size_t>(
        std::find(cells_.begin(), cells_.end(), c) - cells_.begin());
    const int f = decide(i);
    if (f != 0) used_[i].insert(f);
    return f;
  }

  const std::set<int>& used(std::size_t i) const { return used_[i]; }

 private:
  bool free_at(std::size_t i, int f) const {
    if (used_[i].count(f)) return false;
    for (std::size_t j = 0; j < cells_.size(); ++j) {
      if (touching(cells_[i], cells_[j]) && used_[j].count(f)) return false;
    }
    return true;
  }

  int scan(std::size_t i, int lo, int hi, bool ascending) const {
    if (ascending) {
      for (int f = lo; f <= hi; ++f) {
        if (free_at(i, f)) return f;
      }
    } else {
      for (int f = hi; f >= lo; --f) {
        if (free_at(i, f)) return f;
      }
    }
    return 0;
  }

  int decide(std::size_t i) const {
    const int own = color_index(cells_[i]);
    if (kind_ == 0) return scan(i, 1, omega_, true);
    if (kind_ == 1) {
      const int unit = omega_ / (3 * x_ + y_);
      const int lo = own * x_ * unit + 1;
      const int hi = (own + 1) * x_ * unit;
      int in_own = 0;
      for (int f : used_[i]) in_own += (f >= lo && f <= hi) ? 1 : 0;
      if (in_own < hi - lo + 1) {
        for (int f = lo; f <= hi; ++f) {
          if (!used_[i].count(f)) return f;
        }
      }
      return scan(i, 3 * x_ * unit + 1, omega_, true);
    }
    const int third = omega_ / 3;
    std::set<int> neighbor_colors;
    int degree = 0;
    for (std::size_t j = 0; j < cells_.size(); ++j) {
      if (touching(cells_[i], cells_[j])) {
        ++degree;
        neighbor_colors.insert(color_index(cells_[j]));
      }
    }
    if (degree == 0) return scan(i, 1, omega_, true);
    if (int f = scan(i, own * third + 1, (own + 1) * third, true)) return f;
    int target = (own + 1) % 3;
    bool ascending = false;
    if (neighbor_colors.size() == 1 && degree >= 2) {
      const int y = *neighbor_colors.begin();
      target = 3 - own - y;
      ascending = (own + 1) % 3 == y;
    }
    return scan(i, target * third + 1, (target + 1) * third, ascending);
  }

  std::vector<CellId> cells_;
  int omega_;
  int kind_ = 0;
  int x_ = 0;
  int y_ = 0;
  std::vector<std::set<int>> used_;
};

/// max sum x_i with 0 <= x_i <= min(R_i, omega) and every clique of the
/// adjacency (given as a matrix) summing to at most omega, by enumeration.
inline int brute_clique_bound(const std::vector<std::vector<bool>>& adj,
                              int omega, const std::vector<int>& demands) {
  const std::size_t n = demands.size();
  std::vector<unsigned> cliques;
  for (unsigned m = 1; m < (1U << n); ++m) {
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u) {
      for (std::size_t v = u + 1; v < n && ok; ++v) {
        if ((m >> u & 1U) && (m >> v & 1U) && !adj[u][v]) ok = false;
      }
    }
    if (ok) cliques.push_back(m);
  }
  std::vector<int> x(n, 0);
  int best = 0;
  for (;;) {
    bool feasible = true;
    for (unsigned m : cliques) {
      int s = 0;
      for (std::size_t u = 0; u < n; ++u) s += (m >> u & 1U) ? x[u] : 0;
      if (s > omega) feasible = false;
    }
    if (feasible) {
      int s = 0;
      for (int v : x) s += v;
      best = std::max(best, s);
    }
    std::size_t k = 0;
    while (k < n && x[k] == std::min(demands[k], omega)) x[k++] = 0;
    if (k == n) break;
    ++x[k];
  }
  return best;
}

}  // namespace callctl::oracle

#endif  // CALLCTL_TESTS_ORACLES_HPP
