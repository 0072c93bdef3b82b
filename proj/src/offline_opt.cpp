#include "callctl/offline_opt.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>

#include "callctl/error.hpp"

namespace callctl {

namespace {

std::vector<std::size_t> members(VertexMask mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

VertexMask bit(std::size_t v) { return VertexMask{1} << v; }

VertexMask all_vertices(std::size_t n) {
  return n >= 32 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}

// Bron-Kerbosch with pivoting over an explicit neighborhood function.
template <typename Neighbors, typename Emit>
void bron_kerbosch(VertexMask r, VertexMask p, VertexMask x,
                   const Neighbors& nbrs, const Emit& emit) {
  if (p == 0 && x == 0) {
    emit(r);
    return;
  }
  const VertexMask px = p | x;
  std::size_t pivot = static_cast<std::size_t>(std::countr_zero(px));
  int best = -1;
  for (std::size_t u : members(px)) {
    const int deg = std::popcount(p & nbrs(u));
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  }
  for (std::size_t v : members(p & ~nbrs(pivot))) {
    bron_kerbosch(r | bit(v), p & nbrs(v), x & nbrs(v), nbrs, emit);
    p &= ~bit(v);
    x |= bit(v);
  }
}

bool lex_less(VertexMask a, VertexMask b) {
  const auto ma = members(a);
  const auto mb = members(b);
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(),
                                      mb.end());
}

void check_demands(const InterferenceGraph& g, int omega,
                   std::span<const int> demands) {
  if (demands.size() != g.size()) {
    throw ContractViolation("demand vector has " +
                            std::to_string(demands.size()) +
                            " entries for " + std::to_string(g.size()) +
                            " cells");
  }
  if (omega <= 0) throw ContractViolation("omega must be positive");
  for (int d : demands) {
    if (d < 0) throw ContractViolation("negative demand");
  }
}

/// Disjoint cliques covering every vertex, carved out of maximal cliques
/// (largest first). Each block remembers the maximal clique it came from.
struct CliqueCover {
  std::vector<VertexMask> blocks;
  std::vector<std::size_t> source;
};

CliqueCover greedy_clique_cover(const InterferenceGraph& g,
                                const std::vector<VertexMask>& cliques) {
  std::vector<std::size_t> order(cliques.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return std::popcount(cliques[a]) > std::popcount(cliques[b]);
  });
  CliqueCover cover;
  VertexMask uncovered = all_vertices(g.size());
  for (std::size_t k : order) {
    const VertexMask block = cliques[k] & uncovered;
    if (block == 0) continue;
    cover.blocks.push_back(block);
    cover.source.push_back(k);
    uncovered &= ~block;
  }
  return cover;
}

// Integer program max sum x_i, 0 <= x_i <= R_i, sum over each maximal clique
// <= budget, solved exactly by dynamic programming over vertices in index
// order. The only state that matters for the undecided vertices is how much
// of each "open" clique (one with decided and undecided members) is used.
class CliqueRelaxation {
 public:
  explicit CliqueRelaxation(const InterferenceGraph& g)
      : n_(g.size()),
        cliques_(maximal_cliques(g)),
        containing_(g.size()),
        open_(g.size() + 1) {
    for (std::size_t k = 0; k < cliques_.size(); ++k) {
      const auto verts = members(cliques_[k]);
      for (std::size_t v : verts) containing_[v].push_back(k);
      for (std::size_t p = verts.front() + 1; p <= verts.back(); ++p) {
        open_[p].push_back(k);
      }
    }
  }

  int solve(int budget, std::span<const int> demands) {
    budget_ = budget;
    demands_ = demands;
    used_.assign(cliques_.size(), 0);
    memo_.assign(n_ + 1, {});
    return visit(0);
  }

 private:
  int visit(std::size_t v) {
    if (v == n_) return 0;
    std::vector<int> key;
    key.reserve(open_[v].size());
    for (std::size_t k : open_[v]) key.push_back(used_[k]);
    if (auto it = memo_[v].find(key); it != memo_[v].end()) return it->second;

    int room = demands_[v];
    for (std::size_t k : containing_[v]) {
      room = std::min(room, budget_ - used_[k]);
    }
    int best = 0;
    for (int x = room; x >= 0; --x) {
      for (std::size_t k : containing_[v]) used_[k] += x;
      best = std::max(best, x + visit(v + 1));
      for (std::size_t k : containing_[v]) used_[k] -= x;
    }
    memo_[v].emplace(std::move(key), best);
    return best;
  }

  std::size_t n_;
  std::vector<VertexMask> cliques_;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::vector<std::size_t>> open_;
  int budget_ = 0;
  std::span<const int> demands_;
  std::vector<int> used_;
  std::vector<std::map<std::vector<int>, int>> memo_;
};

class MultiplicitySearch {
 public:
  MultiplicitySearch(const InterferenceGraph& g, int omega,
                     std::span<const int> demands)
      : sets_(maximal_independent_sets(g)),
        relaxation_(g),
        residual_(demands.begin(), demands.end()),
        scratch_(demands.size(), 0),
        mult_(sets_.size(), 0),
        best_mult_(sets_.size(), 0) {
    cover_ = greedy_clique_cover(g, maximal_cliques(g)).blocks;
    for (VertexMask s : sets_) set_members_.push_back(members(s));
    suffix_union_.assign(sets_.size() + 1, 0);
    for (std::size_t j = sets_.size(); j-- > 0;) {
      suffix_union_[j] = suffix_union_[j + 1] | sets_[j];
    }
    ceiling_ = relaxation_.solve(omega, demands);
    dfs(0, omega, 0);
  }

  const std::vector<VertexMask>& sets() const { return sets_; }
  const std::vector<int>& best_multiplicities() const { return best_mult_; }

 private:
  VertexMask positive(std::size_t j) const {
    VertexMask p = 0;
    for (VertexMask m = suffix_union_[j]; m != 0; m &= m - 1) {
      const auto i = static_cast<std::size_t>(std::countr_zero(m));
      if (residual_[i] > 0) p |= bit(i);
    }
    return p;
  }

  int sum_residual(VertexMask m) const {
    int total = 0;
    for (; m != 0; m &= m - 1) total += residual_[std::countr_zero(m)];
    return total;
  }

  // Cheap bound on what the remaining budget can still add.
  long quick_bound(std::size_t j, int budget, VertexMask p) const {
    int widest = 0;
    for (std::size_t k = j; k < sets_.size(); ++k) {
      widest = std::max(widest, std::popcount(sets_[k] & p));
    }
    int by_cliques = 0;
    for (VertexMask block : cover_) {
      by_cliques += std::min(budget, sum_residual(block & p));
    }
    return std::min<long>({sum_residual(p),
                           static_cast<long>(budget) * widest, by_cliques});
  }

  // Clique relaxation of the residual instance over the cells still coverable.
  int tight_bound(int budget, VertexMask p) {
    for (std::size_t i = 0; i < residual_.size(); ++i) {
      scratch_[i] = (p >> i) & 1U ? residual_[i] : 0;
    }
    return relaxation_.solve(budget, scratch_);
  }

  void dfs(std::size_t j, int budget, int value) {
    if (best_ == ceiling_) return;
    const VertexMask p = j < sets_.size() ? positive(j) : 0;
    if (j == sets_.size() || budget == 0 || p == 0) {
      if (value > best_) {
        best_ = value;
        best_mult_ = mult_;
      }
      return;
    }
    if (value + quick_bound(j, budget, p) <= best_) return;
    if (best_ >= 0 && value + tight_bound(budget, p) <= best_) return;

    const auto& cells = set_members_[j];
    int cap = 0;
    for (std::size_t i : cells) cap = std::max(cap, residual_[i]);
    cap = std::min(cap, budget);

    std::array<int, kMaxGraphVertices> taken{};
    for (int t = cap; t >= 0; --t) {
      int gain = 0;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        taken[k] = std::min(residual_[cells[k]], t);
        residual_[cells[k]] -= taken[k];
        gain += taken[k];
      }
      mult_[j] = t;
      dfs(j + 1, budget - t, value + gain);
      mult_[j] = 0;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        residual_[cells[k]] += taken[k];
      }
    }
  }

  std::vector<VertexMask> sets_;
  std::vector<std::vector<std::size_t>> set_members_;
  std::vector<VertexMask> suffix_union_;
  std::vector<VertexMask> cover_;
  CliqueRelaxation relaxation_;
  std::vector<int> residual_;
  std::vector<int> scratch_;
  std::vector<int> mult_;
  std::vector<int> best_mult_;
  int ceiling_ = 0;
  int best_ = -1;
};

OptimumWitness witness_from_multiplicities(std::size_t n,
                                           std::span<const int> demands,
                                           const std::vector<VertexMask>& sets,
                                           const std::vector<int>& mult) {
  OptimumWitness w;
  w.per_cell.assign(n, 0);
  w.assignment.assign(n, {});
  Frequency next = 1;
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (int copy = 0; copy < mult[j]; ++copy, ++next) {
      for (std::size_t i : members(sets[j])) {
        if (w.per_cell[i] < demands[i]) {
          w.assignment[i].push_back(next);
          ++w.per_cell[i];
        }
      }
    }
  }
  w.total = std::accumulate(w.per_cell.begin(), w.per_cell.end(), 0);
  return w;
}

}  // namespace

InterferenceGraph::InterferenceGraph(std::size_t vertices)
    : adjacency_(vertices, 0) {
  if (vertices > kMaxGraphVertices) {
    throw SizeLimitError("interference graphs are limited to " +
                         std::to_string(kMaxGraphVertices) + " vertices");
  }
}

InterferenceGraph InterferenceGraph::from_network(const Network& network) {
  InterferenceGraph g(network.size());
  for (std::size_t u = 0; u < network.size(); ++u) {
    for (std::size_t v : network.neighbor_indices(u)) g.add_edge(u, v);
  }
  return g;
}

InterferenceGraph InterferenceGraph::from_edges(
    std::size_t vertices,
    std::span<const std::pair<std::size_t, std::size_t>> edges) {
  InterferenceGraph g(vertices);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

InterferenceGraph InterferenceGraph::cycle(std::size_t vertices) {
  InterferenceGraph g(vertices);
  for (std::size_t i = 0; i < vertices && vertices > 2; ++i) {
    g.add_edge(i, (i + 1) % vertices);
  }
  return g;
}

InterferenceGraph InterferenceGraph::complete(std::size_t vertices) {
  InterferenceGraph g(vertices);
  for (std::size_t u = 0; u < vertices; ++u) {
    for (std::size_t v = u + 1; v < vertices; ++v) g.add_edge(u, v);
  }
  return g;
}

void InterferenceGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= size() || v >= size() || u == v) {
    throw ContractViolation("bad edge (" + std::to_string(u) + "," +
                            std::to_string(v) + ")");
  }
  adjacency_[u] |= bit(v);
  adjacency_[v] |= bit(u);
}

bool InterferenceGraph::is_independent(VertexMask set) const {
  for (std::size_t u : members(set)) {
    if (adjacency_.at(u) & set) return false;
  }
  return true;
}

bool InterferenceGraph::is_clique(VertexMask set) const {
  for (std::size_t u : members(set)) {
    if ((((adjacency_.at(u) | bit(u)) & set) ^ set) != 0) return false;
  }
  return true;
}

std::vector<VertexMask> maximal_independent_sets(const InterferenceGraph& g) {
  const VertexMask all = all_vertices(g.size());
  std::vector<VertexMask> out;
  if (g.size() == 0) return out;
  const auto non_neighbors = [&](std::size_t u) {
    return all & ~g.neighbor_mask(u) & ~bit(u);
  };
  bron_kerbosch(0, all, 0, non_neighbors,
                [&](VertexMask s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<VertexMask> maximal_cliques(const InterferenceGraph& g) {
  std::vector<VertexMask> out;
  if (g.size() == 0) return out;
  const auto nbrs = [&](std::size_t u) { return g.neighbor_mask(u); };
  bron_kerbosch(0, all_vertices(g.size()), 0, nbrs,
                [&](VertexMask s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

OptimumWitness exact_optimum(const InterferenceGraph& graph, int omega,
                             std::span<const int> demands,
                             const SolverLimits& limits) {
  check_demands(graph, omega, demands);
  if (graph.size() > limits.max_cells || omega > limits.max_omega) {
    throw SizeLimitError("exact optimum limited to " +
                         std::to_string(limits.max_cells) +
                         " cells and omega <= " +
                         std::to_string(limits.max_omega) + " (got " +
                         std::to_string(graph.size()) + " cells, omega=" +
                         std::to_string(omega) + ")");
  }
  MultiplicitySearch search(graph, omega, demands);
  return witness_from_multiplicities(graph.size(), demands, search.sets(),
                                     search.best_multiplicities());
}

OptimumWitness exact_optimum(const Network& network, int omega,
                             std::span<const int> demands,
                             const SolverLimits& limits) {
  return exact_optimum(InterferenceGraph::from_network(network), omega,
                       demands, limits);
}

namespace {

class SubsetEnumeration {
 public:
  SubsetEnumeration(const InterferenceGraph& g, int omega,
                    std::span<const int> demands)
      : g_(g),
        demands_(demands),
        full_((1U << omega) - 1),
        omega_(omega),
        masks_(g.size(), 0),
        best_masks_(g.size(), 0) {
    optimistic_.assign(g.size() + 1, 0);
    for (std::size_t i = g.size(); i-- > 0;) {
      optimistic_[i] = optimistic_[i + 1] + std::min(demands[i], omega);
    }
    visit(0, 0);
  }

  const std::vector<unsigned>& best_masks() const { return best_masks_; }

 private:
  void visit(std::size_t cell, int value) {
    if (cell == g_.size()) {
      if (value > best_) {
        best_ = value;
        best_masks_ = masks_;
      }
      return;
    }
    if (value + optimistic_[cell] <= best_) return;

    unsigned blocked = 0;
    for (std::size_t j = 0; j < cell; ++j) {
      if (g_.adjacent(cell, j)) blocked |= masks_[j];
    }
    const unsigned allowed = full_ & ~blocked;
    // Every subset of the allowed frequencies, larger subsets first.
    for (int size = std::min(demands_[cell], omega_); size >= 0; --size) {
      for (unsigned s = allowed;; s = (s - 1) & allowed) {
        if (std::popcount(s) == size) {
          masks_[cell] = s;
          visit(cell + 1, value + size);
        }
        if (s == 0) break;
      }
    }
    masks_[cell] = 0;
  }

  const InterferenceGraph& g_;
  std::span<const int> demands_;
  unsigned full_;
  int omega_;
  std::vector<unsigned> masks_;
  std::vector<unsigned> best_masks_;
  std::vector<int> optimistic_;
  int best_ = -1;
};

}  // namespace

OptimumWitness exhaustive_oracle(const InterferenceGraph& graph, int omega,
                                 std::span<const int> demands) {
  check_demands(graph, omega, demands);
  if (graph.size() > 6 || omega > 6 ||
      graph.size() * static_cast<std::size_t>(omega) > 24) {
    throw SizeLimitError(
        "exhaustive oracle limited to 6 cells, omega <= 6 and cells * omega <= 24");
  }
  SubsetEnumeration search(graph, omega, demands);
  OptimumWitness w;
  w.per_cell.assign(graph.size(), 0);
  w.assignment.assign(graph.size(), {});
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const unsigned m = search.best_masks()[i];
    for (int f = 1; f <= omega; ++f) {
      if ((m >> (f - 1)) & 1U) w.assignment[i].push_back(f);
    }
    w.per_cell[i] = static_cast<int>(w.assignment[i].size());
    w.total += w.per_cell[i];
  }
  return w;
}

int clique_upper_bound(const InterferenceGraph& graph, int omega,
                       std::span<const int> demands) {
  check_demands(graph, omega, demands);
  if (graph.size() == 0) return 0;
  return CliqueRelaxation(graph).solve(omega, demands);
}

int clique_upper_bound(const Network& network, int omega,
                       std::span<const int> demands) {
  return clique_upper_bound(InterferenceGraph::from_network(network), omega,
                            demands);
}

bool verify_witness(const InterferenceGraph& graph, int omega,
                    std::span<const int> demands,
                    const OptimumWitness& witness, std::string* why) {
  const auto fail = [&](std::string reason) {
    if (why) *why = std::move(reason);
    return false;
  };
  const std::size_t n = graph.size();
  if (demands.size() != n || witness.per_cell.size() != n ||
      witness.assignment.size() != n) {
    return fail("size mismatch");
  }
  int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& freqs = witness.assignment[i];
    if (static_cast<int>(freqs.size()) != witness.per_cell[i]) {
      return fail("cell " + std::to_string(i) + ": assignment size != O_i");
    }
    if (witness.per_cell[i] > demands[i]) {
      return fail("cell " + std::to_string(i) + ": O_i exceeds demand");
    }
    for (std::size_t k = 0; k < freqs.size(); ++k) {
      if (freqs[k] < 1 || freqs[k] > omega) {
        return fail("cell " + std::to_string(i) + ": frequency out of range");
      }
      if (k > 0 && freqs[k] <= freqs[k - 1]) {
        return fail("cell " + std::to_string(i) + ": frequencies not distinct");
      }
    }
    total += witness.per_cell[i];
  }
  if (total != witness.total) return fail("total != sum of O_i");
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!graph.adjacent(u, v)) continue;
      const auto& a = witness.assignment[u];
      const auto& b = witness.assignment[v];
      std::vector<Frequency> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(common));
      if (!common.empty()) {
        return fail("cells " + std::to_string(u) + " and " +
                    std::to_string(v) + " share frequency " +
                    std::to_string(common.front()));
      }
    }
  }
  return true;
}

}  // namespace callctl
