#ifndef CALLCTL_OFFLINE_OPT_HPP
#define CALLCTL_OFFLINE_OPT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "callctl/hexnet.hpp"
#include "callctl/spectrum.hpp"

namespace callctl {

/// Vertex subsets are bitmasks; graphs are small by construction.
using VertexMask = std::uint32_t;
inline constexpr std::size_t kMaxGraphVertices = 32;

/// Undirected interference graph on vertices 0..n-1. A hex network maps onto
/// it with vertex i = network.cell(i); abstract graphs (odd cycles, cliques)
/// are accepted as well.
class InterferenceGraph {
 public:
  explicit InterferenceGraph(std::size_t vertices = 0);
  static InterferenceGraph from_network(const Network& network);
  static InterferenceGraph from_edges(
      std::size_t vertices,
      std::span<const std::pair<std::size_t, std::size_t>> edges);
  static InterferenceGraph cycle(std::size_t vertices);
  static InterferenceGraph complete(std::size_t vertices);

  void add_edge(std::size_t u, std::size_t v);

  std::size_t size() const { return adjacency_.size(); }
  bool adjacent(std::size_t u, std::size_t v) const {
    return (adjacency_.at(u) >> v) & 1U;
  }
  VertexMask neighbor_mask(std::size_t u) const { return adjacency_.at(u); }
  bool is_independent(VertexMask set) const;
  bool is_clique(VertexMask set) const;

 private:
  std::vector<VertexMask> adjacency_;
};

/// R_i per vertex.
using DemandVector = std::vector<int>;

struct OptimumWitness {
  int total = 0;
  /// O_i per vertex.
  std::vector<int> per_cell;
  /// Sorted frequencies realizing O_i; |assignment[i]| == per_cell[i].
  std::vector<std::vector<Frequency>> assignment;
};

struct SolverLimits {
  std::size_t max_cells = 12;
  int max_omega = 256;
};

/// Maximal independent sets, ordered lexicographically by their sorted
/// member lists.
std::vector<VertexMask> maximal_independent_sets(const InterferenceGraph& g);
/// Maximal cliques (isolated vertices appear as singletons).
std::vector<VertexMask> maximal_cliques(const InterferenceGraph& g);

/// Exact offline optimum: each frequency serves an independent set of cells,
/// cell i gains min(R_i, m_i) where m_i counts the frequencies it receives.
/// Branch and bound over multiplicities of maximal independent sets. Throws
/// SizeLimitError above `limits`.
OptimumWitness exact_optimum(const InterferenceGraph& graph, int omega,
                             std::span<const int> demands,
                             const SolverLimits& limits = {});
OptimumWitness exact_optimum(const Network& network, int omega,
                             std::span<const int> demands,
                             const SolverLimits& limits = {});

/// Reference optimum by enumerating per-cell frequency subsets directly.
/// Limited to 6 cells, omega <= 6 and cells * omega <= 24; throws
/// SizeLimitError beyond that.
OptimumWitness exhaustive_oracle(const InterferenceGraph& graph, int omega,
                                 std::span<const int> demands);

/// Integer optimum of max sum x_i subject to 0 <= x_i <= R_i and
/// sum over every maximal clique <= omega. Never below exact_optimum.
int clique_upper_bound(const InterferenceGraph& graph, int omega,
                       std::span<const int> demands);
int clique_upper_bound(const Network& network, int omega,
                       std::span<const int> demands);

/// Independent re-check of a witness: interference-free, frequencies in
/// range, |assignment_i| == O_i <= R_i and total == sum O_i. On failure the
/// reason is written to `why` when given.
bool verify_witness(const InterferenceGraph& graph, int omega,
                    std::span<const int> demands,
                    const OptimumWitness& witness, std::string* why = nullptr);

}  // namespace callctl

#endif  // CALLCTL_OFFLINE_OPT_HPP
