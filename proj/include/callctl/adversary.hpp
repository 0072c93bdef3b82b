#ifndef CALLCTL_ADVERSARY_HPP
#define CALLCTL_ADVERSARY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "callctl/hexnet.hpp"
#include "callctl/online_algs.hpp"

namespace callctl {

/// Next request batch as a function of the phase number and the per-cell
/// accepted counts observed so far (aligned with network.cells()). Returning
/// nullopt ends the interaction. Scripts see public outcomes only.
using AdversaryScript = std::function<std::optional<std::vector<CellId>>(
    int phase, std::span<const int> accepted)>;

struct AdversaryScenario {
  std::string name;
  std::shared_ptr<const Network> network;
  int omega = 0;
  AdversaryScript script;
};

/// State after each batch of an interaction.
struct Checkpoint {
  int phase = 0;
  std::vector<int> demands;
  std::vector<int> accepted;
  int online_total = 0;
};

struct Interaction {
  RunTrace trace;
  std::vector<Checkpoint> checkpoints;
};

/// Plays the scenario against an algorithm until the script stops.
Interaction play(const AdversaryScenario& scenario, const AlgorithmSpec& spec);

/// Center (0,0) plus its three G-colored neighbors (1,0), (0,-1), (-1,1),
/// which are pairwise non-adjacent.
Network star_network();
/// Center (0,0) and all six neighbors.
Network flower_network();

/// Phase 1: omega requests at the center. Phase 2: omega requests at each
/// outer cell, unconditionally. Runs on star_network() unless a network
/// containing the star cells is supplied.
AdversaryScenario fig2_adversary(int omega,
                                 std::shared_ptr<const Network> network = nullptr);
/// Phase 1: omega requests at the center; the center accepts x. Stop when
/// 5x <= 3 omega, otherwise omega requests at each outer cell.
AdversaryScenario fig3_adversary(int omega,
                                 std::shared_ptr<const Network> network = nullptr);

/// Deterministic sequence drawn from std::mt19937_64(seed). Cells are picked
/// with probability proportional to `weights` (aligned with network.cells(),
/// uniform when empty).
std::vector<CellId> random_sequence(const Network& network, std::size_t length,
                                    std::uint64_t seed,
                                    std::span<const int> weights = {});

/// One batch holding random_sequence(network, length, seed).
AdversaryScenario random_adversary(std::shared_ptr<const Network> network,
                                   int omega, std::uint64_t seed,
                                   std::size_t length,
                                   std::vector<int> weights = {});

/// "fig2", "fig3" or "random:<seed>:<length>". Random traffic needs a
/// network; the star adversaries fall back to star_network().
AdversaryScenario make_adversary(std::string_view selector, int omega,
                                 std::shared_ptr<const Network> network = nullptr);
/// Throws ConfigError when the selector is malformed.
void validate_adversary_selector(std::string_view selector);

/// Random cell blob grown from the origin with between 1 and max_cells cells;
/// mostly connected, with the odd detached cell. With `triangle_free`, cells
/// that would close a triangle are skipped.
Network random_network(std::uint64_t seed, std::size_t max_cells,
                       bool triangle_free);

}  // namespace callctl

#endif  // CALLCTL_ADVERSARY_HPP
