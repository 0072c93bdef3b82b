#include "callctl/adversary.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>

#include "callctl/error.hpp"

namespace callctl {

namespace {

constexpr CellId kCenter{0, 0};
constexpr std::array<CellId, 3> kOuter{{{-1, 1}, {0, -1}, {1, 0}}};

std::vector<CellId> repeat(CellId c, int times) {
  return std::vector<CellId>(static_cast<std::size_t>(times), c);
}

std::vector<CellId> outer_batch(int omega) {
  std::vector<CellId> batch;
  for (CellId c : kOuter) {
    const auto part = repeat(c, omega);
    batch.insert(batch.end(), part.begin(), part.end());
  }
  return batch;
}

template <typename T>
T parse_number(std::string_view text, std::string_view selector) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("bad number '" + std::string(text) +
                      "' in adversary selector '" + std::string(selector) +
                      "'");
  }
  return value;
}

struct RandomSelector {
  std::uint64_t seed;
  std::size_t length;
};

std::optional<RandomSelector> parse_random(std::string_view selector) {
  constexpr std::string_view prefix = "random:";
  if (selector.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto rest = selector.substr(prefix.size());
  const auto colon = rest.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("adversary selector '" + std::string(selector) +
                      "' must look like random:<seed>:<length>");
  }
  return RandomSelector{
      parse_number<std::uint64_t>(rest.substr(0, colon), selector),
      parse_number<std::size_t>(rest.substr(colon + 1), selector)};
}

std::shared_ptr<const Network> star_host(
    std::shared_ptr<const Network> network) {
  if (!network) return std::make_shared<const Network>(star_network());
  const Network star = star_network();
  for (CellId c : star.cells()) {
    if (!network->contains(c)) {
      throw UnknownCellError("star traffic needs cell " + to_string(c) +
                             " in the network");
    }
  }
  return network;
}

}  // namespace

Interaction play(const AdversaryScenario& scenario, const AlgorithmSpec& spec) {
  Simulator sim(spec, scenario.network, scenario.omega);
  std::vector<Checkpoint> checkpoints;
  for (int phase = 1;; ++phase) {
    const auto observed = sim.trace().accepted();
    auto batch = scenario.script(phase, observed);
    if (!batch) break;
    for (CellId c : *batch) sim.submit(c);
    checkpoints.push_back({phase, sim.trace().demands(),
                           sim.trace().accepted(),
                           sim.trace().total_accepted()});
  }
  return {sim.trace(), std::move(checkpoints)};
}

Network star_network() {
  std::vector<CellId> cells{kCenter};
  cells.insert(cells.end(), kOuter.begin(), kOuter.end());
  return Network(std::move(cells));
}

Network flower_network() {
  std::vector<CellId> cells{kCenter};
  cells.insert(cells.end(), kHexOffsets.begin(), kHexOffsets.end());
  return Network(std::move(cells));
}

AdversaryScenario fig2_adversary(int omega,
                                 std::shared_ptr<const Network> network) {
  AdversaryScenario s;
  s.name = "fig2";
  s.network = star_host(std::move(network));
  s.omega = omega;
  s.script = [omega](int phase,
                     std::span<const int>) -> std::optional<std::vector<CellId>> {
    if (phase == 1) return repeat(kCenter, omega);
    if (phase == 2) return outer_batch(omega);
    return std::nullopt;
  };
  return s;
}

AdversaryScenario fig3_adversary(int omega,
                                 std::shared_ptr<const Network> network) {
  AdversaryScenario s;
  s.name = "fig3";
  s.network = star_host(std::move(network));
  s.omega = omega;
  const std::size_t center = s.network->index_of(kCenter);
  s.script = [omega, center](int phase, std::span<const int> accepted)
      -> std::optional<std::vector<CellId>> {
    if (phase == 1) return repeat(kCenter, omega);
    // x > 3 omega / 5 keeps going; equality stops.
    if (phase == 2 && 5 * accepted[center] > 3 * omega) {
      return outer_batch(omega);
    }
    return std::nullopt;
  };
  return s;
}

std::vector<CellId> random_sequence(const Network& network, std::size_t length,
                                    std::uint64_t seed,
                                    std::span<const int> weights) {
  std::vector<CellId> out;
  if (length == 0) return out;
  if (network.empty()) {
    throw ContractViolation("random traffic needs a non-empty network");
  }
  std::vector<std::uint64_t> cumulative;
  cumulative.reserve(network.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < network.size(); ++i) {
    int w = 1;
    if (!weights.empty()) {
      if (weights.size() != network.size()) {
        throw ContractViolation("weight vector does not match the network");
      }
      w = weights[i];
      if (w < 0) throw ContractViolation("negative traffic weight");
    }
    total += static_cast<std::uint64_t>(w);
    cumulative.push_back(total);
  }
  if (total == 0) throw ContractViolation("all traffic weights are zero");

  std::mt19937_64 rng(seed);
  out.reserve(length);
  for (std::size_t k = 0; k < length; ++k) {
    const std::uint64_t draw = rng() % total;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), draw);
    out.push_back(network.cell(static_cast<std::size_t>(it - cumulative.begin())));
  }
  return out;
}

AdversaryScenario random_adversary(std::shared_ptr<const Network> network,
                                   int omega, std::uint64_t seed,
                                   std::size_t length,
                                   std::vector<int> weights) {
  if (!network) throw ContractViolation("random traffic needs a network");
  AdversaryScenario s;
  s.name = "random:" + std::to_string(seed) + ":" + std::to_string(length);
  s.network = network;
  s.omega = omega;
  auto requests = random_sequence(*network, length, seed, weights);
  s.script = [requests = std::move(requests)](
                 int phase,
                 std::span<const int>) -> std::optional<std::vector<CellId>> {
    if (phase == 1) return requests;
    return std::nullopt;
  };
  return s;
}

void validate_adversary_selector(std::string_view selector) {
  if (selector == "fig2" || selector == "fig3") return;
  if (parse_random(selector)) return;
  throw ConfigError("unknown adversary '" + std::string(selector) + "'");
}

AdversaryScenario make_adversary(std::string_view selector, int omega,
                                 std::shared_ptr<const Network> network) {
  if (selector == "fig2") return fig2_adversary(omega, std::move(network));
  if (selector == "fig3") return fig3_adversary(omega, std::move(network));
  if (auto r = parse_random(selector)) {
    return random_adversary(std::move(network), omega, r->seed, r->length);
  }
  throw ConfigError("unknown adversary '" + std::string(selector) + "'");
}

Network random_network(std::uint64_t seed, std::size_t max_cells,
                       bool triangle_free) {
  if (max_cells == 0) throw ContractViolation("max_cells must be positive");
  std::mt19937_64 rng(seed);
  const std::size_t target = 1 + rng() % max_cells;
  std::vector<CellId> cells{kCenter};

  const auto closes_triangle = [&](CellId c) {
    std::vector<CellId> adj;
    for (CellId d : cells) {
      if (are_adjacent(c, d)) adj.push_back(d);
    }
    for (std::size_t a = 0; a < adj.size(); ++a) {
      for (std::size_t b = a + 1; b < adj.size(); ++b) {
        if (are_adjacent(adj[a], adj[b])) return true;
      }
    }
    return false;
  };

  for (int attempt = 0; cells.size() < target && attempt < 200; ++attempt) {
    CellId c;
    if (rng() % 6 == 0) {
      // Occasionally a cell anywhere in a radius-3 window, possibly detached.
      c = {static_cast<int>(rng() % 7) - 3, static_cast<int>(rng() % 7) - 3};
    } else {
      const CellId base = cells[rng() % cells.size()];
      const CellId off = kHexOffsets[rng() % kHexOffsets.size()];
      c = {base.q + off.q, base.r + off.r};
    }
    if (std::find(cells.begin(), cells.end(), c) != cells.end()) continue;
    if (triangle_free && closes_triangle(c)) continue;
    cells.push_back(c);
  }
  return Network(std::move(cells));
}

}  // namespace callctl
