#include "callctl/online_algs.hpp"

#include <charconv>
#include <numeric>

#include "callctl/error.hpp"

namespace callctl {

namespace {

int parse_positive(std::string_view text, std::string_view selector) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value <= 0) {
    throw ConfigError("bad share '" + std::string(text) +
                      "' in algorithm selector '" + std::string(selector) +
                      "'");
  }
  return value;
}

}  // namespace

std::string to_string(const Outcome& outcome) {
  if (!outcome.accepted()) return "rejected";
  return "accepted(" + std::to_string(outcome.frequency()) + ")";
}

AlgorithmSpec parse_algorithm(std::string_view selector) {
  if (selector == "greedy") return {AlgorithmKind::Greedy, 0, 0};
  if (selector == "caco") return {AlgorithmKind::Caco, 2, 1};
  if (selector == "caco2") return {AlgorithmKind::Caco2, 0, 0};
  constexpr std::string_view prefix = "partition:";
  if (selector.substr(0, prefix.size()) == prefix) {
    const auto rest = selector.substr(prefix.size());
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("algorithm selector '" + std::string(selector) +
                        "' must look like partition:x:y");
    }
    return {AlgorithmKind::PartitionFamily,
            parse_positive(rest.substr(0, colon), selector),
            parse_positive(rest.substr(colon + 1), selector)};
  }
  throw ConfigError("unknown algorithm '" + std::string(selector) + "'");
}

std::string to_string(const AlgorithmSpec& spec) {
  switch (spec.kind) {
    case AlgorithmKind::Greedy: return "greedy";
    case AlgorithmKind::Caco: return "caco";
    case AlgorithmKind::Caco2: return "caco2";
    case AlgorithmKind::PartitionFamily:
      return "partition:" + std::to_string(spec.x_share) + ":" +
             std::to_string(spec.y_share);
  }
  return "?";
}

int omega_divisor(const AlgorithmSpec& spec) {
  switch (spec.kind) {
    case AlgorithmKind::Greedy: return 1;
    case AlgorithmKind::Caco: return 7;
    case AlgorithmKind::Caco2: return 3;
    case AlgorithmKind::PartitionFamily: return 3 * spec.x_share + spec.y_share;
  }
  return 1;
}

void check_omega(const AlgorithmSpec& spec, int omega) {
  const int d = omega_divisor(spec);
  if (omega <= 0 || omega % d != 0) {
    throw DivisibilityError("omega=" + std::to_string(omega) + " invalid for " +
                            to_string(spec) + ": needs a positive multiple of " +
                            std::to_string(d));
  }
}

int smallest_valid_omega(const AlgorithmSpec& spec, int at_least) {
  const int d = omega_divisor(spec);
  const int base = std::max(at_least, 1);
  return ((base + d - 1) / d) * d;
}

std::optional<FrequencyPartition> partition_for(const AlgorithmSpec& spec,
                                                int omega) {
  check_omega(spec, omega);
  switch (spec.kind) {
    case AlgorithmKind::Greedy: return std::nullopt;
    case AlgorithmKind::Caco: return make_partition_caco(omega);
    case AlgorithmKind::Caco2: return make_partition_caco2(omega);
    case AlgorithmKind::PartitionFamily:
      return make_partition_family(omega, spec.x_share, spec.y_share);
  }
  return std::nullopt;
}

namespace {

Outcome greedy_decide(const AssignmentState& state, std::size_t cell) {
  const FrequencyRange all{1, state.omega()};
  if (auto f = state.first_available(cell, all, Direction::BottomToTop)) {
    return Outcome::accept(*f);
  }
  return Outcome::reject();
}

Outcome caco_decide(const AssignmentState& state,
                    const FrequencyPartition& partition, std::size_t cell) {
  const Color own = color_of(state.network().cell(cell));
  const FrequencyRange& mine = partition.range(own);
  if (state.count_in(cell, mine) < mine.size()) {
    // Same-colored cells are never adjacent, so the smallest frequency of the
    // own range not used in this cell is always interference-free.
    for (Frequency f = mine.first; f <= mine.last; ++f) {
      if (state.uses(cell, f)) continue;
      if (!state.is_available(cell, f)) {
        throw ContractViolation("own-color frequency " + std::to_string(f) +
                                " blocked by a neighbor of " +
                                to_string(state.network().cell(cell)));
      }
      return Outcome::accept(f);
    }
  }
  if (auto f = state.first_available(cell, partition.shared(),
                                     Direction::BottomToTop)) {
    return Outcome::accept(*f);
  }
  return Outcome::reject();
}

}  // namespace

Outcome greedy_next(const AssignmentState& state, CellId c) {
  return greedy_decide(state, state.network().index_of(c));
}

Outcome caco_next(const AssignmentState& state,
                  const FrequencyPartition& partition, CellId c) {
  return caco_decide(state, partition, state.network().index_of(c));
}

Outcome partition_family_next(const AssignmentState& state, int x_share,
                              int y_share, CellId c) {
  return caco_next(state,
                   make_partition_family(state.omega(), x_share, y_share), c);
}

std::optional<Overflow> caco2_overflow(Color own,
                                       const NeighborConfig& config) {
  if (std::holds_alternative<Isolated>(config)) return std::nullopt;
  if (const auto* a = std::get_if<StructureA>(&config)) {
    if (a->k == 1) {
      // One neighbor counts as the two-color structure. Whatever the
      // neighbor's color, the color X -> Y takes the overflow.
      return Overflow{successor(own), Direction::TopToBottom};
    }
    const Color y = a->neighbor_color;
    return Overflow{third_color(own, y), precedes(own, y)
                                             ? Direction::BottomToTop
                                             : Direction::TopToBottom};
  }
  if (const auto* b = std::get_if<StructureB>(&config)) {
    return Overflow{b->next, Direction::TopToBottom};
  }
  throw ContractViolation("neighbor configuration " + describe(config) +
                          " does not occur in a triangle-free network");
}

Outcome caco2_next(const AssignmentState& state,
                   const FrequencyPartition& partition,
                   const NeighborConfig& config, std::size_t cell) {
  if (std::holds_alternative<Isolated>(config)) {
    const FrequencyRange all{1, state.omega()};
    if (auto f = state.first_available(cell, all, Direction::BottomToTop)) {
      return Outcome::accept(*f);
    }
    return Outcome::reject();
  }
  const Color own = color_of(state.network().cell(cell));
  if (auto f = state.first_available(cell, partition.range(own),
                                     Direction::BottomToTop)) {
    return Outcome::accept(*f);
  }
  const Overflow spill = *caco2_overflow(own, config);
  if (auto f = state.first_available(cell, partition.range(spill.target),
                                     spill.direction)) {
    return Outcome::accept(*f);
  }
  return Outcome::reject();
}

Outcome caco2_next(const AssignmentState& state,
                   const FrequencyPartition& partition, CellId c) {
  if (!is_triangle_free(state.network())) {
    throw ContractViolation("caco2 requires a triangle-free network");
  }
  const std::size_t cell = state.network().index_of(c);
  return caco2_next(state, partition,
                    classify_neighbor_config(state.network(), cell), cell);
}

Policy::Policy(const AlgorithmSpec& spec,
               std::shared_ptr<const Network> network, int omega)
    : spec_(spec),
      network_(std::move(network)),
      omega_(omega),
      partition_(partition_for(spec, omega)) {
  if (spec_.kind == AlgorithmKind::Caco2) {
    if (!is_triangle_free(*network_)) {
      throw ContractViolation("caco2 requires a triangle-free network");
    }
    configs_.reserve(network_->size());
    for (std::size_t i = 0; i < network_->size(); ++i) {
      configs_.push_back(classify_neighbor_config(*network_, i));
    }
  }
}

Outcome Policy::decide(const AssignmentState& state, std::size_t cell) const {
  switch (spec_.kind) {
    case AlgorithmKind::Greedy: return greedy_decide(state, cell);
    case AlgorithmKind::Caco:
    case AlgorithmKind::PartitionFamily:
      return caco_decide(state, *partition_, cell);
    case AlgorithmKind::Caco2:
      return caco2_next(state, *partition_, configs_.at(cell), cell);
  }
  return Outcome::reject();
}

RunTrace::RunTrace(AlgorithmSpec spec, std::shared_ptr<const Network> network,
                   int omega, std::optional<FrequencyPartition> partition)
    : spec_(spec),
      partition_(std::move(partition)),
      state_(network, omega),
      tallies_(network->size()) {}

std::vector<int> RunTrace::demands() const {
  std::vector<int> out;
  out.reserve(tallies_.size());
  for (const auto& t : tallies_) out.push_back(t.demand);
  return out;
}

std::vector<int> RunTrace::accepted() const {
  std::vector<int> out;
  out.reserve(tallies_.size());
  for (const auto& t : tallies_) out.push_back(t.accepted);
  return out;
}

int RunTrace::total_demand() const {
  return std::accumulate(
      tallies_.begin(), tallies_.end(), 0,
      [](int acc, const CellTally& t) { return acc + t.demand; });
}

void RunTrace::record(CellId cell, const Outcome& outcome) {
  const std::size_t i = state_.network().index_of(cell);
  CellTally& tally = tallies_[i];
  ++tally.demand;
  if (outcome.accepted()) {
    state_.assign(i, outcome.frequency());
    ++tally.accepted;
    if (partition_) {
      ++tally.by_slot[static_cast<std::size_t>(
          partition_->slot_of(outcome.frequency()))];
    }
  }
  steps_.push_back({steps_.size(), cell, outcome});
}

Simulator::Simulator(const AlgorithmSpec& spec,
                     std::shared_ptr<const Network> network, int omega)
    : policy_(spec, network, omega),
      trace_(spec, network, omega, policy_.partition()) {}

Outcome Simulator::submit(CellId cell) {
  const std::size_t i = policy_.network().index_of(cell);
  Outcome outcome = policy_.decide(trace_.state(), i);
  trace_.record(cell, outcome);
  return outcome;
}

RunTrace run_sequence(const AlgorithmSpec& spec,
                      std::shared_ptr<const Network> network, int omega,
                      std::span<const CellId> requests) {
  Simulator sim(spec, network, omega);
  for (std::size_t k = 0; k < requests.size(); ++k) {
    if (!network->contains(requests[k])) {
      throw UnknownCellError("request " + std::to_string(k) + " at cell " +
                             to_string(requests[k]) +
                             " is not in the network");
    }
    sim.submit(requests[k]);
  }
  return sim.trace();
}

RunTrace run_sequence(const AlgorithmSpec& spec, const Network& network,
                      int omega, std::span<const CellId> requests) {
  return run_sequence(spec, std::make_shared<const Network>(network), omega,
                      requests);
}

}  // namespace callctl
