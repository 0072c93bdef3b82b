#ifndef CALLCTL_ONLINE_ALGS_HPP
#define CALLCTL_ONLINE_ALGS_HPP

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "callctl/hexnet.hpp"
#include "callctl/spectrum.hpp"

namespace callctl {

/// Accepted(frequency) or Rejected.
class Outcome {
 public:
  static Outcome accept(Frequency f) { return Outcome(f); }
  static Outcome reject() { return Outcome(std::nullopt); }

  bool accepted() const { return frequency_.has_value(); }
  /// Only meaningful when accepted().
  Frequency frequency() const { return frequency_.value(); }

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  explicit Outcome(std::optional<Frequency> f) : frequency_(f) {}
  std::optional<Frequency> frequency_;
};

std::string to_string(const Outcome& outcome);

enum class AlgorithmKind { Greedy, Caco, PartitionFamily, Caco2 };

/// Parsed algorithm selector: "greedy", "caco", "caco2" or "partition:x:y".
struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Greedy;
  int x_share = 0;
  int y_share = 0;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

/// Throws ConfigError for unknown selectors.
AlgorithmSpec parse_algorithm(std::string_view selector);
std::string to_string(const AlgorithmSpec& spec);

/// omega must be a positive multiple of this value.
int omega_divisor(const AlgorithmSpec& spec);
/// Throws DivisibilityError when omega does not fit the algorithm.
void check_omega(const AlgorithmSpec& spec, int omega);
/// Smallest omega >= at_least accepted by the algorithm.
int smallest_valid_omega(const AlgorithmSpec& spec, int at_least);

/// The partition the algorithm works over; greedy has none.
std::optional<FrequencyPartition> partition_for(const AlgorithmSpec& spec,
                                                int omega);

// Single-request decisions. None of them mutate the state; the caller
// commits an accepted frequency with AssignmentState::assign.

/// Minimal available frequency of {1..omega}.
Outcome greedy_next(const AssignmentState& state, CellId c);

/// Own color range first (per-cell count test), then the minimal available
/// frequency of the shared range.
Outcome caco_next(const AssignmentState& state,
                  const FrequencyPartition& partition, CellId c);

/// The CACO rule over an x:x:x:y split of the spectrum.
Outcome partition_family_next(const AssignmentState& state, int x_share,
                              int y_share, CellId c);

/// Triangle-free rule driven by the cell's neighbor configuration.
/// Throws ContractViolation if the network has a triangle.
Outcome caco2_next(const AssignmentState& state,
                   const FrequencyPartition& partition, CellId c);
/// Same, with a precomputed configuration for the cell.
Outcome caco2_next(const AssignmentState& state,
                   const FrequencyPartition& partition,
                   const NeighborConfig& config, std::size_t cell);

/// Where a CACO2 cell goes once its own range is exhausted.
struct Overflow {
  Color target;
  Direction direction;

  friend bool operator==(const Overflow&, const Overflow&) = default;
};

/// Overflow rule of a cell with color `own` and neighbor configuration
/// `config`. Isolated cells have no overflow (they use the whole spectrum).
/// Single-neighbor cells follow the two-color rule: overflow goes to the
/// successor color's range, top to bottom.
std::optional<Overflow> caco2_overflow(Color own, const NeighborConfig& config);

/// Decision procedure bound to one network and spectrum size. Holds the
/// partition and, for CACO2, the neighbor configuration of every cell.
class Policy {
 public:
  Policy(const AlgorithmSpec& spec, std::shared_ptr<const Network> network,
         int omega);

  const AlgorithmSpec& spec() const { return spec_; }
  const std::optional<FrequencyPartition>& partition() const {
    return partition_;
  }
  const Network& network() const { return *network_; }
  const std::vector<NeighborConfig>& configs() const { return configs_; }

  Outcome decide(const AssignmentState& state, std::size_t cell) const;

 private:
  AlgorithmSpec spec_;
  std::shared_ptr<const Network> network_;
  int omega_;
  std::optional<FrequencyPartition> partition_;
  std::vector<NeighborConfig> configs_;
};

struct Step {
  std::size_t index;
  CellId cell;
  Outcome outcome;
};

/// Per-cell counters: R_i, A_i and A_x(C_i) per partition slot.
struct CellTally {
  int demand = 0;
  int accepted = 0;
  std::array<int, kSlotCount> by_slot{};
  int rejected() const { return demand - accepted; }
};

/// Everything observable about one run.
class RunTrace {
 public:
  RunTrace(AlgorithmSpec spec, std::shared_ptr<const Network> network,
           int omega, std::optional<FrequencyPartition> partition);

  const AlgorithmSpec& algorithm() const { return spec_; }
  const Network& network() const { return state_.network(); }
  int omega() const { return state_.omega(); }
  const std::optional<FrequencyPartition>& partition() const {
    return partition_;
  }
  std::span<const Step> steps() const { return steps_; }
  std::span<const CellTally> tallies() const { return tallies_; }
  const CellTally& tally(std::size_t cell) const { return tallies_.at(cell); }
  const AssignmentState& state() const { return state_; }

  std::vector<int> demands() const;
  std::vector<int> accepted() const;
  int total_accepted() const { return state_.total(); }
  int total_demand() const;

  void record(CellId cell, const Outcome& outcome);

 private:
  AlgorithmSpec spec_;
  std::optional<FrequencyPartition> partition_;
  AssignmentState state_;
  std::vector<Step> steps_;
  std::vector<CellTally> tallies_;
};

/// Feeds requests one at a time to a Policy and records the trace.
class Simulator {
 public:
  Simulator(const AlgorithmSpec& spec, std::shared_ptr<const Network> network,
            int omega);

  /// Throws UnknownCellError for cells outside the network.
  Outcome submit(CellId cell);
  const RunTrace& trace() const { return trace_; }
  const Policy& policy() const { return policy_; }

 private:
  Policy policy_;
  RunTrace trace_;
};

/// Runs a whole sequence. An unknown cell raises UnknownCellError naming the
/// request index.
RunTrace run_sequence(const AlgorithmSpec& spec, const Network& network,
                      int omega, std::span<const CellId> requests);
RunTrace run_sequence(const AlgorithmSpec& spec,
                      std::shared_ptr<const Network> network, int omega,
                      std::span<const CellId> requests);

}  // namespace callctl

#endif  // CALLCTL_ONLINE_ALGS_HPP
