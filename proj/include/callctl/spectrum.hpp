#ifndef CALLCTL_SPECTRUM_HPP
#define CALLCTL_SPECTRUM_HPP

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "callctl/hexnet.hpp"

namespace callctl {

/// Frequencies are 1-based: the spectrum is {1..omega}.
using Frequency = int;

/// Inclusive range [first, last]; empty when last < first.
struct FrequencyRange {
  Frequency first = 1;
  Frequency last = 0;

  int size() const { return last >= first ? last - first + 1 : 0; }
  bool empty() const { return size() == 0; }
  bool contains(Frequency f) const { return f >= first && f <= last; }

  friend bool operator==(const FrequencyRange&, const FrequencyRange&) = default;
};

std::string to_string(const FrequencyRange& range);

enum class Direction { BottomToTop, TopToBottom };

/// Slots of a partition: the three color-reserved ranges and the shared one.
enum class Slot : std::size_t { R = 0, G = 1, B = 2, S = 3 };
inline constexpr std::size_t kSlotCount = 4;

constexpr Slot slot_of(Color c) { return static_cast<Slot>(c); }

/// Contiguous split of {1..omega} into F_R, F_G, F_B and an optional F_S.
class FrequencyPartition {
 public:
  FrequencyPartition(int omega, int color_size, int shared_size);

  int omega() const { return omega_; }
  const FrequencyRange& range(Color c) const {
    return ranges_[static_cast<std::size_t>(c)];
  }
  const FrequencyRange& range(Slot s) const {
    return ranges_[static_cast<std::size_t>(s)];
  }
  /// Empty range when the partition has no shared set.
  const FrequencyRange& shared() const { return range(Slot::S); }
  bool has_shared() const { return !shared().empty(); }

  /// Slot holding `f`; f must lie in {1..omega}.
  Slot slot_of(Frequency f) const;

  friend bool operator==(const FrequencyPartition&,
                         const FrequencyPartition&) = default;

 private:
  int omega_;
  std::array<FrequencyRange, kSlotCount> ranges_;
};

/// Shares x:x:x:y. Throws DivisibilityError unless (3x + y) divides omega.
FrequencyPartition make_partition_family(int omega, int x_share, int y_share);
/// 2:2:2:1 split; omega must be a multiple of 7.
FrequencyPartition make_partition_caco(int omega);
/// Thirds, no shared set; omega must be a multiple of 3.
FrequencyPartition make_partition_caco2(int omega);

/// Per-cell sets of in-use frequencies over a fixed network. `assign` is the
/// only mutator and refuses anything that would cause interference.
class AssignmentState {
 public:
  AssignmentState(std::shared_ptr<const Network> network, int omega);
  /// Copies the network.
  AssignmentState(const Network& network, int omega);

  const Network& network() const { return *network_; }
  const std::shared_ptr<const Network>& shared_network() const {
    return network_;
  }
  int omega() const { return omega_; }

  bool uses(std::size_t cell, Frequency f) const;
  /// Unused in the cell and in every neighbor.
  bool is_available(std::size_t cell, Frequency f) const;
  bool is_available(CellId c, Frequency f) const;

  std::optional<Frequency> first_available(std::size_t cell,
                                           const FrequencyRange& range,
                                           Direction dir) const;
  std::optional<Frequency> first_available(CellId c,
                                           const FrequencyRange& range,
                                           Direction dir) const;

  /// Throws ContractViolation when f is not available at the cell.
  void assign(std::size_t cell, Frequency f);
  void assign(CellId c, Frequency f);

  /// A_i: frequencies in use at the cell.
  int count(std::size_t cell) const { return counts_.at(cell); }
  /// Frequencies in use at the cell that fall inside `range`.
  int count_in(std::size_t cell, const FrequencyRange& range) const;
  /// Sorted in-use frequencies of the cell.
  std::vector<Frequency> frequencies(std::size_t cell) const;
  int total() const;

  /// Full rescan of the interference-free invariant.
  bool is_interference_free() const;

 private:
  void check_frequency(Frequency f) const;
  std::size_t slot(std::size_t cell, Frequency f) const {
    return cell * static_cast<std::size_t>(omega_ + 1) +
           static_cast<std::size_t>(f);
  }

  std::shared_ptr<const Network> network_;
  int omega_;
  std::vector<unsigned char> used_;
  std::vector<int> counts_;
};

}  // namespace callctl

#endif  // CALLCTL_SPECTRUM_HPP
