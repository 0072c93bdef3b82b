#include "callctl/spectrum.hpp"

#include "callctl/error.hpp"

namespace callctl {

std::string to_string(const FrequencyRange& range) {
  if (range.empty()) return "{}";
  return "{" + std::to_string(range.first) + ".." + std::to_string(range.last) +
         "}";
}

FrequencyPartition::FrequencyPartition(int omega, int color_size,
                                       int shared_size)
    : omega_(omega) {
  if (omega <= 0 || color_size < 0 || shared_size < 0 ||
      3 * color_size + shared_size != omega) {
    throw ContractViolation("partition sizes do not cover {1.." +
                            std::to_string(omega) + "}");
  }
  Frequency next = 1;
  for (std::size_t s = 0; s < 3; ++s) {
    ranges_[s] = {next, next + color_size - 1};
    next += color_size;
  }
  ranges_[3] = {next, next + shared_size - 1};
}

Slot FrequencyPartition::slot_of(Frequency f) const {
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    if (ranges_[s].contains(f)) return static_cast<Slot>(s);
  }
  throw ContractViolation("frequency " + std::to_string(f) +
                          " outside {1.." + std::to_string(omega_) + "}");
}

FrequencyPartition make_partition_family(int omega, int x_share,
                                         int y_share) {
  if (x_share <= 0 || y_share <= 0) {
    throw ConfigError("partition shares must be positive");
  }
  const int parts = 3 * x_share + y_share;
  if (omega <= 0 || omega % parts != 0) {
    throw DivisibilityError("omega=" + std::to_string(omega) +
                            " is not a positive multiple of " +
                            std::to_string(parts));
  }
  const int unit = omega / parts;
  return FrequencyPartition(omega, x_share * unit, y_share * unit);
}

FrequencyPartition make_partition_caco(int omega) {
  return make_partition_family(omega, 2, 1);
}

FrequencyPartition make_partition_caco2(int omega) {
  if (omega <= 0 || omega % 3 != 0) {
    throw DivisibilityError("omega=" + std::to_string(omega) +
                            " is not a positive multiple of 3");
  }
  return FrequencyPartition(omega, omega / 3, 0);
}

AssignmentState::AssignmentState(std::shared_ptr<const Network> network,
                                 int omega)
    : network_(std::move(network)), omega_(omega) {
  if (!network_) throw ContractViolation("null network");
  if (omega <= 0) throw ContractViolation("omega must be positive");
  used_.assign(network_->size() * static_cast<std::size_t>(omega + 1), 0);
  counts_.assign(network_->size(), 0);
}

AssignmentState::AssignmentState(const Network& network, int omega)
    : AssignmentState(std::make_shared<const Network>(network), omega) {}

void AssignmentState::check_frequency(Frequency f) const {
  if (f < 1 || f > omega_) {
    throw ContractViolation("frequency " + std::to_string(f) +
                            " outside {1.." + std::to_string(omega_) + "}");
  }
}

bool AssignmentState::uses(std::size_t cell, Frequency f) const {
  check_frequency(f);
  return used_.at(slot(cell, f)) != 0;
}

bool AssignmentState::is_available(std::size_t cell, Frequency f) const {
  if (uses(cell, f)) return false;
  for (std::size_t j : network_->neighbor_indices(cell)) {
    if (used_[slot(j, f)] != 0) return false;
  }
  return true;
}

bool AssignmentState::is_available(CellId c, Frequency f) const {
  return is_available(network_->index_of(c), f);
}

std::optional<Frequency> AssignmentState::first_available(
    std::size_t cell, const FrequencyRange& range, Direction dir) const {
  if (range.empty()) return std::nullopt;
  check_frequency(range.first);
  check_frequency(range.last);
  if (dir == Direction::BottomToTop) {
    for (Frequency f = range.first; f <= range.last; ++f) {
      if (is_available(cell, f)) return f;
    }
  } else {
    for (Frequency f = range.last; f >= range.first; --f) {
      if (is_available(cell, f)) return f;
    }
  }
  return std::nullopt;
}

std::optional<Frequency> AssignmentState::first_available(
    CellId c, const FrequencyRange& range, Direction dir) const {
  return first_available(network_->index_of(c), range, dir);
}

void AssignmentState::assign(std::size_t cell, Frequency f) {
  if (!is_available(cell, f)) {
    throw ContractViolation("frequency " + std::to_string(f) +
                            " is not available at " +
                            to_string(network_->cell(cell)));
  }
  used_[slot(cell, f)] = 1;
  ++counts_[cell];
}

void AssignmentState::assign(CellId c, Frequency f) {
  assign(network_->index_of(c), f);
}

int AssignmentState::count_in(std::size_t cell,
                              const FrequencyRange& range) const {
  int n = 0;
  for (Frequency f = range.first; f <= range.last; ++f) {
    n += used_.at(slot(cell, f));
  }
  return n;
}

std::vector<Frequency> AssignmentState::frequencies(std::size_t cell) const {
  std::vector<Frequency> out;
  for (Frequency f = 1; f <= omega_; ++f) {
    if (used_.at(slot(cell, f)) != 0) out.push_back(f);
  }
  return out;
}

int AssignmentState::total() const {
  int n = 0;
  for (int c : counts_) n += c;
  return n;
}

bool AssignmentState::is_interference_free() const {
  for (std::size_t u = 0; u < network_->size(); ++u) {
    int seen = 0;
    for (Frequency f = 1; f <= omega_; ++f) {
      if (used_[slot(u, f)] == 0) continue;
      ++seen;
      for (std::size_t v : network_->neighbor_indices(u)) {
        if (used_[slot(v, f)] != 0) return false;
      }
    }
    if (seen != counts_[u]) return false;
  }
  return true;
}

}  // namespace callctl
