#ifndef CALLCTL_HEXNET_HPP
#define CALLCTL_HEXNET_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace callctl {

/// Axial coordinate of a hexagonal cell.
struct CellId {
  int q = 0;
  int r = 0;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

std::ostream& operator<<(std::ostream& os, CellId c);
std::string to_string(CellId c);

/// The six axial offsets of a cell's neighbors.
inline constexpr std::array<CellId, 6> kHexOffsets{{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1}}};

bool are_adjacent(CellId a, CellId b);

enum class Color : std::uint8_t { R = 0, G = 1, B = 2 };

/// Proper 3-coloring of the hex grid: index (q - r) mod 3.
Color color_of(CellId c);

/// Cyclic order R -> G -> B -> R.
constexpr Color successor(Color c) {
  return static_cast<Color>((static_cast<int>(c) + 1) % 3);
}
constexpr Color predecessor(Color c) {
  return static_cast<Color>((static_cast<int>(c) + 2) % 3);
}
/// True iff `from -> to` in the cyclic order.
constexpr bool precedes(Color from, Color to) { return successor(from) == to; }
/// The color that is neither `a` nor `b` (a != b).
constexpr Color third_color(Color a, Color b) {
  return static_cast<Color>(3 - static_cast<int>(a) - static_cast<int>(b));
}

char to_char(Color c);

/// Finite set of hex cells. Adjacency is derived from coordinates and
/// restricted to the set. Cells are kept sorted by (q, r); the position of a
/// cell in `cells()` is its index everywhere else in the library.
class Network {
 public:
  Network() = default;
  /// Throws ContractViolation on duplicate cells.
  explicit Network(std::vector<CellId> cells);

  std::span<const CellId> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  bool contains(CellId c) const { return find(c).has_value(); }
  std::optional<std::size_t> find(CellId c) const;
  /// Throws UnknownCellError.
  std::size_t index_of(CellId c) const;
  CellId cell(std::size_t index) const { return cells_.at(index); }

  /// Neighbor indices of cell `index`, ascending (hence sorted by (q, r)).
  std::span<const std::size_t> neighbor_indices(std::size_t index) const {
    return adjacency_.at(index);
  }
  std::size_t degree(std::size_t index) const {
    return adjacency_.at(index).size();
  }
  bool adjacent(std::size_t a, std::size_t b) const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.cells_ == b.cells_;
  }

 private:
  std::vector<CellId> cells_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

/// Cells of `network` adjacent to `c`, sorted by (q, r). Throws
/// UnknownCellError if `c` is not in the network.
std::vector<CellId> neighbors(const Network& network, CellId c);

/// True iff no adjacent pair has a common neighbor inside the cell set.
bool is_triangle_free(const Network& network);

struct Isolated {
  friend bool operator==(const Isolated&, const Isolated&) = default;
};
/// All neighbors share one color, different from the cell's own.
struct StructureA {
  Color neighbor_color;
  int k;
  friend bool operator==(const StructureA&, const StructureA&) = default;
};
/// Exactly two neighbors of distinct colors. Stored canonically: `next` is
/// the successor of the cell's own color, `prev` its predecessor.
struct StructureB {
  Color next;
  Color prev;
  friend bool operator==(const StructureB&, const StructureB&) = default;
};
struct General {
  int degree;
  friend bool operator==(const General&, const General&) = default;
};

using NeighborConfig = std::variant<Isolated, StructureA, StructureB, General>;

NeighborConfig classify_neighbor_config(const Network& network, CellId c);
NeighborConfig classify_neighbor_config(const Network& network,
                                        std::size_t index);

std::string describe(const NeighborConfig& config);

}  // namespace callctl

#endif  // CALLCTL_HEXNET_HPP
