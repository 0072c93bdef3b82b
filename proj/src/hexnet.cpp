#include "callctl/hexnet.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "callctl/error.hpp"

namespace callctl {

std::ostream& operator<<(std::ostream& os, CellId c) {
  return os << '(' << c.q << ',' << c.r << ')';
}

std::string to_string(CellId c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

bool are_adjacent(CellId a, CellId b) {
  const CellId d{a.q - b.q, a.r - b.r};
  return std::find(kHexOffsets.begin(), kHexOffsets.end(), d) !=
         kHexOffsets.end();
}

Color color_of(CellId c) {
  const int m = ((c.q - c.r) % 3 + 3) % 3;
  return static_cast<Color>(m);
}

char to_char(Color c) {
  switch (c) {
    case Color::R: return 'R';
    case Color::G: return 'G';
    case Color::B: return 'B';
  }
  return '?';
}

Network::Network(std::vector<CellId> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  const auto dup = std::adjacent_find(cells_.begin(), cells_.end());
  if (dup != cells_.end()) {
    throw ContractViolation("duplicate cell " + to_string(*dup));
  }
  adjacency_.resize(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    for (const CellId off : kHexOffsets) {
      if (auto j = find({cells_[i].q + off.q, cells_[i].r + off.r})) {
        adjacency_[i].push_back(*j);
      }
    }
    std::sort(adjacency_[i].begin(), adjacency_[i].end());
  }
}

std::optional<std::size_t> Network::find(CellId c) const {
  const auto it = std::lower_bound(cells_.begin(), cells_.end(), c);
  if (it == cells_.end() || *it != c) return std::nullopt;
  return static_cast<std::size_t>(it - cells_.begin());
}

std::size_t Network::index_of(CellId c) const {
  if (auto i = find(c)) return *i;
  throw UnknownCellError("cell " + to_string(c) + " is not in the network");
}

bool Network::adjacent(std::size_t a, std::size_t b) const {
  const auto& adj = adjacency_.at(a);
  return std::binary_search(adj.begin(), adj.end(), b);
}

std::vector<CellId> neighbors(const Network& network, CellId c) {
  std::vector<CellId> out;
  for (std::size_t j : network.neighbor_indices(network.index_of(c))) {
    out.push_back(network.cell(j));
  }
  return out;
}

bool is_triangle_free(const Network& network) {
  for (std::size_t u = 0; u < network.size(); ++u) {
    for (std::size_t v : network.neighbor_indices(u)) {
      if (v <= u) continue;
      for (std::size_t w : network.neighbor_indices(v)) {
        if (w != u && network.adjacent(u, w)) return false;
      }
    }
  }
  return true;
}

NeighborConfig classify_neighbor_config(const Network& network,
                                        std::size_t index) {
  const auto nbrs = network.neighbor_indices(index);
  const int degree = static_cast<int>(nbrs.size());
  if (degree == 0) return Isolated{};

  const Color first = color_of(network.cell(nbrs.front()));
  const bool uniform = std::all_of(nbrs.begin(), nbrs.end(), [&](auto j) {
    return color_of(network.cell(j)) == first;
  });
  if (uniform) return StructureA{first, degree};

  if (degree == 2) {
    const Color own = color_of(network.cell(index));
    return StructureB{successor(own), predecessor(own)};
  }
  return General{degree};
}

NeighborConfig classify_neighbor_config(const Network& network, CellId c) {
  return classify_neighbor_config(network, network.index_of(c));
}

std::string describe(const NeighborConfig& config) {
  struct Visitor {
    std::string operator()(const Isolated&) const { return "isolated"; }
    std::string operator()(const StructureA& a) const {
      return std::string("A(") + to_char(a.neighbor_color) + ",k=" +
             std::to_string(a.k) + ")";
    }
    std::string operator()(const StructureB& b) const {
      return std::string("B(") + to_char(b.next) + "," + to_char(b.prev) +
             ")";
    }
    std::string operator()(const General& g) const {
      return "general(deg=" + std::to_string(g.degree) + ")";
    }
  };
  return std::visit(Visitor{}, config);
}

}  // namespace callctl
