#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aztec {

// Cells are named by their lower-left lattice corner. The order-n Aztec
// diamond is the set of cells with |x + 1/2| + |y + 1/2| <= n, so the
// diamonds of consecutive orders are concentric around the vertex (0, 0).
struct Cell {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

enum class Orientation : std::uint8_t { Horizontal, Vertical };

enum class Heading : std::uint8_t { North, South, East, West };

struct Domino {
  Cell anchor;  // lower-left of the two covered cells
  Orientation orientation = Orientation::Horizontal;

  std::array<Cell, 2> cells() const {
    if (orientation == Orientation::Horizontal) {
      return {anchor, Cell{anchor.x + 1, anchor.y}};
    }
    return {anchor, Cell{anchor.x, anchor.y + 1}};
  }

  friend auto operator<=>(const Domino&, const Domino&) = default;
};

enum class BlockKind : std::uint8_t { Good, Bad, NotABlock };

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const char* to_string(Heading h);
const char* to_string(Orientation o);
const char* to_string(BlockKind k);

inline bool in_diamond(Cell c, int order) {
  // |x + 1/2| + |y + 1/2| <= n, doubled to stay in integers.
  const int ax = 2 * c.x + 1 < 0 ? -(2 * c.x + 1) : 2 * c.x + 1;
  const int ay = 2 * c.y + 1 < 0 ? -(2 * c.y + 1) : 2 * c.y + 1;
  return ax + ay <= 2 * order;
}

// Horizontal extent [first, last] of row y inside the order-n diamond.
// Only meaningful for -n <= y < n.
inline int row_first_x(int y, int order) {
  return y >= 0 ? -(order - y) : -(order + y + 1);
}
inline int row_last_x(int y, int order) {
  return y >= 0 ? order - y - 1 : order + y;
}

bool inside(const Domino& d, int order);

// All cells of the order-n diamond, rows from top to bottom, each row left to
// right. Exactly 2n(n+1) cells.
std::vector<Cell> cells_of_order(int order);

// A lattice vertex is dotted iff vx + vy - n is even. This puts a dot on the
// middle of the northern border, (0, n), and on every vertex an even lattice
// distance away from it.
inline bool is_dotted(int vx, int vy, int order) {
  return ((vx + vy - order) & 1) == 0;
}

// Heading without the bounds check; callers guarantee the domino is inside.
inline Heading heading_unchecked(const Domino& d, int order) {
  const bool north_east = is_dotted(d.anchor.x + 1, d.anchor.y + 1, order);
  if (d.orientation == Orientation::Horizontal) {
    return north_east ? Heading::North : Heading::South;
  }
  return north_east ? Heading::East : Heading::West;
}

// Throws GeometryError when the domino is not inside the order-n diamond.
Heading heading(const Domino& d, int order);

inline Cell offset(Cell c, Heading h, int distance = 1) {
  switch (h) {
    case Heading::North: return {c.x, c.y + distance};
    case Heading::South: return {c.x, c.y - distance};
    case Heading::East: return {c.x + distance, c.y};
    case Heading::West: return {c.x - distance, c.y};
  }
  return c;
}

inline Heading opposite(Heading h) {
  switch (h) {
    case Heading::North: return Heading::South;
    case Heading::South: return Heading::North;
    case Heading::East: return Heading::West;
    case Heading::West: return Heading::East;
  }
  return h;
}

// Classifies a pair of dominoes. Two parallel dominoes sharing a long side
// form a 2x2 block; the block is good when their arrows point away from each
// other and bad when they point toward each other.
BlockKind block_kind(const Domino& a, const Domino& b, int order);

// Kind of the 2x2 block with lower-left cell `corner` when filled with two
// parallel dominoes at the given order. Horizontal and vertical fills of the
// same square always have the same kind.
inline BlockKind square_kind(Cell corner, int order) {
  return ((corner.x + corner.y - order) & 1) == 0 ? BlockKind::Bad
                                                  : BlockKind::Good;
}

// Dense cell -> value map over the bounding box [-n, n-1]^2 of an order-n
// diamond.
class CellIndex {
 public:
  static constexpr std::int32_t kEmpty = -1;

  CellIndex() = default;
  explicit CellIndex(int order)
      : order_(order),
        side_(2 * order),
        slots_(static_cast<std::size_t>(side_) * side_, kEmpty) {}

  int order() const { return order_; }

  bool in_box(Cell c) const {
    return c.x >= -order_ && c.x < order_ && c.y >= -order_ && c.y < order_;
  }

  std::int32_t get(Cell c) const {
    return in_box(c) ? slots_[slot(c)] : kEmpty;
  }
  std::int32_t& at(Cell c) { return slots_[slot(c)]; }

 private:
  std::size_t slot(Cell c) const {
    return static_cast<std::size_t>(c.y + order_) * side_ + (c.x + order_);
  }

  int order_ = 0;
  int side_ = 0;
  std::vector<std::int32_t> slots_;
};

// Dominoes inside an order-n diamond, pairwise disjoint, not necessarily
// covering every cell.
class PartialTiling {
 public:
  PartialTiling() = default;
  explicit PartialTiling(int order);
  PartialTiling(int order, std::vector<Domino> dominoes);

  int order() const { return order_; }
  std::span<const Domino> dominoes() const { return dominoes_; }
  std::size_t size() const { return dominoes_.size(); }

  // Throws GeometryError on overlap or when the domino leaves the diamond.
  void add(const Domino& d);

  bool covered(Cell c) const { return index_.get(c) != CellIndex::kEmpty; }
  // Id of the domino covering the cell, or CellIndex::kEmpty.
  std::int32_t domino_at(Cell c) const { return index_.get(c); }

  std::size_t uncovered_count() const;

 private:
  int order_ = 0;
  std::vector<Domino> dominoes_;
  CellIndex index_;
};

// A complete tiling of the order-n diamond: every cell covered exactly once.
class Tiling {
 public:
  // The empty tiling of the order-0 diamond.
  Tiling() = default;

  // Throws GeometryError if the dominoes do not tile the order-n diamond.
  static Tiling from_dominoes(int order, std::vector<Domino> dominoes);
  // Throws GeometryError if cells remain uncovered.
  static Tiling from_partial(PartialTiling partial);

  int order() const { return cover_.order(); }
  std::span<const Domino> dominoes() const { return cover_.dominoes(); }
  std::size_t size() const { return cover_.size(); }
  std::int32_t domino_at(Cell c) const { return cover_.domino_at(c); }
  const PartialTiling& cover() const { return cover_; }

  // Sorted (anchor, orientation) list; equal for equal tilings.
  std::vector<Domino> canonical() const;

  friend bool operator==(const Tiling& a, const Tiling& b);

 private:
  explicit Tiling(PartialTiling cover) : cover_(std::move(cover)) {}

  PartialTiling cover_;
};

// Quarter turn counterclockwise about the diamond's center. Dot parity is
// preserved, so headings rotate with the picture: east-going dominoes become
// north-going.
Domino rotate_quarter_turn(const Domino& d);
Tiling rotate_quarter_turn(const Tiling& t);

// The tiling by horizontal dominoes only (two brick walls).
Tiling all_horizontal(int order);
// The tiling by vertical dominoes only.
Tiling all_vertical(int order);

struct ValidationReport {
  bool ok = true;
  std::vector<Cell> uncovered;
  std::vector<Cell> multiply_covered;
  std::vector<Domino> out_of_bounds;

  std::string summary() const;
};

ValidationReport validate_tiling(int order, std::span<const Domino> dominoes);

}  // namespace aztec
