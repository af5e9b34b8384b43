#include "aztec/geometry.hpp"

#include <algorithm>
#include <sstream>

namespace aztec {

const char* to_string(Heading h) {
  switch (h) {
    case Heading::North: return "north";
    case Heading::South: return "south";
    case Heading::East: return "east";
    case Heading::West: return "west";
  }
  return "?";
}

const char* to_string(Orientation o) {
  return o == Orientation::Horizontal ? "horizontal" : "vertical";
}

const char* to_string(BlockKind k) {
  switch (k) {
    case BlockKind::Good: return "good";
    case BlockKind::Bad: return "bad";
    case BlockKind::NotABlock: return "not-a-block";
  }
  return "?";
}

bool inside(const Domino& d, int order) {
  const auto cells = d.cells();
  return in_diamond(cells[0], order) && in_diamond(cells[1], order);
}

std::vector<Cell> cells_of_order(int order) {
  std::vector<Cell> out;
  if (order <= 0) return out;
  out.reserve(static_cast<std::size_t>(2) * order * (order + 1));
  for (int y = order - 1; y >= -order; --y) {
    for (int x = row_first_x(y, order); x <= row_last_x(y, order); ++x) {
      out.push_back({x, y});
    }
  }
  return out;
}

Heading heading(const Domino& d, int order) {
  if (!inside(d, order)) {
    std::ostringstream msg;
    msg << "domino at (" << d.anchor.x << ", " << d.anchor.y
        << ") is outside the order-" << order << " diamond";
    throw GeometryError(msg.str());
  }
  return heading_unchecked(d, order);
}

BlockKind block_kind(const Domino& a, const Domino& b, int order) {
  if (a.orientation != b.orientation) return BlockKind::NotABlock;
  const Domino& low = a.anchor <= b.anchor ? a : b;
  const Domino& high = a.anchor <= b.anchor ? b : a;
  if (low.orientation == Orientation::Horizontal) {
    if (high.anchor != Cell{low.anchor.x, low.anchor.y + 1}) {
      return BlockKind::NotABlock;
    }
    // The upper domino points away iff it is north-going.
    return heading(high, order) == Heading::North ? BlockKind::Good
                                                  : BlockKind::Bad;
  }
  if (high.anchor != Cell{low.anchor.x + 1, low.anchor.y}) {
    return BlockKind::NotABlock;
  }
  return heading(high, order) == Heading::East ? BlockKind::Good
                                               : BlockKind::Bad;
}

PartialTiling::PartialTiling(int order) : order_(order), index_(order) {
  if (order < 0) throw GeometryError("negative diamond order");
}

PartialTiling::PartialTiling(int order, std::vector<Domino> dominoes)
    : PartialTiling(order) {
  dominoes_.reserve(dominoes.size());
  for (const Domino& d : dominoes) add(d);
}

void PartialTiling::add(const Domino& d) {
  if (!inside(d, order_)) {
    std::ostringstream msg;
    msg << "domino at (" << d.anchor.x << ", " << d.anchor.y << ") leaves the order-"
        << order_ << " diamond";
    throw GeometryError(msg.str());
  }
  const auto cells = d.cells();
  for (const Cell& c : cells) {
    if (index_.get(c) != CellIndex::kEmpty) {
      std::ostringstream msg;
      msg << "overlap at cell (" << c.x << ", " << c.y << ")";
      throw GeometryError(msg.str());
    }
  }
  const auto id = static_cast<std::int32_t>(dominoes_.size());
  for (const Cell& c : cells) index_.at(c) = id;
  dominoes_.push_back(d);
}

std::size_t PartialTiling::uncovered_count() const {
  const std::size_t area = static_cast<std::size_t>(2) * order_ * (order_ + 1);
  return area - 2 * dominoes_.size();
}

Tiling Tiling::from_dominoes(int order, std::vector<Domino> dominoes) {
  return from_partial(PartialTiling(order, std::move(dominoes)));
}

Tiling Tiling::from_partial(PartialTiling partial) {
  if (partial.uncovered_count() != 0) {
    std::ostringstream msg;
    msg << partial.uncovered_count() << " cells of the order-" << partial.order()
        << " diamond are uncovered";
    throw GeometryError(msg.str());
  }
  return Tiling(std::move(partial));
}

std::vector<Domino> Tiling::canonical() const {
  std::vector<Domino> out(dominoes().begin(), dominoes().end());
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Tiling& a, const Tiling& b) {
  return a.order() == b.order() && a.canonical() == b.canonical();
}

Domino rotate_quarter_turn(const Domino& d) {
  // Cell (x, y) turns into cell (-y - 1, x).
  if (d.orientation == Orientation::Horizontal) {
    return {{-d.anchor.y - 1, d.anchor.x}, Orientation::Vertical};
  }
  return {{-d.anchor.y - 2, d.anchor.x}, Orientation::Horizontal};
}

Tiling rotate_quarter_turn(const Tiling& t) {
  std::vector<Domino> turned;
  turned.reserve(t.size());
  for (const Domino& d : t.dominoes()) turned.push_back(rotate_quarter_turn(d));
  return Tiling::from_dominoes(t.order(), std::move(turned));
}

Tiling all_horizontal(int order) {
  std::vector<Domino> dominoes;
  for (int y = order - 1; y >= -order; --y) {
    for (int x = row_first_x(y, order); x <= row_last_x(y, order); x += 2) {
      dominoes.push_back({{x, y}, Orientation::Horizontal});
    }
  }
  return Tiling::from_dominoes(order, std::move(dominoes));
}

Tiling all_vertical(int order) {
  // Columns of the diamond have the same extents as its rows, transposed.
  std::vector<Domino> dominoes;
  for (int x = -order; x < order; ++x) {
    for (int y = row_first_x(x, order); y <= row_last_x(x, order); y += 2) {
      dominoes.push_back({{x, y}, Orientation::Vertical});
    }
  }
  return Tiling::from_dominoes(order, std::move(dominoes));
}

std::string ValidationReport::summary() const {
  if (ok) return "valid";
  std::ostringstream out;
  out << "invalid:";
  if (!out_of_bounds.empty()) out << ' ' << out_of_bounds.size() << " out of bounds";
  if (!multiply_covered.empty()) {
    out << ' ' << multiply_covered.size() << " multiply covered";
  }
  if (!uncovered.empty()) out << ' ' << uncovered.size() << " uncovered";
  return out.str();
}

ValidationReport validate_tiling(int order, std::span<const Domino> dominoes) {
  ValidationReport report;
  if (order < 0) {
    report.ok = false;
    report.out_of_bounds.assign(dominoes.begin(), dominoes.end());
    return report;
  }
  CellIndex counts(order);
  for (const Cell& c : cells_of_order(order)) counts.at(c) = 0;
  for (const Domino& d : dominoes) {
    if (!inside(d, order)) {
      report.out_of_bounds.push_back(d);
      continue;
    }
    for (const Cell& c : d.cells()) ++counts.at(c);
  }
  for (const Cell& c : cells_of_order(order)) {
    const auto n = counts.get(c);
    if (n == 0) report.uncovered.push_back(c);
    if (n > 1) report.multiply_covered.push_back(c);
  }
  report.ok = report.uncovered.empty() && report.multiply_covered.empty() &&
              report.out_of_bounds.empty();
  return report;
}

}  // namespace aztec
