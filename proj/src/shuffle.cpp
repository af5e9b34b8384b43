#include "aztec/shuffle.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace aztec {

namespace {

// Id of the domino forming a block with dominoes[id] on the side its arrow
// points to (toward == true) or away from (toward == false), or -1.
std::int32_t block_partner(const Tiling& t, std::int32_t id, bool toward) {
  const Domino& d = t.dominoes()[static_cast<std::size_t>(id)];
  Heading h = heading_unchecked(d, t.order());
  if (!toward) h = opposite(h);
  const Cell other = offset(d.anchor, h);
  const std::int32_t j = t.domino_at(other);
  if (j == CellIndex::kEmpty) return CellIndex::kEmpty;
  const Domino& e = t.dominoes()[static_cast<std::size_t>(j)];
  if (e.orientation != d.orientation || e.anchor != other) return CellIndex::kEmpty;
  return j;
}

// Lower-left cell of the 2x2 block made of d and its partner e.
Cell block_corner(const Domino& d, const Domino& e) { return std::min(d.anchor, e.anchor); }

// Marks which dominoes belong to a block of the requested kind.
std::vector<bool> in_block(const Tiling& t, BlockKind kind) {
  const auto count = static_cast<std::int32_t>(t.size());
  std::vector<bool> mark(t.size(), false);
  const bool toward = kind == BlockKind::Bad;
  for (std::int32_t id = 0; id < count; ++id) {
    if (block_partner(t, id, toward) != CellIndex::kEmpty) {
      mark[static_cast<std::size_t>(id)] = true;
    }
  }
  return mark;
}

std::vector<CoinDraw> blocks_in_scan_order(const Tiling& t, BlockKind kind) {
  std::vector<CoinDraw> out;
  const auto count = static_cast<std::int32_t>(t.size());
  const bool toward = kind == BlockKind::Bad;
  for (std::int32_t id = 0; id < count; ++id) {
    const std::int32_t j = block_partner(t, id, toward);
    if (j == CellIndex::kEmpty || j < id) continue;
    const Domino& d = t.dominoes()[static_cast<std::size_t>(id)];
    const Domino& e = t.dominoes()[static_cast<std::size_t>(j)];
    out.push_back({block_corner(d, e), d.orientation == Orientation::Horizontal});
  }
  std::sort(out.begin(), out.end(), [](const CoinDraw& a, const CoinDraw& b) {
    if (a.hole.y != b.hole.y) return a.hole.y > b.hole.y;
    return a.hole.x < b.hole.x;
  });
  return out;
}

void place_block(PartialTiling& pt, Cell corner, bool horizontal) {
  if (horizontal) {
    pt.add({corner, Orientation::Horizontal});
    pt.add({{corner.x, corner.y + 1}, Orientation::Horizontal});
  } else {
    pt.add({corner, Orientation::Vertical});
    pt.add({{corner.x + 1, corner.y}, Orientation::Vertical});
  }
}

}  // namespace

PartialTiling destruction(const Tiling& t) {
  const auto bad = in_block(t, BlockKind::Bad);
  PartialTiling out(t.order());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!bad[i]) out.add(t.dominoes()[i]);
  }
  return out;
}

PartialTiling slide(const PartialTiling& pt) {
  PartialTiling out(pt.order() + 1);
  for (const Domino& d : pt.dominoes()) {
    const Domino moved{offset(d.anchor, heading_unchecked(d, pt.order())), d.orientation};
    try {
      out.add(moved);
    } catch (const GeometryError& e) {
      throw ShuffleError(std::string("slide: ") + e.what());
    }
  }
  return out;
}

std::vector<Cell> find_holes(const PartialTiling& pt) {
  const int n = pt.order();
  std::vector<Cell> holes;
  holes.reserve(pt.uncovered_count() / 4);
  CellIndex claimed(n);
  auto is_free = [&](Cell c) {
    return in_diamond(c, n) && !pt.covered(c) && claimed.get(c) == CellIndex::kEmpty;
  };
  for (int y = n - 1; y >= -n; --y) {
    for (int x = row_first_x(y, n); x <= row_last_x(y, n); ++x) {
      const Cell top_left{x, y};
      if (!is_free(top_left)) continue;
      const Cell corner{x, y - 1};
      const Cell square[4] = {top_left, {x + 1, y}, corner, {x + 1, y - 1}};
      for (const Cell& c : square) {
        if (!is_free(c)) {
          std::ostringstream msg;
          msg << "find_holes: empty cell (" << x << ", " << y
              << ") does not start a free 2x2 square in the order-" << n << " diamond";
          throw ShuffleError(msg.str());
        }
      }
      for (const Cell& c : square) claimed.at(c) = 0;
      holes.push_back(corner);
    }
  }
  return holes;
}

Tiling creation(PartialTiling pt, std::span<const Cell> holes, double p, Rng& rng,
                CoinTape* tape) {
  for (const Cell& corner : holes) {
    assert(square_kind(corner, pt.order()) == BlockKind::Good);
    const bool horizontal = coin(rng, p);
    if (tape) tape->draws.push_back({corner, horizontal});
    place_block(pt, corner, horizontal);
  }
  return Tiling::from_partial(std::move(pt));
}

Tiling fill_holes(PartialTiling pt, std::span<const Cell> holes,
                  const std::vector<bool>& horizontal) {
  if (holes.size() != horizontal.size()) {
    throw ShuffleError("fill_holes: one choice per hole required");
  }
  for (std::size_t i = 0; i < holes.size(); ++i) place_block(pt, holes[i], horizontal[i]);
  return Tiling::from_partial(std::move(pt));
}

Tiling shuffle_step(const Tiling& t, double p, Rng& rng, CoinTape* tape) {
  if (!(p >= 0.0 && p <= 1.0)) throw ShuffleError("bias must lie in [0, 1]");
  PartialTiling moved = slide(destruction(t));
  const auto holes = find_holes(moved);
  return creation(std::move(moved), holes, p, rng, tape);
}

Tiling replay_step(const Tiling& t, const CoinTape& tape, std::size_t* cursor) {
  PartialTiling moved = slide(destruction(t));
  const auto holes = find_holes(moved);
  std::vector<bool> choices;
  choices.reserve(holes.size());
  for (const Cell& corner : holes) {
    if (*cursor >= tape.draws.size()) throw ShuffleError("replay: tape exhausted");
    const CoinDraw& draw = tape.draws[(*cursor)++];
    if (draw.hole != corner) throw ShuffleError("replay: tape hole mismatch");
    choices.push_back(draw.horizontal);
  }
  return fill_holes(std::move(moved), holes, choices);
}

Tiling sample_tiling(int order, double p, std::uint64_t seed, CoinTape* tape) {
  if (order < 0) throw ShuffleError("negative order");
  Rng rng(seed);
  if (tape) {
    tape->seed = seed;
    tape->bias = p;
    tape->draws.clear();
  }
  Tiling t;
  for (int m = 1; m <= order; ++m) t = shuffle_step(t, p, rng, tape);
  return t;
}

Tiling replay(const CoinTape& tape, int order) {
  Tiling t;
  std::size_t cursor = 0;
  for (int m = 1; m <= order; ++m) t = replay_step(t, tape, &cursor);
  return t;
}

int good_block_count(const Tiling& t) {
  return static_cast<int>(blocks_in_scan_order(t, BlockKind::Good).size());
}

int bad_block_count(const Tiling& t) {
  return static_cast<int>(blocks_in_scan_order(t, BlockKind::Bad).size());
}

std::vector<CoinDraw> bad_blocks(const Tiling& t) {
  return blocks_in_scan_order(t, BlockKind::Bad);
}

int reverse_hole_count(const Tiling& t) { return good_block_count(t) - t.order(); }

Tiling reverse_step(const Tiling& t, const std::vector<bool>& fill_horizontal) {
  if (t.order() == 0) throw ShuffleError("reverse_step: order-0 tiling has no predecessor");
  const auto good = in_block(t, BlockKind::Good);
  const int n = t.order();
  PartialTiling back(n - 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (good[i]) continue;
    const Domino& d = t.dominoes()[i];
    const Domino moved{offset(d.anchor, opposite(heading_unchecked(d, n))), d.orientation};
    try {
      back.add(moved);
    } catch (const GeometryError& e) {
      throw ShuffleError(std::string("reverse slide: ") + e.what());
    }
  }
  const auto holes = find_holes(back);
  if (holes.size() != fill_horizontal.size()) {
    std::ostringstream msg;
    msg << "reverse_step: " << holes.size() << " holes but " << fill_horizontal.size()
        << " fill choices";
    throw ShuffleError(msg.str());
  }
  for (std::size_t i = 0; i < holes.size(); ++i) {
    if (square_kind(holes[i], n - 1) != BlockKind::Bad) {
      throw ShuffleError("reverse_step: hole would not be refilled by a bad block");
    }
    place_block(back, holes[i], fill_horizontal[i]);
  }
  return Tiling::from_partial(std::move(back));
}

std::uint64_t predecessor_count(const Tiling& t) {
  const int exponent = reverse_hole_count(t);
  if (exponent < 0) throw ShuffleError("predecessor_count: fewer good blocks than the order");
  if (exponent >= 64) throw ShuffleError("predecessor_count: exceeds 64 bits");
  return std::uint64_t{1} << exponent;
}

}  // namespace aztec
