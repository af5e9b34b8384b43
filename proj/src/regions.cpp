#include "aztec/regions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

namespace aztec {

const char* to_string(Region r) {
  switch (r) {
    case Region::North: return "north";
    case Region::South: return "south";
    case Region::East: return "east";
    case Region::West: return "west";
    case Region::Temperate: return "temperate";
  }
  return "?";
}

namespace {

constexpr Cell kSteps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

Region region_of(Heading h) {
  switch (h) {
    case Heading::North: return Region::North;
    case Heading::South: return Region::South;
    case Heading::East: return Region::East;
    case Heading::West: return Region::West;
  }
  return Region::Temperate;
}

std::vector<Heading> headings_of(const Tiling& t) {
  std::vector<Heading> h;
  h.reserve(t.size());
  for (const Domino& d : t.dominoes()) h.push_back(heading_unchecked(d, t.order()));
  return h;
}

}  // namespace

FrozenRegions frozen_regions(const Tiling& t) {
  const int n = t.order();
  const auto headings = headings_of(t);
  FrozenRegions out;
  out.label.assign(t.size(), Region::Temperate);

  std::vector<std::int32_t> frontier;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (const Cell& c : t.dominoes()[i].cells()) {
      for (const Cell& s : kSteps) {
        if (!in_diamond({c.x + s.x, c.y + s.y}, n)) {
          out.label[i] = region_of(headings[i]);
        }
      }
    }
    if (out.label[i] != Region::Temperate) frontier.push_back(static_cast<std::int32_t>(i));
  }

  while (!frontier.empty()) {
    const auto id = static_cast<std::size_t>(frontier.back());
    frontier.pop_back();
    for (const Cell& c : t.dominoes()[id].cells()) {
      for (const Cell& s : kSteps) {
        const std::int32_t j = t.domino_at({c.x + s.x, c.y + s.y});
        if (j == CellIndex::kEmpty) continue;
        const auto k = static_cast<std::size_t>(j);
        if (out.label[k] != Region::Temperate || headings[k] != headings[id]) continue;
        out.label[k] = out.label[id];
        frontier.push_back(j);
      }
    }
  }

  for (std::size_t i = 0; i < t.size(); ++i) {
    const Domino& d = t.dominoes()[i];
    switch (out.label[i]) {
      case Region::North: out.north.push_back(d); break;
      case Region::South: out.south.push_back(d); break;
      case Region::East: out.east.push_back(d); break;
      case Region::West: out.west.push_back(d); break;
      case Region::Temperate: out.temperate.push_back(d); break;
    }
  }
  return out;
}

int Partition::boxes() const {
  int total = 0;
  for (int r : rows) total += r;
  return total;
}

bool Partition::contains(const Partition& other) const {
  if (other.parts() > parts()) return false;
  for (std::size_t r = 0; r < other.rows.size(); ++r) {
    if (other.rows[r] > rows[r]) return false;
  }
  return true;
}

Partition make_partition(std::vector<int> rows) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] <= 0 || (r > 0 && rows[r] > rows[r - 1])) {
      throw RegionError("partition rows must be positive and weakly decreasing");
    }
  }
  return Partition{std::move(rows)};
}

Partition arctic_to_partition(const Tiling& t) {
  const int n = t.order();
  const FrozenRegions regions = frozen_regions(t);
  std::set<std::pair<int, int>> boxes;  // (row, column)
  for (const Domino& d : regions.north) {
    const int k = n - d.anchor.y;  // row from the top, 1-based
    if (d.orientation != Orientation::Horizontal || k < 1 || k > n || ((d.anchor.x + k) & 1)) {
      throw RegionError("north region contains a domino off the north-going lattice");
    }
    const int i = (d.anchor.x + k) / 2 + 1;
    boxes.insert({i - 1, k - i});
  }
  std::vector<int> rows;
  for (const auto& [row, column] : boxes) {
    if (row >= static_cast<int>(rows.size())) rows.resize(static_cast<std::size_t>(row) + 1, 0);
    ++rows[static_cast<std::size_t>(row)];
  }
  for (const auto& [row, column] : boxes) {
    const bool left = column == 0 || boxes.contains({row, column - 1});
    const bool below = row == 0 || boxes.contains({row - 1, column});
    if (!left || !below || row + column > n - 1) {
      std::ostringstream msg;
      msg << "north region is not a Ferrers shape at box (" << column << ", " << row << ")";
      throw RegionError(msg.str());
    }
  }
  return make_partition(std::move(rows));
}

Cell growth_hole(int column, int row, int order) {
  const int k = column + row + 1;
  return {-k + 2 * row, order - k - 1};
}

std::vector<std::pair<int, int>> growth_corners(const Partition& lambda) {
  std::vector<std::pair<int, int>> corners;
  for (int r = 0; r <= lambda.parts(); ++r) {
    const int c = r < lambda.parts() ? lambda.rows[static_cast<std::size_t>(r)] : 0;
    const bool below = r == 0 || lambda.rows[static_cast<std::size_t>(r - 1)] > c;
    if (below) corners.emplace_back(c, r);
  }
  return corners;
}

namespace {

Partition add_boxes(const Partition& lambda, const std::vector<std::pair<int, int>>& corners,
                    std::uint64_t chosen_mask) {
  std::vector<int> rows = lambda.rows;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    if (!((chosen_mask >> i) & 1u)) continue;
    const auto r = static_cast<std::size_t>(corners[i].second);
    if (r == rows.size()) rows.push_back(0);
    ++rows[r];
  }
  return Partition{std::move(rows)};
}

}  // namespace

Partition growth_step(const Partition& lambda, double p, Rng& rng) {
  const auto corners = growth_corners(lambda);
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    if (coin(rng, p)) mask |= std::uint64_t{1} << i;
  }
  return add_boxes(lambda, corners, mask);
}

std::map<Partition, double> growth_distribution_exact(int steps, double p) {
  if (steps < 0 || steps > 12) throw RegionError("growth_distribution_exact supports 0..12 steps");
  std::map<Partition, double> law{{Partition{}, 1.0}};
  for (int s = 0; s < steps; ++s) {
    std::map<Partition, double> next;
    for (const auto& [lambda, mass] : law) {
      const auto corners = growth_corners(lambda);
      const std::uint64_t outcomes = std::uint64_t{1} << corners.size();
      for (std::uint64_t mask = 0; mask < outcomes; ++mask) {
        const int fired = std::popcount(mask);
        const double w = std::pow(p, fired) *
                         std::pow(1.0 - p, static_cast<int>(corners.size()) - fired);
        if (w == 0.0) continue;
        next[add_boxes(lambda, corners, mask)] += mass * w;
      }
    }
    law = std::move(next);
  }
  return law;
}

PathBits partition_to_bits(const Partition& lambda, int lo, int hi) {
  const int parts = lambda.parts();
  if (parts > 0 && (lo > 1 - parts || hi < lambda.largest())) {
    std::ostringstream msg;
    msg << "window [" << lo << ", " << hi << "] does not cover [" << 1 - parts << ", "
        << lambda.largest() << "]";
    throw RegionError(msg.str());
  }
  if (hi < lo) throw RegionError("empty window");
  PathBits out;
  out.lo = lo;
  out.bits.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  auto set = [&](int index, std::uint8_t bit) {
    if (index >= lo && index <= hi) out.bits[static_cast<std::size_t>(index - lo)] = bit;
  };
  // Down steps above the diagram.
  for (int i = lo; i <= std::min(hi, -parts); ++i) set(i, 1);
  // Walk the boundary from (0, parts) to the x-axis. A right step from (x, y)
  // has index x + 1 - y; a down step from (x, y) has index x - y + 1.
  int x = 0;
  for (int y = parts; y >= 1; --y) {
    const int target = lambda.rows[static_cast<std::size_t>(y - 1)];
    for (; x < target; ++x) set(x + 1 - y, 0);
    set(x - y + 1, 1);
  }
  return out;
}

std::vector<Cell> temperate_boundary(const Tiling& t) {
  const int n = t.order();
  const FrozenRegions regions = frozen_regions(t);
  CellIndex temperate(n);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (regions.label[i] != Region::Temperate) continue;
    for (const Cell& c : t.dominoes()[i].cells()) temperate.at(c) = 1;
  }
  std::vector<Cell> points;
  for (const Domino& d : regions.temperate) {
    for (const Cell& c : d.cells()) {
      if (temperate.get({c.x + 1, c.y}) == CellIndex::kEmpty) {
        points.push_back({c.x + 1, c.y});
        points.push_back({c.x + 1, c.y + 1});
      }
      if (temperate.get({c.x - 1, c.y}) == CellIndex::kEmpty) {
        points.push_back({c.x, c.y});
        points.push_back({c.x, c.y + 1});
      }
      if (temperate.get({c.x, c.y + 1}) == CellIndex::kEmpty) {
        points.push_back({c.x, c.y + 1});
        points.push_back({c.x + 1, c.y + 1});
      }
      if (temperate.get({c.x, c.y - 1}) == CellIndex::kEmpty) {
        points.push_back({c.x, c.y});
        points.push_back({c.x + 1, c.y});
      }
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double circle_deviation(const Tiling& t) {
  const auto points = temperate_boundary(t);
  if (points.empty()) throw RegionError("temperate zone is empty");
  const double n = t.order();
  const double radius = n / std::sqrt(2.0);
  double worst = 0.0;
  for (const Cell& p : points) {
    worst = std::max(worst, std::abs(std::hypot(p.x, p.y) - radius));
  }
  return worst / n;
}

double ellipse_deviation(const Tiling& t, double p) {
  if (!(p > 0.0 && p < 1.0)) throw RegionError("ellipse bias must lie in (0, 1)");
  const auto points = temperate_boundary(t);
  if (points.empty()) throw RegionError("temperate zone is empty");
  const double n = t.order();
  double worst = 0.0;
  for (const Cell& pt : points) {
    const double r = std::hypot(pt.x, pt.y);
    const double c = r > 0.0 ? pt.x / r : 1.0;
    const double s = r > 0.0 ? pt.y / r : 0.0;
    const double boundary = n / std::sqrt(c * c / p + s * s / (1.0 - p));
    worst = std::max(worst, std::abs(r - boundary));
  }
  return worst / n;
}

}  // namespace aztec
