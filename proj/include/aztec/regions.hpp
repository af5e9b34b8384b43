#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "aztec/geometry.hpp"
#include "aztec/random.hpp"

namespace aztec {

class RegionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Region : std::uint8_t { North, South, East, West, Temperate };

const char* to_string(Region r);

struct FrozenRegions {
  // label[i] is the region of tiling.dominoes()[i].
  std::vector<Region> label;
  std::vector<Domino> north;
  std::vector<Domino> south;
  std::vector<Domino> east;
  std::vector<Domino> west;
  std::vector<Domino> temperate;
};

// A domino is frozen when a chain of edge-adjacent dominoes with its heading
// connects it to one that shares an edge with the diamond's boundary. Every
// other domino is temperate.
FrozenRegions frozen_regions(const Tiling& t);

// Young diagram in the first quadrant: rows[r] boxes in row r, weakly
// decreasing, no zero parts.
struct Partition {
  std::vector<int> rows;

  int parts() const { return static_cast<int>(rows.size()); }
  int largest() const { return rows.empty() ? 0 : rows.front(); }
  int boxes() const;
  bool contains_box(int column, int row) const {
    return row >= 0 && row < parts() && column >= 0 && column < rows[static_cast<std::size_t>(row)];
  }
  bool contains(const Partition& other) const;

  friend auto operator<=>(const Partition&, const Partition&) = default;
};

// Throws RegionError unless the rows are weakly decreasing and positive.
Partition make_partition(std::vector<int> rows);

// Young diagram of the north frozen region: the i-th north-going domino
// position in the k-th row from the top becomes the box with lower-left
// corner (k - i, i - 1). Throws RegionError if the boxes are not a Ferrers
// shape (that would mean the percolation is wrong).
Partition arctic_to_partition(const Tiling& t);

// Lower-left cell of the creation hole whose horizontal filling adds box
// (column, row) of the arctic partition of an order-n tiling.
Cell growth_hole(int column, int row, int order);

// Boxes (column, row) outside the diagram whose left and lower neighbours are
// in it, the axes counting as present. Ordered by row.
std::vector<std::pair<int, int>> growth_corners(const Partition& lambda);

// Each growth corner joins independently with probability p.
Partition growth_step(const Partition& lambda, double p, Rng& rng);

// Exact law of the diagram after n growth steps from the empty one.
std::map<Partition, double> growth_distribution_exact(int steps, double p);

// Boundary path of the diagram, with the second, third and fourth quadrants
// adjoined, as a 0/1 string: bit i is 1 iff the path step between the
// diagonals x - y = i - 1 and x - y = i goes down. Left of the window all bits
// are 1 and right of it all are 0.
struct PathBits {
  int lo = 0;
  std::vector<std::uint8_t> bits;

  int hi() const { return lo + static_cast<int>(bits.size()) - 1; }
  int at(int i) const {
    if (i < lo) return 1;
    if (i > hi()) return 0;
    return bits[static_cast<std::size_t>(i - lo)];
  }

  friend bool operator==(const PathBits&, const PathBits&) = default;
};

// Throws RegionError when [lo, hi] does not cover the part of the path that
// differs from the boundary convention.
PathBits partition_to_bits(const Partition& lambda, int lo, int hi);

// Lattice points on edges between temperate cells and the frozen regions.
// Sorted and unique.
std::vector<Cell> temperate_boundary(const Tiling& t);

// Largest | |P| - n / sqrt(2) | / n over temperate boundary points P, measured
// from the diamond's center. Throws RegionError if the temperate zone is empty.
double circle_deviation(const Tiling& t);

// Same with the ellipse x^2 / (p n^2) + y^2 / ((1 - p) n^2) = 1, distance taken
// along the ray from the center. Requires 0 < p < 1.
double ellipse_deviation(const Tiling& t, double p);

}  // namespace aztec
