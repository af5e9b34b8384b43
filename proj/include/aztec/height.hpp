#pragma once

#include <climits>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "aztec/geometry.hpp"

namespace aztec {

class HeightError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Integer heights on the corners of the cells of an order-n diamond.
// Cell (x, y) is black iff x + y is even. Walking along a unit edge with the
// black cell on the left raises the height by 1, unless the edge runs through
// the middle of a domino, in which case it drops by 3. The west corner (-n, 0)
// has height 0.
class HeightField {
 public:
  static constexpr int kAbsent = INT_MIN;

  HeightField() = default;
  explicit HeightField(int order);

  int order() const { return order_; }
  bool has(Cell v) const { return in_box(v) && values_[slot(v)] != kAbsent; }
  // Throws HeightError for vertices that are not corners of diamond cells.
  int at(Cell v) const;
  void set(Cell v, int h) { values_[slot(v)] = h; }

  // Corners of diamond cells, sorted.
  std::vector<Cell> vertices() const;
  // Vertices on the outer boundary of the diamond, sorted.
  std::vector<Cell> boundary_vertices() const;

  friend bool operator==(const HeightField&, const HeightField&) = default;

 private:
  bool in_box(Cell v) const {
    return v.x >= -order_ && v.x <= order_ && v.y >= -order_ && v.y <= order_;
  }
  std::size_t slot(Cell v) const {
    return static_cast<std::size_t>(v.y + order_) * (2 * order_ + 1) + (v.x + order_);
  }

  int order_ = 0;
  std::vector<int> values_;
};

// Breadth-first assignment from the west corner. Throws HeightError when two
// paths give a vertex different heights, which happens exactly when the
// dominoes do not tile the diamond.
HeightField height_function(const Tiling& t);
HeightField height_function(int order, std::span<const Domino> dominoes);

struct AverageHeight {
  int order = 0;
  std::vector<Cell> vertices;
  std::vector<double> values;  // values[i] belongs to vertices[i]
};

// Mean height over `samples` tilings drawn by shuffling with bias p; sample i
// uses seed replica_seed(seed, i).
AverageHeight average_height(int order, int samples, double p, std::uint64_t seed);

struct AffineFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double max_residual = 0.0;
};

// Least-squares fit of values by a x + b y + c.
AffineFit fit_affine(const AverageHeight& h);

}  // namespace aztec
