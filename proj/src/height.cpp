#include "aztec/height.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "aztec/random.hpp"
#include "aztec/shuffle.hpp"

namespace aztec {

HeightField::HeightField(int order)
    : order_(order),
      values_(static_cast<std::size_t>(2 * order + 1) * (2 * order + 1), kAbsent) {
  if (order < 0) throw HeightError("negative order");
}

int HeightField::at(Cell v) const {
  if (!has(v)) {
    std::ostringstream msg;
    msg << "(" << v.x << ", " << v.y << ") is not a vertex of the order-" << order_ << " diamond";
    throw HeightError(msg.str());
  }
  return values_[slot(v)];
}

std::vector<Cell> HeightField::vertices() const {
  std::vector<Cell> out;
  for (int y = -order_; y <= order_; ++y) {
    for (int x = -order_; x <= order_; ++x) {
      if (has({x, y})) out.push_back({x, y});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cell> HeightField::boundary_vertices() const {
  // A corner is interior iff all four cells around it are in the diamond.
  std::vector<Cell> out;
  for (const Cell& v : vertices()) {
    const bool interior = in_diamond(v, order_) && in_diamond({v.x - 1, v.y}, order_) &&
                          in_diamond({v.x, v.y - 1}, order_) &&
                          in_diamond({v.x - 1, v.y - 1}, order_);
    if (!interior) out.push_back(v);
  }
  return out;
}

namespace {

struct Edge {
  Cell to;
  int delta;  // height(to) - height(from)
};

}  // namespace

HeightField height_function(int order, std::span<const Domino> dominoes) {
  HeightField field(order);
  if (order == 0) return field;

  // Last writer wins on overlaps; the broken face cycle reports it anyway.
  CellIndex owner(order);
  for (std::size_t i = 0; i < dominoes.size(); ++i) {
    for (const Cell& c : dominoes[i].cells()) {
      if (owner.in_box(c) && in_diamond(c, order)) owner.at(c) = static_cast<std::int32_t>(i);
    }
  }
  auto cell_in = [&](Cell c) { return in_diamond(c, order); };
  auto interior = [&](Cell a, Cell b) {
    if (!cell_in(a) || !cell_in(b)) return false;
    const auto ia = owner.get(a);
    return ia != CellIndex::kEmpty && ia == owner.get(b);
  };
  auto black = [](Cell c) { return ((c.x + c.y) & 1) == 0; };

  // Unit edges at vertex v that border at least one diamond cell.
  auto edges_of = [&](Cell v) {
    std::vector<Edge> out;
    // Horizontal edge v -> v + (dx, 0) lies between cells above and below.
    for (int dx : {1, -1}) {
      const int x0 = std::min(v.x, v.x + dx);
      const Cell above{x0, v.y};
      const Cell below{x0, v.y - 1};
      if (!cell_in(above) && !cell_in(below)) continue;
      const int step = interior(above, below) ? -3 : 1;
      // Going east, the cell above is on the left.
      const int east = black(above) ? step : -step;
      out.push_back({{v.x + dx, v.y}, dx == 1 ? east : -east});
    }
    for (int dy : {1, -1}) {
      const int y0 = std::min(v.y, v.y + dy);
      const Cell left{v.x - 1, y0};
      const Cell right{v.x, y0};
      if (!cell_in(left) && !cell_in(right)) continue;
      const int step = interior(left, right) ? -3 : 1;
      // Going north, the west cell is on the left.
      const int north = black(left) ? step : -step;
      out.push_back({{v.x, v.y + dy}, dy == 1 ? north : -north});
    }
    return out;
  };

  const Cell root{-order, 0};
  field.set(root, 0);
  std::deque<Cell> queue{root};
  while (!queue.empty()) {
    const Cell v = queue.front();
    queue.pop_front();
    const int h = field.at(v);
    for (const Edge& e : edges_of(v)) {
      if (!field.has(e.to)) {
        field.set(e.to, h + e.delta);
        queue.push_back(e.to);
      } else if (field.at(e.to) != h + e.delta) {
        std::ostringstream msg;
        msg << "inconsistent height at (" << e.to.x << ", " << e.to.y << "): "
            << field.at(e.to) << " vs " << h + e.delta;
        throw HeightError(msg.str());
      }
    }
  }
  return field;
}

HeightField height_function(const Tiling& t) { return height_function(t.order(), t.dominoes()); }

AverageHeight average_height(int order, int samples, double p, std::uint64_t seed) {
  if (samples < 1) throw HeightError("need at least one sample");
  AverageHeight out;
  out.order = order;
  out.vertices = height_function(all_horizontal(order)).vertices();
  out.values.assign(out.vertices.size(), 0.0);
  const auto fields = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    const Tiling t = sample_tiling(order, p, replica_seed(seed, i));
    const HeightField f = height_function(t);
    std::vector<int> values;
    values.reserve(out.vertices.size());
    for (const Cell& v : out.vertices) values.push_back(f.at(v));
    return values;
  });
  for (const auto& values : fields) {
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] += values[i];
  }
  for (double& v : out.values) v /= samples;
  return out;
}

AffineFit fit_affine(const AverageHeight& h) {
  if (h.vertices.size() < 3) throw HeightError("need at least three vertices to fit a plane");
  // Normal equations for (a, b, c).
  double m[3][4] = {};
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    const double row[3] = {static_cast<double>(h.vertices[i].x),
                           static_cast<double>(h.vertices[i].y), 1.0};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
      m[r][3] += row[r] * h.values[i];
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-12) throw HeightError("degenerate vertex set");
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  AffineFit fit;
  fit.a = m[0][3] / m[0][0];
  fit.b = m[1][3] / m[1][1];
  fit.c = m[2][3] / m[2][2];
  for (std::size_t i = 0; i < h.vertices.size(); ++i) {
    const double pred = fit.a * h.vertices[i].x + fit.b * h.vertices[i].y + fit.c;
    fit.max_residual = std::max(fit.max_residual, std::abs(pred - h.values[i]));
  }
  return fit;
}

}  // namespace aztec
