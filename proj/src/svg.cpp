#include "aztec/svg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace aztec {

namespace {

constexpr int kScale = 8;  // pixels per lattice unit

}  // namespace

ColorBy parse_color_by(const std::string& name) {
  if (name == "heading") return ColorBy::Heading;
  if (name == "orientation") return ColorBy::Orientation;
  throw std::invalid_argument("color mode must be heading or orientation, got '" + name + "'");
}

std::string domino_color(const Domino& d, int order, ColorBy mode) {
  if (mode == ColorBy::Orientation) {
    return d.orientation == Orientation::Horizontal ? "#4a7fb5" : "#e0a030";
  }
  switch (heading(d, order)) {
    case Heading::North: return "#d1495b";
    case Heading::South: return "#00798c";
    case Heading::East: return "#edae49";
    case Heading::West: return "#30638e";
  }
  return "#000000";
}

std::string render_svg(const Tiling& t, ColorBy mode) {
  const int n = t.order();
  const int side = std::max(1, 2 * n) * kScale;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
      << "\" viewBox=\"0 0 " << side << ' ' << side << "\">\n";
  for (const Domino& d : t.canonical()) {
    const bool horizontal = d.orientation == Orientation::Horizontal;
    const int w = horizontal ? 2 : 1;
    const int h = horizontal ? 1 : 2;
    // SVG y grows downward; the top edge of the domino is anchor.y + h.
    const int px = (d.anchor.x + n) * kScale;
    const int py = (n - d.anchor.y - h) * kScale;
    out << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << w * kScale
        << "\" height=\"" << h * kScale << "\" fill=\"" << domino_color(d, n, mode)
        << "\" stroke=\"#222222\" stroke-width=\"0.5\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace aztec
