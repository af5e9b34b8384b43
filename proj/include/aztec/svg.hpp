#pragma once

#include <string>

#include "aztec/geometry.hpp"

namespace aztec {

enum class ColorBy { Heading, Orientation };

// Throws std::invalid_argument for anything but "heading" or "orientation".
ColorBy parse_color_by(const std::string& name);

// Fill color of a domino of the order-n diamond.
std::string domino_color(const Domino& d, int order, ColorBy mode);

// One <rect> per domino, north up.
std::string render_svg(const Tiling& t, ColorBy mode);

}  // namespace aztec
