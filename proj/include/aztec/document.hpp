#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aztec/geometry.hpp"

namespace aztec {

class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kFormatVersion = 1;

// On-disk form of a sampled tiling.
struct TilingDocument {
  int format_version = kFormatVersion;
  int order = 0;
  double bias = 0.5;
  std::uint64_t seed = 0;
  std::vector<Domino> dominoes;

  friend bool operator==(const TilingDocument&, const TilingDocument&) = default;
};

TilingDocument make_document(const Tiling& t, double bias, std::uint64_t seed);

// Throws GeometryError if the dominoes do not tile the diamond.
Tiling to_tiling(const TilingDocument& doc);

// Pretty JSON with a trailing newline; dominoes in canonical order.
std::string serialize(const TilingDocument& doc);
// Throws DocumentError on malformed JSON, missing fields or a wrong version.
TilingDocument parse_document(std::string_view text);

TilingDocument read_document(const std::filesystem::path& path);
void write_document(const std::filesystem::path& path, const TilingDocument& doc);

}  // namespace aztec
