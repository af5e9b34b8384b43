#include "aztec/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace aztec {

using nlohmann::json;

TilingDocument make_document(const Tiling& t, double bias, std::uint64_t seed) {
  TilingDocument doc;
  doc.order = t.order();
  doc.bias = bias;
  doc.seed = seed;
  doc.dominoes = t.canonical();
  return doc;
}

Tiling to_tiling(const TilingDocument& doc) { return Tiling::from_dominoes(doc.order, doc.dominoes); }

std::string serialize(const TilingDocument& doc) {
  json j;
  j["format_version"] = doc.format_version;
  j["order"] = doc.order;
  j["bias"] = doc.bias;
  j["seed"] = doc.seed;
  json list = json::array();
  std::vector<Domino> sorted = doc.dominoes;
  std::sort(sorted.begin(), sorted.end());
  for (const Domino& d : sorted) {
    list.push_back({{"x", d.anchor.x}, {"y", d.anchor.y}, {"orientation", to_string(d.orientation)}});
  }
  j["dominoes"] = std::move(list);
  return j.dump(1) + "\n";
}

TilingDocument parse_document(std::string_view text) {
  TilingDocument doc;
  try {
    const json j = json::parse(text);
    doc.format_version = j.at("format_version").get<int>();
    if (doc.format_version != kFormatVersion) {
      throw DocumentError("unsupported format_version " + std::to_string(doc.format_version));
    }
    doc.order = j.at("order").get<int>();
    doc.bias = j.at("bias").get<double>();
    doc.seed = j.at("seed").get<std::uint64_t>();
    for (const json& d : j.at("dominoes")) {
      const std::string o = d.at("orientation").get<std::string>();
      Orientation orientation;
      if (o == "horizontal") {
        orientation = Orientation::Horizontal;
      } else if (o == "vertical") {
        orientation = Orientation::Vertical;
      } else {
        throw DocumentError("unknown orientation '" + o + "'");
      }
      doc.dominoes.push_back({{d.at("x").get<int>(), d.at("y").get<int>()}, orientation});
    }
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed tiling document: ") + e.what());
  }
  std::sort(doc.dominoes.begin(), doc.dominoes.end());
  return doc;
}

TilingDocument read_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DocumentError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

void write_document(const std::filesystem::path& path, const TilingDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError("cannot write " + path.string());
  out << serialize(doc);
  if (!out) throw DocumentError("write failed for " + path.string());
}

}  // namespace aztec
