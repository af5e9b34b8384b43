#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aztec/document.hpp"
#include "aztec/enumerate.hpp"
#include "aztec/measures.hpp"
#include "aztec/regions.hpp"
#include "aztec/shuffle.hpp"
#include "aztec/svg.hpp"
#include "aztec/tasep.hpp"
#include "aztec/verify.hpp"

namespace {

using namespace aztec;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

int cmd_generate(int order, double bias, std::uint64_t seed, const std::string& out) {
  if (order < 0) throw std::invalid_argument("order must be non-negative");
  if (!(bias >= 0.0 && bias <= 1.0)) throw std::invalid_argument("bias must lie in [0, 1]");
  const Tiling t = sample_tiling(order, bias, seed);
  write_document(out, make_document(t, bias, seed));
  return 0;
}

int cmd_render(const std::string& in, const std::string& out, const std::string& color_by) {
  const ColorBy mode = parse_color_by(color_by);
  write_text(out, render_svg(to_tiling(read_document(in)), mode));
  return 0;
}

int cmd_regions(const std::string& in) {
  const TilingDocument doc = read_document(in);
  const Tiling t = to_tiling(doc);
  const FrozenRegions regions = frozen_regions(t);
  nlohmann::ordered_json j;
  j["order"] = doc.order;
  j["bias"] = doc.bias;
  j["north"] = regions.north.size();
  j["south"] = regions.south.size();
  j["east"] = regions.east.size();
  j["west"] = regions.west.size();
  j["temperate_area"] = 2 * regions.temperate.size();
  try {
    j["circle_deviation"] = circle_deviation(t);
  } catch (const RegionError& e) {
    j["circle_deviation_error"] = e.what();
  }
  try {
    j["ellipse_deviation"] = ellipse_deviation(t, doc.bias);
  } catch (const RegionError& e) {
    j["ellipse_deviation_error"] = e.what();
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_enumerate(int order, bool histogram) {
  const TilingCensus census = enumerate_tilings(order);
  std::cout << "order " << order << ": " << census.tilings.size() << " tilings (2^"
            << order * (order + 1) / 2 << " = " << tiling_count_formula(order) << ")\n";
  if (histogram) {
    std::cout << "pairs\ttilings\tbinomial\n";
    for (const auto& [k, count] : census.horizontal_histogram) {
      std::cout << k << '\t' << count << '\t' << horizontal_count_formula(order, k) << '\n';
    }
  }
  return census.tilings.size() == tiling_count_formula(order) ? 0 : 1;
}

int cmd_tasep(int steps, double bias, int bins, std::uint64_t seed, const std::string& out) {
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  const ParticleState s = run_wedge(steps, bias, seed);
  std::ostringstream csv;
  csv.precision(10);
  csv << "u,bin_lo,bin_hi,bin_width,sites,empirical_density,f_theory\n";
  for (const ProfileBin& b : density_profile(s, steps, bins)) {
    csv << b.center << ',' << b.u_lo << ',' << b.u_hi << ',' << b.width << ',' << b.sites << ','
        << b.empirical << ',' << b.theory << '\n';
  }
  write_text(out, csv.str());
  return 0;
}

int cmd_stationarity(double d, std::optional<double> bias, const std::string& mode,
                     std::uint64_t seed, int replicas) {
  const double p = bias.value_or(0.5);
  const MarkovParams m = p == 0.5 ? mu_params(d) : biased_params(p, d);
  std::cout.precision(10);
  std::cout << "d = " << d << ", p = " << p << ": q00 = " << m.q00 << ", q01 = " << m.q01
            << ", q10 = " << m.q10 << ", q11 = " << m.q11 << '\n';
  if (mode == "exact") {
    double special = 0.0;
    double window = 0.0;
    for (int len = 1; len <= 8; ++len) {
      for (int word = 0; word < (1 << len); ++word) {
        std::vector<std::uint8_t> b(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) b[static_cast<std::size_t>(i)] = (word >> i) & 1;
        const double mu = cylinder_prob(m, b);
        if (len <= 6) window = std::max(window, std::abs(pushforward_window(m, p, b) - mu));
        if (p == 0.5 && len >= 2 && b.front() == 0 && b.back() == 1) {
          special = std::max(special, std::abs(pushforward_special(m, b) - mu));
        }
      }
    }
    if (p == 0.5) std::cout << "special cylinders up to 8 bits: max error " << special << '\n';
    std::cout << "all cylinders up to 6 bits: max error " << window << '\n';
    const bool ok = special <= 1e-12 && window <= 1e-12;
    std::cout << (ok ? "stationary" : "NOT stationary") << '\n';
    return ok ? 0 : 1;
  }
  if (mode != "statistical") throw std::invalid_argument("mode must be exact or statistical");
  const StationarityReport rep = stationarity_stat_test(m, p, 100000, 50, replicas, seed);
  std::cout << "pattern\texpected\tbefore\tafter\tz_before\tz_after\tz_change\n";
  for (const PatternStat& row : rep.rows) {
    std::cout << row.pattern << '\t' << row.expected << '\t' << row.before << '\t' << row.after
              << '\t' << row.z_before << '\t' << row.z_after << '\t' << row.z_change << '\n';
  }
  std::cout << "max |z| = " << rep.max_abs_z << " over " << rep.batches << " batches: "
            << (rep.passed ? "pass" : "FAIL") << '\n';
  return rep.passed ? 0 : 1;
}

int cmd_verify(const std::string& suite, const VerifyOptions& options) {
  const SuiteResult r = run_suite(suite, options);
  for (const std::string& line : r.details) std::cout << line << '\n';
  std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL") << '\n';
  return r.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random domino tilings of Aztec diamonds and the exclusion process"};
  app.require_subcommand(1);

  int order = 0;
  double bias = 0.5;
  std::uint64_t seed = 0;
  std::string in;
  std::string out;

  auto* generate = app.add_subcommand("generate", "Sample a tiling by iterated shuffling");
  generate->add_option("--order", order, "Diamond order")->required();
  generate->add_option("--bias", bias, "Probability of a horizontal fill")->capture_default_str();
  generate->add_option("--seed", seed, "Random seed")->required();
  generate->add_option("--out", out, "Output JSON file")->required();

  std::string color_by = "heading";
  auto* render = app.add_subcommand("render", "Draw a tiling as SVG");
  render->add_option("--in", in, "Tiling JSON file")->required();
  render->add_option("--out", out, "Output SVG file")->required();
  render->add_option("--color-by", color_by, "heading or orientation")
      ->check(CLI::IsMember({"heading", "orientation"}))
      ->capture_default_str();

  auto* regions = app.add_subcommand("regions", "Frozen regions and boundary deviations as JSON");
  regions->add_option("--in", in, "Tiling JSON file")->required();

  bool histogram = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count every tiling of a small diamond");
  enumerate->add_option("--order", order, "Diamond order (0..4)")->required();
  enumerate->add_flag("--histogram", histogram, "Tabulate tilings by horizontal pairs");

  int steps = 2000;
  int bins = 20;
  std::uint64_t run_seed = 20261019;
  auto* tasep = app.add_subcommand("tasep", "Density profile of the wedge as CSV");
  tasep->add_option("--steps", steps, "Number of updates")->required();
  tasep->add_option("--bias", bias, "Jump probability")->capture_default_str();
  tasep->add_option("--bins", bins, "Bins over u in [-1, 1)")->capture_default_str();
  tasep->add_option("--seed", run_seed, "Random seed")->capture_default_str();
  tasep->add_option("--out", out, "Output CSV file")->required();

  double d = 0.5;
  std::optional<double> stat_bias;
  std::string mode;
  int replicas = 4;
  auto* stationarity = app.add_subcommand("stationarity", "Check that a Markov measure is stationary");
  stationarity->add_option("--d", d, "Density")->required();
  stationarity->add_option("--bias", stat_bias, "Jump probability (default 0.5)");
  stationarity->add_option("--mode", mode, "exact or statistical")
      ->required()
      ->check(CLI::IsMember({"exact", "statistical"}));
  stationarity->add_option("--seed", run_seed, "Random seed")->capture_default_str();
  stationarity->add_option("--replicas", replicas, "Independent windows")->capture_default_str();

  std::string suite;
  VerifyOptions options;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", options.seed, "Random seed")->capture_default_str();
  verify->add_option("--samples", options.samples, "Override the suite's sample count");
  verify->add_option("--replicas", options.replicas, "Override the suite's replica count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) return cmd_generate(order, bias, seed, out);
    if (*render) return cmd_render(in, out, color_by);
    if (*regions) return cmd_regions(in);
    if (*enumerate) return cmd_enumerate(order, histogram);
    if (*tasep) return cmd_tasep(steps, bias, bins, run_seed, out);
    if (*stationarity) return cmd_stationarity(d, stat_bias, mode, run_seed, replicas);
    if (*verify) return cmd_verify(suite, options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
