#include "aztec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "aztec/enumerate.hpp"
#include "aztec/measures.hpp"
#include "aztec/regions.hpp"
#include "aztec/shuffle.hpp"
#include "aztec/tasep.hpp"

namespace aztec {

namespace {

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  out.precision(10);
  (out << ... << args);
  return out.str();
}

void check(SuiteResult& r, bool ok, const std::string& line) {
  r.details.push_back((ok ? "ok   " : "FAIL ") + line);
  if (!ok) r.passed = false;
}

SuiteResult suite_counts(const VerifyOptions&) {
  SuiteResult r{"counts", true, {}};
  for (int n = 1; n <= kMaxEnumerationOrder; ++n) {
    const TilingCensus census = enumerate_tilings(n);
    check(r, census.tilings.size() == tiling_count_formula(n),
          cat("order ", n, ": ", census.tilings.size(), " tilings, expected ",
              tiling_count_formula(n)));
    if (n > 3) continue;
    bool same = true;
    for (int k = 0; k <= n * (n + 1) / 2; ++k) {
      const auto it = census.horizontal_histogram.find(k);
      const std::uint64_t got = it == census.horizontal_histogram.end() ? 0 : it->second;
      same = same && got == horizontal_count_formula(n, k);
    }
    check(r, same, cat("order ", n, ": horizontal histogram is binomial"));
  }
  return r;
}

SuiteResult suite_uniformity(const VerifyOptions& o) {
  SuiteResult r{"uniformity", true, {}};
  const std::uint64_t samples = o.samples ? o.samples : 64000;
  const ChiSquareReport rep = uniformity_test(3, samples, o.seed, 0.5);
  check(r, rep.p_value > 1e-3,
        cat("order 3, ", samples, " samples: chi2 = ", rep.statistic, " on ",
            rep.degrees_of_freedom, " dof, p = ", rep.p_value));
  return r;
}

SuiteResult suite_ring(const VerifyOptions&) {
  SuiteResult r{"ring", true, {}};
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) worst = std::max(worst, ring_stationarity_check(n, k));
  }
  check(r, worst <= 1e-12, cat("all rings up to 8 sites: max residual ", worst));
  return r;
}

SuiteResult suite_pushforward(const VerifyOptions&) {
  SuiteResult r{"pushforward", true, {}};
  double worst = 0.0;
  for (int di = 1; di <= 9; ++di) {
    const MarkovParams m = mu_params(di / 10.0);
    for (int len = 2; len <= 8; ++len) {
      for (int word = 0; word < (1 << len); ++word) {
        std::vector<std::uint8_t> b(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i) b[static_cast<std::size_t>(i)] = (word >> i) & 1;
        if (b.front() != 0 || b.back() != 1) continue;
        worst = std::max(worst, std::abs(pushforward_special(m, b) - cylinder_prob(m, b)));
      }
    }
  }
  check(r, worst <= 1e-12, cat("special cylinders up to 8 bits, d = 0.1..0.9: max error ", worst));
  return r;
}

SuiteResult suite_equivalence(const VerifyOptions&) {
  SuiteResult r{"equivalence", true, {}};
  for (int n = 1; n <= 3; ++n) {
    const TilingCensus census = enumerate_tilings(n);
    std::map<Partition, double> arctic;
    for (const Tiling& t : census.tilings) {
      arctic[arctic_to_partition(t)] += 1.0 / static_cast<double>(census.tilings.size());
    }
    const auto growth = growth_distribution_exact(n, 0.5);
    const auto particles = exact_distribution(n, 0.5);

    std::map<std::vector<std::uint8_t>, double> from_growth;
    for (const auto& [lambda, mass] : growth) {
      from_growth[partition_to_bits(lambda, -n - 1, n + 1).bits] += mass;
    }
    std::map<std::vector<std::uint8_t>, double> from_tasep;
    for (const auto& [state, mass] : particles) from_tasep[state.bits] += mass;

    double diff_ag = 0.0;
    for (const auto& [lambda, mass] : arctic) {
      const auto it = growth.find(lambda);
      diff_ag = std::max(diff_ag, std::abs(mass - (it == growth.end() ? 0.0 : it->second)));
    }
    for (const auto& [lambda, mass] : growth) {
      if (!arctic.contains(lambda)) diff_ag = std::max(diff_ag, mass);
    }
    double diff_gt = 0.0;
    for (const auto& [bits, mass] : from_growth) {
      const auto it = from_tasep.find(bits);
      diff_gt = std::max(diff_gt, std::abs(mass - (it == from_tasep.end() ? 0.0 : it->second)));
    }
    for (const auto& [bits, mass] : from_tasep) {
      if (!from_growth.contains(bits)) diff_gt = std::max(diff_gt, mass);
    }
    check(r, diff_ag <= 1e-12,
          cat("order ", n, ": arctic vs growth, ", arctic.size(), " shapes, max diff ", diff_ag));
    check(r, diff_gt <= 1e-12,
          cat("order ", n, ": growth vs particles, max diff ", diff_gt));
  }
  return r;
}

constexpr int kProfileSteps = 2000;
// Bins tile [-0.45, 0.45]; narrower bins drown the profile in local noise.
constexpr int kProfileBins = 4;

SuiteResult suite_profile(const VerifyOptions& o) {
  SuiteResult r{"profile", true, {}};
  const ParticleState s = run_wedge(kProfileSteps, 0.5, o.seed);
  double worst = 0.0;
  for (const ProfileBin& bin : density_profile(s, kProfileSteps, kProfileBins, -0.45, 0.45)) {
    worst = std::max(worst, std::abs(bin.empirical - bin.theory));
  }
  check(r, worst <= 0.03, cat("density, ", kProfileBins, " bins on [-0.45, 0.45]: max error ", worst));
  for (double u : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
    const int k = static_cast<int>(std::floor(u * kProfileSteps));
    const double got = static_cast<double>(count_right(s, k)) / kProfileSteps;
    check(r, std::abs(got - h_theory(u)) <= 0.02,
          cat("h(", u, "): empirical ", got, ", limit ", h_theory(u)));
  }
  return r;
}

SuiteResult suite_circle(const VerifyOptions& o) {
  SuiteResult r{"circle", true, {}};
  const std::size_t runs = o.samples ? o.samples : 20;
  const auto deviations = parallel_map(runs, [&](std::size_t i) {
    return circle_deviation(sample_tiling(512, 0.5, replica_seed(o.seed, i)));
  });
  std::size_t good = 0;
  for (std::size_t i = 0; i < runs; ++i) {
    good += deviations[i] <= 0.06;
    r.details.push_back(cat("     run ", i, ": deviation ", deviations[i]));
  }
  check(r, static_cast<double>(good) >= 0.95 * static_cast<double>(runs),
        cat(good, " of ", runs, " order-512 runs within 0.06"));
  return r;
}

SuiteResult suite_ode(const VerifyOptions&) {
  SuiteResult r{"ode", true, {}};
  double worst = 0.0;
  for (int i = 1; i <= 99; ++i) worst = std::max(worst, ode_residual(i / 100.0));
  check(r, worst <= 1e-9, cat("99 grid points: max residual ", worst));
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"counts",      "uniformity", "ring",
                                                 "pushforward", "equivalence", "profile",
                                                 "circle",      "ode"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
  static const std::map<std::string, std::function<SuiteResult(const VerifyOptions&)>> suites = {
      {"counts", suite_counts},          {"uniformity", suite_uniformity},
      {"ring", suite_ring},              {"pushforward", suite_pushforward},
      {"equivalence", suite_equivalence}, {"profile", suite_profile},
      {"circle", suite_circle},          {"ode", suite_ode}};
  const auto it = suites.find(name);
  if (it == suites.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  return it->second(options);
}

}  // namespace aztec
