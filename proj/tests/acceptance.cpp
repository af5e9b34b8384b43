// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aztec/enumerate.hpp"
#include "aztec/measures.hpp"
#include "aztec/random.hpp"
#include "aztec/regions.hpp"
#include "aztec/shuffle.hpp"
#include "aztec/tasep.hpp"

using namespace aztec;

namespace {

constexpr std::uint64_t kSeed = 20261019;

struct Outcome {
  bool passed = true;
  std::string detail;
};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::uint8_t> word_bits(std::uint32_t word, int len) {
  std::vector<std::uint8_t> b(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) b[static_cast<std::size_t>(i)] = (word >> i) & 1u;
  return b;
}

template <typename... Args>
std::string cat(const Args&... args) {
  std::ostringstream out;
  out.precision(6);
  (out << ... << args);
  return out.str();
}

Outcome exact_counts() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    const auto census = enumerate_tilings(n);
    const std::uint64_t expected = std::uint64_t{1} << (n * (n + 1) / 2);
    o.passed = o.passed && census.tilings.size() == expected;
    if (n > 3) continue;
    for (int k = 0; k <= n * (n + 1) / 2; ++k) {
      const auto it = census.horizontal_histogram.find(k);
      const double got = it == census.horizontal_histogram.end() ? 0.0 : static_cast<double>(it->second);
      o.passed = o.passed && got == binomial(n * (n + 1) / 2, k);
    }
  }
  o.detail = "2, 8, 64, 1024 tilings; binomial histograms for n <= 3";
  return o;
}

Outcome uniformity() {
  const std::uint64_t samples = 64000;
  const ChiSquareReport rep = uniformity_test(3, samples, kSeed, 0.5);
  // Recompute the statistic from the raw counts.
  double stat = 0.0;
  const double e = static_cast<double>(samples) / 64.0;
  for (std::uint64_t c : rep.observed) stat += (c - e) * (c - e) / e;
  const bool consistent = rep.observed.size() == 64 && std::abs(stat - rep.statistic) < 1e-6;
  return {consistent && rep.p_value > 1e-3,
          cat("chi2 = ", stat, " on 63 dof, p = ", rep.p_value)};
}

// Brute-force ring oracle: every coin pattern of every state.
double ring_residual(int n, int k) {
  std::map<std::uint32_t, double> pi;
  auto mobile = [n](std::uint32_t s) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i) {
      const int j = (i + 1) % n;
      if (((s >> i) & 1u) && !((s >> j) & 1u)) out.push_back(i);
    }
    return out;
  };
  double total = 0.0;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) != k) continue;
    pi[s] = std::ldexp(1.0, static_cast<int>(mobile(s).size()));
    total += pi[s];
  }
  for (auto& [s, w] : pi) w /= total;
  std::map<std::uint32_t, double> next;
  for (const auto& [s, w] : pi) {
    const auto m = mobile(s);
    for (std::uint32_t mask = 0; mask < (1u << m.size()); ++mask) {
      std::uint32_t t = s;
      for (std::size_t b = 0; b < m.size(); ++b) {
        if (!((mask >> b) & 1u)) continue;
        const int i = m[b];
        t &= ~(1u << i);
        t |= 1u << ((i + 1) % n);
      }
      next[t] += w * std::ldexp(1.0, -static_cast<int>(m.size()));
    }
  }
  double worst = 0.0;
  for (const auto& [s, w] : pi) worst = std::max(worst, std::abs(next[s] - w));
  return worst;
}

Outcome ring() {
  double oracle = 0.0;
  double library = 0.0;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      oracle = std::max(oracle, ring_residual(n, k));
      library = std::max(library, ring_stationarity_check(n, k));
    }
  }
  return {oracle <= 1e-12 && library <= 1e-12,
          cat("max residual ", library, " (brute-force oracle ", oracle, ")")};
}

Outcome pushforward() {
  double worst = 0.0;
  for (int di = 1; di <= 9; ++di) {
    const double d = di / 10.0;
    // Cylinder probabilities from the closed forms, independent of cylinder_prob.
    const double s = std::sqrt(d * d + (1.0 - d) * (1.0 - d));
    const double q[2][2] = {{(s - d) / (1.0 - d), (1.0 - s) / (1.0 - d)},
                            {(1.0 - s) / d, (s - (1.0 - d)) / d}};
    const MarkovParams m = mu_params(d);
    for (int len = 2; len <= 8; ++len) {
      for (std::uint32_t w = 0; w < (1u << len); ++w) {
        const auto b = word_bits(w, len);
        if (b.front() != 0 || b.back() != 1) continue;
        double mu = 1.0 - d;
        for (std::size_t i = 1; i < b.size(); ++i) mu *= q[b[i - 1]][b[i]];
        worst = std::max(worst, std::abs(pushforward_special(m, b) - mu));
      }
    }
  }
  return {worst <= 1e-12, cat("max |image - mu| = ", worst)};
}

Outcome equivalence() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto census = enumerate_tilings(n);
    std::map<std::vector<std::uint8_t>, double> arctic;
    std::map<std::vector<std::uint8_t>, double> growth;
    std::map<std::vector<std::uint8_t>, double> particles;
    for (const Tiling& t : census.tilings) {
      arctic[partition_to_bits(arctic_to_partition(t), -n - 1, n + 1).bits] +=
          1.0 / static_cast<double>(census.tilings.size());
    }
    for (const auto& [lambda, mass] : growth_distribution_exact(n, 0.5)) {
      growth[partition_to_bits(lambda, -n - 1, n + 1).bits] += mass;
    }
    for (const auto& [state, mass] : exact_distribution(n, 0.5)) particles[state.bits] += mass;
    std::map<std::vector<std::uint8_t>, int> keys;
    for (const auto* law : {&arctic, &growth, &particles}) {
      for (const auto& [k, v] : *law) ++keys[k];
    }
    for (const auto& [k, seen] : keys) {
      const double a = arctic[k];
      const double g = growth[k];
      const double p = particles[k];
      worst = std::max({worst, std::abs(a - g), std::abs(g - p), std::abs(a - p)});
    }
  }
  return {worst <= 1e-12, cat("max entrywise difference ", worst)};
}

Outcome profile() {
  const int steps = 2000;
  const ParticleState s = run_wedge(steps, 0.5, kSeed);
  // Four equal bins on [-0.45, 0.45] in u = k / steps.
  double worst = 0.0;
  for (int b = 0; b < 4; ++b) {
    const double lo = -0.45 + 0.225 * b;
    const double hi = lo + 0.225;
    double occ = 0.0;
    double theory = 0.0;
    int sites = 0;
    for (int k = -steps; k <= steps; ++k) {
      const double u = static_cast<double>(k) / steps;
      if (u < lo || u >= hi) continue;
      occ += s.at(k);
      theory += 0.5 - u / std::sqrt(2.0 - 4.0 * u * u);
      ++sites;
    }
    worst = std::max(worst, std::abs(occ - theory) / sites);
  }
  double worst_h = 0.0;
  for (double u : {-0.4, -0.2, 0.0, 0.2, 0.4}) {
    const int k = static_cast<int>(std::floor(u * steps));
    int right = 0;
    for (int i = k + 1; i <= s.hi(); ++i) right += s.at(i);
    const double h = (1.0 - u) / 2.0 - 0.5 * std::sqrt(0.5 - u * u);
    worst_h = std::max(worst_h, std::abs(static_cast<double>(right) / steps - h));
  }
  return {worst <= 0.03 && worst_h <= 0.02,
          cat("max bin error ", worst, ", max height error ", worst_h)};
}

Outcome circle() {
  const std::size_t runs = 20;
  const auto dev = parallel_map(runs, [](std::size_t i) {
    return circle_deviation(sample_tiling(512, 0.5, replica_seed(kSeed, i)));
  });
  const auto good = std::count_if(dev.begin(), dev.end(), [](double x) { return x <= 0.06; });
  return {static_cast<double>(good) >= 0.95 * runs,
          cat(good, "/", runs, " within 0.06, worst ", *std::max_element(dev.begin(), dev.end()))};
}

Outcome ode() {
  double worst = 0.0;
  double oracle = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double x = i / 100.0;
    worst = std::max(worst, ode_residual(x));
    // Direct evaluation of y - x y' against the upward drift of slope y'.
    const double y = 0.5 + std::sqrt(x - x * x);
    const double dy = (1.0 - 2.0 * x) / (2.0 * std::sqrt(x - x * x));
    const double drift = ((1.0 - dy) + std::sqrt(1.0 + dy * dy)) / 2.0;
    oracle = std::max(oracle, std::abs(y - x * dy - drift));
  }
  return {worst <= 1e-9 && oracle <= 1e-9, cat("max residual ", worst)};
}

CoupledPair random_pair(Rng& rng) {
  const int lo = -150;
  const int size = 340;
  CoupledPair c{{lo, std::vector<std::uint8_t>(size)}, {lo, std::vector<std::uint8_t>(size)}};
  for (int i = lo; i < lo + size; ++i) {
    const bool random = i >= 0 && i < 40;
    c.upper.set(i, random ? coin(rng, 0.5) : i < 0);
    c.lower.set(i, random ? coin(rng, 0.5) : i < 0);
  }
  return c;
}

Outcome coupling() {
  Rng rng(kSeed);
  int violations = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    CoupledPair c = random_pair(rng);
    int m = mismatch_count(c);
    for (int t = 0; t < 100; ++t) {
      c = coupled_step(c, rng);
      const int next = mismatch_count(c);
      violations += next > m;
      m = next;
    }
  }
  const std::string top = "100110";
  const std::string bottom = "110100";
  int grew = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng r(replica_seed(kSeed, seed));
    CoupledPair c{{-60, std::vector<std::uint8_t>(720)}, {-60, std::vector<std::uint8_t>(720)}};
    for (int i = -60; i < 660; ++i) {
      const bool periodic = i >= 0 && i < 600;
      c.upper.set(i, periodic ? top[static_cast<std::size_t>(i % 6)] - '0' : i < 0);
      c.lower.set(i, periodic ? bottom[static_cast<std::size_t>(i % 6)] - '0' : i < 0);
    }
    bool over = false;
    for (int t = 0; t < 50 && !over; ++t) {
      c = shared_coin_step(c, 0.9, r);
      int m = 0;
      for (int i = 100; i < 500; ++i) m += c.upper.at(i) != c.lower.at(i);
      over = m > 200;
    }
    grew += over;
  }
  return {violations == 0 && grew >= 90,
          cat(violations, " increases over 1000 pairs x 100 steps; p = 0.9 growth in ", grew,
              "/100 seeds")};
}

Outcome biased() {
  double param_gap = 0.0;
  for (int i = 1; i < 100; ++i) {
    const MarkovParams a = biased_params(0.5, i / 100.0);
    const MarkovParams b = mu_params(i / 100.0);
    param_gap = std::max({param_gap, std::abs(a.q00 - b.q00), std::abs(a.q01 - b.q01),
                          std::abs(a.q10 - b.q10), std::abs(a.q11 - b.q11)});
  }
  double worst_z = 0.0;
  bool stat_ok = true;
  std::uint64_t seed = kSeed;
  for (double p : {0.3, 0.5, 0.7}) {
    for (double d : {0.3, 0.5, 0.7}) {
      const auto rep = stationarity_stat_test(biased_params(p, d), p, 100000, 50, 4, ++seed);
      stat_ok = stat_ok && rep.passed;
      worst_z = std::max(worst_z, rep.max_abs_z);
    }
  }
  const std::size_t runs = 20;
  const auto dev = parallel_map(runs, [](std::size_t i) {
    return ellipse_deviation(sample_tiling(256, 0.3, replica_seed(kSeed + 1, i)), 0.3);
  });
  const auto good = std::count_if(dev.begin(), dev.end(), [](double x) { return x <= 0.08; });
  return {param_gap <= 1e-12 && stat_ok && static_cast<double>(good) >= 0.9 * runs,
          cat("param gap ", param_gap, "; max |z| ", worst_z, " over 9 (p, d); ellipse ", good, "/",
              runs, " within 0.08")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact counts", exact_counts}, {"shuffle uniformity", uniformity},
      {"ring stationarity", ring},    {"special cylinders", pushforward},
      {"reduction equivalence", equivalence}, {"density profile", profile},
      {"arctic circle", circle},      {"drift equation", ode},
      {"coupling", coupling},         {"biased consistency", biased}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %-22s %8.2fs  %s\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.passed;
  }
  return failures == 0 ? 0 : 1;
}
