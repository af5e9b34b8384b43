#include "aztec/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace aztec {

namespace {

void check_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw MeasureError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

MarkovParams mu_params(double d) {
  check_unit(d, "density");
  MarkovParams m;
  m.d = d;
  m.bias = 0.5;
  m.p0 = 1.0 - d;
  m.p1 = d;
  if (d == 0.0) {
    m.q00 = 1.0, m.q01 = 0.0, m.q10 = 1.0, m.q11 = 0.0;
    return m;
  }
  if (d == 1.0) {
    m.q00 = 0.0, m.q01 = 1.0, m.q10 = 0.0, m.q11 = 1.0;
    return m;
  }
  const double s = std::sqrt(d * d + (1.0 - d) * (1.0 - d));
  m.q00 = (s - d) / (1.0 - d);
  m.q01 = (1.0 - s) / (1.0 - d);
  m.q10 = (1.0 - s) / d;
  m.q11 = (s - (1.0 - d)) / d;
  return m;
}

MarkovParams biased_params(double p, double d) {
  if (!(p > 0.0 && p <= 1.0)) throw MeasureError("bias must lie in (0, 1]");
  if (!(d > 0.0 && d < 1.0)) throw MeasureError("density must lie in (0, 1)");
  const double disc = 1.0 - 4.0 * p * d * (1.0 - d);
  if (disc < 0.0) throw MeasureError("negative discriminant");
  // 1 - sqrt(disc) rewritten without cancellation for small p.
  const double root = std::sqrt(disc);
  MarkovParams m;
  m.d = d;
  m.bias = p;
  m.p0 = 1.0 - d;
  m.p1 = d;
  m.q01 = 2.0 * d / (1.0 + root);
  m.q10 = 2.0 * (1.0 - d) / (1.0 + root);
  m.q00 = 1.0 - m.q01;
  m.q11 = 1.0 - m.q10;
  return m;
}

double cylinder_prob(const MarkovParams& m, std::span<const std::uint8_t> bits) {
  if (bits.empty()) return 1.0;
  double prob = m.marginal(bits[0]);
  for (std::size_t i = 1; i < bits.size(); ++i) prob *= m.q(bits[i - 1], bits[i]);
  return prob;
}

double pushforward_special(const MarkovParams& m, std::span<const std::uint8_t> bits) {
  if (bits.size() < 2 || bits.front() != 0 || bits.back() != 1) {
    throw MeasureError("pushforward_special needs a string starting with 0 and ending with 1");
  }
  if (std::abs(m.bias - 0.5) > 1e-15) throw MeasureError("pushforward_special is unbiased only");
  for (std::uint8_t b : bits) {
    if (b > 1) throw MeasureError("bit strings hold 0 and 1 only");
  }
  std::vector<std::size_t> ups;  // positions i with bits[i..i+1] = 01
  for (std::size_t i = 0; i + 1 < bits.size(); ++i) {
    if (bits[i] == 0 && bits[i + 1] == 1) ups.push_back(i);
  }
  double total = 0.0;
  std::vector<std::uint8_t> a(bits.begin(), bits.end());
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << ups.size()); ++mask) {
    std::copy(bits.begin(), bits.end(), a.begin());
    for (std::size_t j = 0; j < ups.size(); ++j) {
      if ((mask >> j) & 1u) {
        a[ups[j]] = 1;
        a[ups[j] + 1] = 0;
      }
    }
    int tens = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) tens += a[i] == 1 && a[i + 1] == 0;
    const double r = a.front() == 0 ? 0.5 * (1.0 + m.q00) : 1.0;
    const double s = a.back() == 1 ? 1.0 / (1.0 + m.q00) : 1.0;
    total += cylinder_prob(m, a) * std::ldexp(1.0, -tens) * r * s;
  }
  return total;
}

double pushforward_window(const MarkovParams& m, double p, std::span<const std::uint8_t> bits) {
  check_unit(p, "bias");
  if (bits.empty()) return 1.0;
  if (bits.size() > 12) throw MeasureError("pushforward_window supports strings up to 12 bits");
  const std::size_t width = bits.size() + 2;  // site -1 .. n + 1
  std::vector<std::uint8_t> a(width);
  std::vector<std::uint8_t> moved(width);
  double total = 0.0;
  for (std::uint32_t word = 0; word < (std::uint32_t{1} << width); ++word) {
    for (std::size_t i = 0; i < width; ++i) a[i] = static_cast<std::uint8_t>((word >> i) & 1u);
    const double prior = cylinder_prob(m, a);
    if (prior == 0.0) continue;
    std::vector<std::size_t> mobile;
    for (std::size_t i = 0; i + 1 < width; ++i) {
      if (a[i] == 1 && a[i + 1] == 0) mobile.push_back(i);
    }
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << mobile.size()); ++mask) {
      const int fired = std::popcount(mask);
      const double w =
          std::pow(p, fired) * std::pow(1.0 - p, static_cast<int>(mobile.size()) - fired);
      if (w == 0.0) continue;
      moved = a;
      for (std::size_t j = 0; j < mobile.size(); ++j) {
        if ((mask >> j) & 1u) {
          moved[mobile[j]] = 0;
          moved[mobile[j] + 1] = 1;
        }
      }
      // The outer sites can also change through neighbours outside the
      // widened string, but the interior sites 0..n cannot.
      if (std::equal(bits.begin(), bits.end(), moved.begin() + 1)) total += prior * w;
    }
  }
  return total;
}

std::vector<std::uint8_t> sample_window(const MarkovParams& m, std::size_t length, Rng& rng) {
  if (length == 0) throw MeasureError("window length must be positive");
  std::vector<std::uint8_t> bits(length);
  bits[0] = coin(rng, m.p1) ? 1 : 0;
  for (std::size_t i = 1; i < length; ++i) {
    bits[i] = coin(rng, m.q(bits[i - 1], 1)) ? 1 : 0;
  }
  return bits;
}

void step_window(std::vector<std::uint8_t>& bits, double p, Rng& rng) {
  // Left to right, a particle that just arrived at i + 1 is skipped by
  // jumping the index past it.
  for (std::size_t i = 0; i + 1 < bits.size(); ++i) {
    if (bits[i] == 1 && bits[i + 1] == 0 && coin(rng, p)) {
      bits[i] = 0;
      bits[i + 1] = 1;
      ++i;
    }
  }
}

namespace {

constexpr std::size_t kBatch = 1000;

struct Pattern {
  std::vector<std::uint8_t> bits;
  std::string name;
};

std::vector<Pattern> all_patterns(int max_length) {
  std::vector<Pattern> out;
  for (int len = 1; len <= max_length; ++len) {
    for (int word = 0; word < (1 << len); ++word) {
      Pattern pat;
      for (int i = len - 1; i >= 0; --i) {
        pat.bits.push_back(static_cast<std::uint8_t>((word >> i) & 1));
        pat.name.push_back(pat.bits.back() ? '1' : '0');
      }
      out.push_back(std::move(pat));
    }
  }
  return out;
}

// Frequency of each pattern over each batch: result[pattern][batch].
std::vector<std::vector<double>> batch_frequencies(const std::vector<std::uint8_t>& bits,
                                                   std::size_t first, std::size_t last,
                                                   const std::vector<Pattern>& patterns) {
  const std::size_t batches = (last - first) / kBatch;
  std::vector<std::vector<double>> out(patterns.size(), std::vector<double>(batches, 0.0));
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t start = first + b * kBatch;
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      const auto& pat = patterns[k].bits;
      int hits = 0;
      for (std::size_t i = start; i < start + kBatch; ++i) {
        hits += std::equal(pat.begin(), pat.end(), bits.begin() + static_cast<std::ptrdiff_t>(i));
      }
      out[k][b] = static_cast<double>(hits) / kBatch;
    }
  }
  return out;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= n - 1.0;
  return {mean, std::sqrt(var / n)};
}

double z_score(double diff, double se) {
  if (se > 0.0) return diff / se;
  return std::abs(diff) < 1e-12 ? 0.0 : std::copysign(1e9, diff);
}

}  // namespace

StationarityReport stationarity_stat_test(const MarkovParams& m, double p, std::size_t length,
                                          int steps, int replicas, std::uint64_t seed) {
  check_unit(p, "bias");
  if (steps < 0 || replicas < 1) throw MeasureError("need steps >= 0 and replicas >= 1");
  const std::size_t margin = static_cast<std::size_t>(steps) + 10;
  if (length < 2 * margin + 2 * kBatch) throw MeasureError("window too short for two batches");
  const auto patterns = all_patterns(3);
  // The last 2 sites of the interior are dropped so every pattern fits.
  const std::size_t first = margin;
  const std::size_t last = length - margin - 2;

  using Frequencies = std::vector<std::vector<double>>;
  auto runs = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t r) {
    Rng rng(replica_seed(seed, r));
    auto bits = sample_window(m, length, rng);
    Frequencies before = batch_frequencies(bits, first, last, patterns);
    for (int t = 0; t < steps; ++t) step_window(bits, p, rng);
    Frequencies after = batch_frequencies(bits, first, last, patterns);
    return std::pair{std::move(before), std::move(after)};
  });

  StationarityReport report;
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    std::vector<double> before;
    std::vector<double> after;
    std::vector<double> change;
    for (const auto& [b, a] : runs) {
      before.insert(before.end(), b[k].begin(), b[k].end());
      after.insert(after.end(), a[k].begin(), a[k].end());
      for (std::size_t i = 0; i < a[k].size(); ++i) change.push_back(a[k][i] - b[k][i]);
    }
    report.batches = before.size();
    if (before.size() < 2) throw MeasureError("need at least two batches");
    const MeanSe mb = mean_se(before);
    const MeanSe ma = mean_se(after);
    const MeanSe mc = mean_se(change);
    PatternStat row;
    row.pattern = patterns[k].name;
    row.expected = cylinder_prob(m, patterns[k].bits);
    row.before = mb.mean;
    row.after = ma.mean;
    row.z_before = z_score(mb.mean - row.expected, mb.se);
    row.z_after = z_score(ma.mean - row.expected, ma.se);
    row.z_change = z_score(mc.mean, mc.se);
    report.max_abs_z = std::max({report.max_abs_z, std::abs(row.z_before),
                                 std::abs(row.z_after), std::abs(row.z_change)});
    report.rows.push_back(std::move(row));
  }
  report.passed = report.max_abs_z <= report.threshold;
  return report;
}

}  // namespace aztec
