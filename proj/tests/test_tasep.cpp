#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "aztec/enumerate.hpp"
#include "aztec/tasep.hpp"

using namespace aztec;

namespace {

std::vector<std::uint8_t> bits_of(const std::string& s) {
  std::vector<std::uint8_t> out;
  for (char c : s) out.push_back(c == '1' ? 1 : 0);
  return out;
}

ParticleState state_of(int lo, const std::string& s) { return {lo, bits_of(s)}; }

int lead_particle(const ParticleState& s) {
  for (int i = s.hi(); i >= s.lo; --i) {
    if (s.at(i)) return i;
  }
  return s.lo - 1;
}

double binomial_pmf(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) *
         std::pow(0.5, n);
}

// Random pair that agrees outside [first, last], with a wedge-like outside.
CoupledPair random_pair(int lo, int size, int first, int last, Rng& rng) {
  CoupledPair c{{lo, std::vector<std::uint8_t>(static_cast<std::size_t>(size))},
                {lo, std::vector<std::uint8_t>(static_cast<std::size_t>(size))}};
  for (int i = lo; i < lo + size; ++i) {
    const int outside = i < first ? 1 : 0;
    const bool in = i >= first && i <= last;
    c.upper.set(i, in ? coin(rng, 0.5) : outside);
    c.lower.set(i, in ? coin(rng, 0.5) : outside);
  }
  return c;
}

}  // namespace

TEST_SUITE("tasep") {

TEST_CASE("wedge and window slack") {
  const ParticleState w = wedge(-3, 3);
  CHECK(w.bits == bits_of("1111000"));
  CHECK(count_right(w, 0) == 0);
  CHECK(count_right(w, -3) == 3);
  CHECK(count_right(wedge_for_steps(10), -5) == 5);
  CHECK_THROWS_AS(count_right(w, -5), TasepError);
  Rng rng(1);
  CHECK_THROWS_AS(step_line(state_of(0, "1101"), 0.5, rng), TasepError);
  CHECK_THROWS_AS(step_line(state_of(0, "0100"), 0.5, rng), TasepError);
  CHECK_THROWS_AS(wedge(1, 3), TasepError);
}

TEST_CASE("p = 1 moves every mobile particle") {
  Rng rng(2);
  ParticleState s = wedge_for_steps(10);
  for (int t = 1; t <= 10; ++t) {
    s = step_line(s, 1.0, rng);
    CHECK(lead_particle(s) == t);
  }
  // Staircase: after 10 steps the sites in (-10, 10] alternate.
  for (int i = -9; i <= 10; ++i) CHECK(s.at(i) == ((i + 10) % 2 == 0 ? 1 : 0));
}

TEST_CASE("both particles of 1010 move independently") {
  Rng rng(3);
  std::map<std::vector<std::uint8_t>, int> hits;
  const ParticleState s = state_of(0, "1110100");
  for (int i = 0; i < 40000; ++i) ++hits[step_line(s, 0.5, rng).bits];
  CHECK(hits.size() == 4);
  for (const auto& [bits, count] : hits) CHECK(std::abs(count / 40000.0 - 0.25) < 0.015);
}

TEST_CASE("the lead particle is binomial") {
  const int n = 20;
  const int runs = 10000;
  std::vector<std::uint64_t> observed(n + 1, 0);
  for (int r = 0; r < runs; ++r) {
    Rng rng(static_cast<std::uint64_t>(r));
    ParticleState s = wedge_for_steps(n);
    for (int t = 0; t < n; ++t) s = step_line(s, 0.5, rng);
    ++observed[static_cast<std::size_t>(lead_particle(s))];
  }
  std::vector<double> expected;
  for (int k = 0; k <= n; ++k) expected.push_back(runs * binomial_pmf(n, k));
  CHECK(chi_square(observed, expected).p_value > 1e-3);
}

TEST_CASE("particle count is conserved") {
  Rng rng(4);
  ParticleState s = wedge_for_steps(200);
  const int total = count_right(s, s.lo - 1);
  for (int t = 0; t < 200; ++t) {
    s = step_line(s, 0.5, rng);
    CHECK(count_right(s, s.lo - 1) == total);
  }
}

TEST_CASE("exact distributions") {
  const auto one = exact_distribution(1, 0.5);
  CHECK(one.size() == 2);
  CHECK(one.at(wedge(-2, 2)) == doctest::Approx(0.5));
  CHECK(one.at(state_of(-2, "11010")) == doctest::Approx(0.5));
  for (int n = 0; n <= 6; ++n) {
    double total = 0.0;
    for (const auto& [s, mass] : exact_distribution(n, 0.3)) total += mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(exact_distribution(9, 0.5), TasepError);

  const auto two = exact_distribution(2, 0.3);
  const int samples = 200000;
  std::map<ParticleState, int> seen;
  Rng rng(5);
  for (int i = 0; i < samples; ++i) {
    ParticleState s = wedge(-3, 3);
    s = step_line(step_line(s, 0.3, rng), 0.3, rng);
    ++seen[s];
  }
  CHECK(seen.size() == two.size());
  for (const auto& [s, mass] : two) {
    const double sigma = std::sqrt(mass * (1.0 - mass) / samples);
    CHECK(std::abs(seen[s] / static_cast<double>(samples) - mass) <= 3.0 * sigma);
  }
}

TEST_CASE("limit profile formulas") {
  CHECK(h_theory(-1.0) == doctest::Approx(1.0));
  CHECK(h_theory(0.6) == 0.0);
  CHECK(h_theory(0.0) == doctest::Approx(0.5 - std::sqrt(2.0) / 4.0).epsilon(1e-12));
  CHECK(h_theory(-0.5) == doctest::Approx(0.5));
  CHECK(h_theory(0.5) == doctest::Approx(0.0));
  CHECK(f_theory(0.0) == doctest::Approx(0.5));
  CHECK(f_theory(0.5) == 0.0);
  CHECK(f_theory(-0.5) == doctest::Approx(1.0));
  CHECK(f_theory(-0.7) == 1.0);

  for (int i = -100; i <= 100; ++i) {
    for (int j = -100; j <= 100; j += 7) {
      const double u = i / 100.0;
      const double v = j / 100.0;
      CHECK(h_theory(0.5 * (u + v)) <= 0.5 * (h_theory(u) + h_theory(v)) + 1e-12);
    }
    if (i < 100) CHECK(h_theory(i / 100.0) >= h_theory((i + 1) / 100.0));
  }
  const double eps = 1e-5;
  for (int i = -49; i <= 49; ++i) {
    const double u = i / 100.0;
    const double slope = (h_theory(u + eps) - h_theory(u - eps)) / (2.0 * eps);
    CHECK(f_theory(u) == doctest::Approx(-slope).epsilon(1e-6));
  }
}

TEST_CASE("drift and the lattice path equation") {
  CHECK(drift_rate(-1.0) == doctest::Approx((2.0 + std::sqrt(2.0)) / 2.0).epsilon(1e-12));
  CHECK(drift_rate(0.0) == doctest::Approx(1.0));
  const double x = 0.25;
  const double y = 0.5 + std::sqrt(x - x * x);
  const double dy = 1.0 / std::sqrt(3.0);
  CHECK(y == doctest::Approx(0.9330127).epsilon(1e-7));
  CHECK(y - x * dy == doctest::Approx(0.7886751).epsilon(1e-7));
  CHECK(drift_rate(dy) == doctest::Approx(0.7886751).epsilon(1e-7));
  CHECK(ode_residual(x) <= 1e-9);
  for (int i = 1; i <= 99; ++i) CHECK(ode_residual(i / 100.0) <= 1e-9);
  CHECK_THROWS_AS(ode_residual(0.0), TasepError);
}

TEST_CASE("ring steps") {
  Rng rng(6);
  const RingState a{bits_of("1100")};
  int moved = 0;
  for (int i = 0; i < 20000; ++i) {
    const RingState b = step_ring(a, 0.5, rng);
    CHECK((b.bits == bits_of("1010") || b.bits == a.bits));
    moved += b.bits != a.bits;
  }
  CHECK(std::abs(moved / 20000.0 - 0.5) < 0.015);

  std::map<std::vector<std::uint8_t>, int> hits;
  for (int i = 0; i < 40000; ++i) ++hits[step_ring(RingState{bits_of("1010")}, 0.5, rng).bits];
  CHECK(hits.size() == 4);
  for (const auto& key : {"1010", "0110", "1001", "0101"}) {
    CHECK(std::abs(hits[bits_of(key)] / 40000.0 - 0.25) < 0.015);
  }
  const RingState full{bits_of("1111")};
  CHECK(step_ring(full, 0.5, rng) == full);
  RingState r{bits_of("1101001100")};
  for (int i = 0; i < 100; ++i) {
    r = step_ring(r, 0.7, rng);
    CHECK(r.particles() == 5);
  }
}

TEST_CASE("ring stationarity of the 2^i law") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(ring_stationarity_check(n, k) <= 1e-12);
  }
  // The power iteration finds the same law.
  auto mobile = [](std::uint32_t mask) {
    int i = 0;
    for (int s = 0; s < 6; ++s) i += ((mask >> s) & 1u) && !((mask >> ((s + 1) % 6)) & 1u);
    return i;
  };
  const auto pi = ring_stationary_distribution(6, 3, 0.5);
  CHECK(pi.size() == 20);
  double total = 0.0;
  for (const auto& [mask, mass] : pi) total += std::ldexp(1.0, mobile(mask));
  for (const auto& [mask, mass] : pi) {
    CHECK(mass == doctest::Approx(std::ldexp(1.0, mobile(mask)) / total).epsilon(1e-9));
  }
  double biased = 0.0;
  for (const auto& [mask, mass] : ring_stationary_distribution(8, 3, 0.3)) biased += mass;
  CHECK(biased == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coupled blocks of the worked example") {
  const CoupledPair c{state_of(0, "001101101101"), state_of(0, "001010000100")};
  const auto blocks = coupled_blocks(c);
  REQUIRE(blocks.size() == 7);
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"0", "0"}, {"0", "0"}, {"1101", "1010"}, {"10", "00"}, {"1", "0"}, {"10", "10"}, {"1", "0"}};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    CHECK(blocks[i].upper == bits_of(expected[i].first));
    CHECK(blocks[i].lower == bits_of(expected[i].second));
  }
  CHECK(mismatch_count(c) == 6);
}

TEST_CASE("block stability") {
  auto block = [](const std::string& a, const std::string& b) {
    return Block{0, bits_of(a), bits_of(b)};
  };
  CHECK(classify_block(block("1", "0")) == BlockStability::Stable);
  CHECK(classify_block(block("10", "10")) == BlockStability::Stable);
  CHECK(classify_block(block("11", "10")) == BlockStability::Stable);
  CHECK(classify_block(block("10", "00")) == BlockStability::Stable);
  CHECK(classify_block(block("100", "110")) == BlockStability::Stable);
  CHECK(classify_block(block("10", "01")) == BlockStability::Unstable);
  CHECK(classify_block(block("1010", "0101")) == BlockStability::Unstable);
  CHECK(classify_block(block("1010", "1100")) == BlockStability::Unstable);
  CHECK(mismatch_count({state_of(0, "100"), state_of(0, "110")}) == 1);
}

TEST_CASE("stable blocks keep their mismatches and unstable ones can lose some") {
  Rng rng(7);
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"11100", "11000"}, {"11000", "10000"}, {"1100", "1010"}, {"10110", "11010"}}) {
    const CoupledPair c{state_of(0, a), state_of(0, b)};
    const int before = mismatch_count(c);
    bool fell = false;
    for (int i = 0; i < 200; ++i) {
      const int after = mismatch_count(coupled_step(c, rng));
      CHECK(after <= before);
      fell = fell || after < before;
    }
    bool all_stable = true;
    for (const Block& blk : coupled_blocks(c)) all_stable = all_stable && classify_block(blk) == BlockStability::Stable;
    CHECK(fell == !all_stable);
  }
}

TEST_CASE("each coupled row follows the fair dynamics") {
  Rng rng(8);
  const CoupledPair c{state_of(0, "1110110100"), state_of(0, "1101010100")};
  std::map<std::vector<std::uint8_t>, int> upper;
  std::map<std::vector<std::uint8_t>, int> lower;
  const int runs = 64000;
  for (int i = 0; i < runs; ++i) {
    const CoupledPair n = coupled_step(c, rng);
    ++upper[n.upper.bits];
    ++lower[n.lower.bits];
  }
  // Three mobile particles above and four below, each moving with probability 1/2.
  CHECK(upper.size() == 8);
  CHECK(lower.size() == 16);
  for (const auto& [bits, count] : upper) CHECK(std::abs(count / double(runs) - 0.125) < 0.01);
  for (const auto& [bits, count] : lower) CHECK(std::abs(count / double(runs) - 0.0625) < 0.01);
}

TEST_CASE("equal rows stay equal") {
  Rng rng(9);
  CoupledPair c = random_pair(-60, 160, 0, 39, rng);
  c.lower = c.upper;
  for (int t = 0; t < 50; ++t) {
    c = coupled_step(c, rng);
    CHECK(c.upper == c.lower);
  }
}

TEST_CASE("mismatches never increase under the fair coupling") {
  Rng rng(10);
  for (int pair = 0; pair < 200; ++pair) {
    CoupledPair c = random_pair(-110, 260, 0, 39, rng);
    int m = mismatch_count(c);
    for (int t = 0; t < 100; ++t) {
      c = coupled_step(c, rng);
      const int next = mismatch_count(c);
      REQUIRE(next <= m);
      m = next;
    }
  }
}

TEST_CASE("the monotone coupling preserves sitewise order") {
  Rng rng(11);
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    CoupledPair c = random_pair(-40, 120, 0, 19, rng);
    // Raise the upper row to dominate the lower one.
    for (std::size_t i = 0; i < c.upper.bits.size(); ++i) c.upper.bits[i] |= c.lower.bits[i];
    for (int t = 0; t < 10; ++t) {
      c = monotone_step(c, 0.5, rng);
      for (std::size_t i = 0; i < c.upper.bits.size(); ++i) violations += c.lower.bits[i] > c.upper.bits[i];
    }
  }
  CHECK(violations == 0);
  CHECK_THROWS_AS(monotone_step(random_pair(-5, 20, 0, 3, rng), 0.7, rng), TasepError);
}

TEST_CASE("shared coins at p = 0.9 spread mismatches") {
  const std::string top = "100110";
  const std::string bottom = "110100";
  int grew = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int lo = -60;
    const int size = 720;
    CoupledPair c{{lo, std::vector<std::uint8_t>(size)}, {lo, std::vector<std::uint8_t>(size)}};
    for (int i = lo; i < lo + size; ++i) {
      const bool periodic = i >= 0 && i < 600;
      c.upper.set(i, periodic ? top[static_cast<std::size_t>(i % 6)] - '0' : i < 0);
      c.lower.set(i, periodic ? bottom[static_cast<std::size_t>(i % 6)] - '0' : i < 0);
    }
    auto density = [&] {
      int m = 0;
      for (int i = 100; i < 500; ++i) m += c.upper.at(i) != c.lower.at(i);
      return m / 400.0;
    };
    CHECK(density() < 0.34);
    bool over = false;
    for (int t = 0; t < 50 && !over; ++t) {
      c = shared_coin_step(c, 0.9, rng);
      over = density() > 0.5;
    }
    grew += over;
  }
  CHECK(grew >= 90);
}

TEST_CASE("gap process") {
  CHECK(gap_tail(1, 0.5) == doctest::Approx(0.5));
  CHECK(gap_tail(2, 0.5) == doctest::Approx(1.0 / 6.0));
  CHECK(gap_tail(0, 0.5) == 1.0);
  CHECK(gap_mean(0.5) == doctest::Approx(1.75));

  Rng rng(12);
  const std::vector<int> ones(5, 1);
  int grew = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto next = y_process_step(ones, 1.0, rng);
    CHECK(std::equal(next.begin() + 1, next.end(), ones.begin() + 1));
    grew += next[0] == 2;
  }
  CHECK(std::abs(grew / 20000.0 - 0.5) < 0.015);
}

TEST_CASE("the gap law is stationary") {
  const double b = 0.5;
  Rng rng(13);
  std::vector<int> gaps(10000);
  double mean = 0.0;
  for (int& g : gaps) {
    g = sample_gap(b, rng);
    mean += g;
  }
  CHECK(mean / gaps.size() == doctest::Approx(gap_mean(b)).epsilon(0.03));
  for (int t = 0; t < 1000; ++t) gaps = y_process_step(gaps, b, rng);
  const double n = static_cast<double>(gaps.size());
  for (int m = 1; m <= 6; ++m) {
    const double expected = gap_tail(m - 1, b) - gap_tail(m, b);
    const double observed = static_cast<double>(std::count(gaps.begin(), gaps.end(), m)) / n;
    CHECK(std::abs(observed - expected) <= 3.0 * std::sqrt(expected * (1.0 - expected) / n));
  }
}

}  // TEST_SUITE
