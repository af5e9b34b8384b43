#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "aztec/random.hpp"

namespace aztec {

class MeasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Translation-invariant two-state Markov measure on bit strings.
struct MarkovParams {
  double d = 0.0;     // density of ones
  double bias = 0.5;  // jump probability of the dynamics it is stationary for
  double p0 = 1.0;
  double p1 = 0.0;
  double q00 = 1.0;
  double q01 = 0.0;
  double q10 = 1.0;
  double q11 = 0.0;

  double marginal(int b) const { return b ? p1 : p0; }
  double q(int a, int b) const {
    if (a == 0) return b ? q01 : q00;
    return b ? q11 : q10;
  }
};

// Stationary measure of density d for the fair-coin dynamics.
MarkovParams mu_params(double d);

// Stationary measure of density d for jump probability p in (0, 1].
MarkovParams biased_params(double p, double d);

// p(b0) q(b0, b1) ... q(b_{k-1}, b_k). Empty strings have probability 1.
double cylinder_prob(const MarkovParams& m, std::span<const std::uint8_t> bits);

// One-step image of the cylinder B under the fair-coin dynamics, summed over
// the 2^N predecessor strings (N = number of "01" in B) with the boundary
// corrections for the first and last site. B must start with 0 and end with
// 1, and m must be unbiased.
double pushforward_special(const MarkovParams& m, std::span<const std::uint8_t> bits);

// Exact one-step image of the cylinder B under the dynamics with jump
// probability p: sums over the initial string on B widened by one site on
// each side and over every coin that matters. Works for any B of length <= 12.
double pushforward_window(const MarkovParams& m, double p, std::span<const std::uint8_t> bits);

std::vector<std::uint8_t> sample_window(const MarkovParams& m, std::size_t length, Rng& rng);

// One parallel update of a finite window. Nothing enters at the left end and
// nothing leaves at the right end, so sites near the edges are not faithful.
void step_window(std::vector<std::uint8_t>& bits, double p, Rng& rng);

struct PatternStat {
  std::string pattern;
  double expected = 0.0;  // cylinder probability under m
  double before = 0.0;    // mean frequency in the sampled windows
  double after = 0.0;     // mean frequency after the updates
  double z_before = 0.0;  // (before - expected) / standard error
  double z_after = 0.0;   // (after - expected) / standard error
  double z_change = 0.0;  // paired (after - before) / standard error
};

struct StationarityReport {
  std::vector<PatternStat> rows;
  double max_abs_z = 0.0;
  bool passed = true;  // every |z| <= threshold
  double threshold = 4.0;
  std::size_t batches = 0;
};

// Samples `replicas` windows of length L from m, applies `steps` updates with
// jump probability p and compares the frequencies of all patterns of length
// 1..3 on the interior (margins of steps + 10 sites dropped) with the
// cylinder probabilities. Standard errors come from batch means over
// 1000-site batches.
StationarityReport stationarity_stat_test(const MarkovParams& m, double p, std::size_t length,
                                          int steps, int replicas, std::uint64_t seed);

}  // namespace aztec
