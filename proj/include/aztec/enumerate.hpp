#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "aztec/geometry.hpp"

namespace aztec {

class EnumerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxEnumerationOrder = 4;

struct TilingCensus {
  int order = 0;
  std::vector<Tiling> tilings;
  // Number of horizontal pairs k (half the horizontal dominoes) -> tilings.
  std::map<int, std::uint64_t> horizontal_histogram;
};

// 2^(n(n+1)/2).
std::uint64_t tiling_count_formula(int order);

// n(n+1)/2 choose k, the number of tilings with 2k horizontal dominoes.
std::uint64_t horizontal_count_formula(int order, int k);

int horizontal_dominoes(const Tiling& t);

// p^k (1-p)^(n(n+1)/2 - k), k = horizontal dominoes / 2.
double gibbs_weight(const Tiling& t, double p);

// Every tiling of the order-n diamond, found by depth-first search over the
// cells in scan order. Throws EnumerationError for n outside [0, 4].
TilingCensus enumerate_tilings(int order);

struct ChiSquareReport {
  int order = 0;
  double bias = 0.5;
  std::uint64_t samples = 0;
  std::vector<std::uint64_t> observed;  // indexed like the census
  std::vector<double> expected;
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 1.0;
};

// Upper tail probability of the chi-square distribution.
double chi_square_p_value(double statistic, int degrees_of_freedom);

// Pearson test of observed counts against expected counts. Cells with zero
// expectation must be empty; any hit there yields p-value 0.
ChiSquareReport chi_square(std::vector<std::uint64_t> observed,
                           std::vector<double> expected);

// Samples tilings of order n <= 3 by shuffling with bias p and tests the
// empirical law against the Gibbs weights (uniform when p = 1/2). Replicas run
// in parallel with seeds seed, seed + 1, ...
ChiSquareReport uniformity_test(int order, std::uint64_t samples, std::uint64_t seed,
                                double p);

}  // namespace aztec
