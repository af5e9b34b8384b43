#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "aztec/enumerate.hpp"

using namespace aztec;

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

TEST_SUITE("enumerate") {

TEST_CASE("tiling counts") {
  const std::uint64_t expected[] = {1, 2, 8, 64, 1024};
  for (int n = 0; n <= 4; ++n) {
    const auto census = enumerate_tilings(n);
    CHECK(census.tilings.size() == expected[n]);
    CHECK(tiling_count_formula(n) == expected[n]);
    std::set<std::vector<Domino>> distinct;
    for (const Tiling& t : census.tilings) {
      CHECK(validate_tiling(n, t.dominoes()).ok);
      distinct.insert(t.canonical());
      CHECK(horizontal_dominoes(t) % 2 == 0);
      CHECK((static_cast<int>(t.size()) - horizontal_dominoes(t)) % 2 == 0);
    }
    CHECK(distinct.size() == census.tilings.size());
  }
  CHECK_THROWS_AS(enumerate_tilings(5), EnumerationError);
  CHECK_THROWS_AS(enumerate_tilings(-1), EnumerationError);
}

TEST_CASE("horizontal histograms are binomial") {
  const auto two = enumerate_tilings(2).horizontal_histogram;
  CHECK(two == std::map<int, std::uint64_t>{{0, 1}, {1, 3}, {2, 3}, {3, 1}});
  for (int n = 1; n <= 4; ++n) {
    const auto census = enumerate_tilings(n);
    std::uint64_t total = 0;
    for (const auto& [k, count] : census.horizontal_histogram) {
      CHECK(count == binomial(n * (n + 1) / 2, k));
      CHECK(horizontal_count_formula(n, k) == binomial(n * (n + 1) / 2, k));
      total += count;
    }
    CHECK(total == census.tilings.size());
  }
}

TEST_CASE("gibbs weights sum to one") {
  for (double p : {0.5, 0.3, 0.9}) {
    for (int n = 1; n <= 3; ++n) {
      double total = 0.0;
      for (const Tiling& t : enumerate_tilings(n).tilings) total += gibbs_weight(t, p);
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("chi-square p-values") {
  // Upper tail of chi-square with 2 dof is exp(-x / 2).
  CHECK(chi_square_p_value(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-12));
  CHECK(chi_square_p_value(0.0, 5) == doctest::Approx(1.0));
  const auto perfect = chi_square({10, 10, 10}, {10.0, 10.0, 10.0});
  CHECK(perfect.statistic == 0.0);
  CHECK(perfect.p_value == doctest::Approx(1.0));
  const auto impossible = chi_square({5, 5}, {10.0, 0.0});
  CHECK(impossible.p_value == 0.0);
}

TEST_CASE("shuffling is uniform at order 2") {
  const auto report = uniformity_test(2, 80000, 17, 0.5);
  CHECK(report.observed.size() == 8);
  CHECK(report.p_value > 1e-3);
}

TEST_CASE("biased shuffling follows the Gibbs weights") {
  const auto report = uniformity_test(2, 100000, 23, 0.3);
  CHECK(report.p_value > 1e-3);
  // The same samples are far from uniform.
  std::vector<double> flat(report.observed.size(), static_cast<double>(report.samples) / 8.0);
  CHECK(chi_square(report.observed, flat).p_value < 1e-6);
}

TEST_CASE("p = 1 gives the brick wall") {
  const auto report = uniformity_test(1, 1000, 3, 1.0);
  std::uint64_t hits = 0;
  for (std::uint64_t c : report.observed) hits = std::max(hits, c);
  CHECK(hits == 1000);
  CHECK(report.p_value > 1e-3);
}

}  // TEST_SUITE
