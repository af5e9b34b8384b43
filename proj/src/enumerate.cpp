#include "aztec/enumerate.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <functional>

#include "aztec/random.hpp"
#include "aztec/shuffle.hpp"

namespace aztec {

std::uint64_t tiling_count_formula(int order) {
  const int exponent = order * (order + 1) / 2;
  if (order < 0 || exponent >= 64) throw EnumerationError("tiling count exceeds 64 bits");
  return std::uint64_t{1} << exponent;
}

std::uint64_t horizontal_count_formula(int order, int k) {
  const int pairs = order * (order + 1) / 2;
  if (k < 0 || k > pairs) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(pairs - k + i) / i;
  return c;
}

int horizontal_dominoes(const Tiling& t) {
  int h = 0;
  for (const Domino& d : t.dominoes()) h += d.orientation == Orientation::Horizontal;
  return h;
}

double gibbs_weight(const Tiling& t, double p) {
  const int pairs = t.order() * (t.order() + 1) / 2;
  const int k = horizontal_dominoes(t) / 2;
  return std::pow(p, k) * std::pow(1.0 - p, pairs - k);
}

TilingCensus enumerate_tilings(int order) {
  if (order < 0 || order > kMaxEnumerationOrder) {
    throw EnumerationError("enumeration supports orders 0 through 4");
  }
  TilingCensus census;
  census.order = order;
  const auto cells = cells_of_order(order);
  CellIndex covered(order);
  std::vector<Domino> current;

  // Scan position of the first possibly-uncovered cell.
  std::function<void(std::size_t)> search = [&](std::size_t from) {
    while (from < cells.size() && covered.get(cells[from]) != CellIndex::kEmpty) ++from;
    if (from == cells.size()) {
      census.tilings.push_back(Tiling::from_dominoes(order, current));
      return;
    }
    const Cell c = cells[from];
    // Everything before c in scan order is covered, so c is the top-left
    // cell of whatever domino covers it.
    const Domino options[2] = {{c, Orientation::Horizontal},
                               {{c.x, c.y - 1}, Orientation::Vertical}};
    for (const Domino& d : options) {
      if (!inside(d, order)) continue;
      const auto dc = d.cells();
      if (covered.get(dc[0]) != CellIndex::kEmpty || covered.get(dc[1]) != CellIndex::kEmpty) {
        continue;
      }
      covered.at(dc[0]) = covered.at(dc[1]) = 1;
      current.push_back(d);
      search(from + 1);
      current.pop_back();
      covered.at(dc[0]) = covered.at(dc[1]) = CellIndex::kEmpty;
    }
  };
  search(0);

  for (const Tiling& t : census.tilings) ++census.horizontal_histogram[horizontal_dominoes(t) / 2];
  return census;
}

double chi_square_p_value(double statistic, int degrees_of_freedom) {
  if (degrees_of_freedom <= 0) return 1.0;
  boost::math::chi_squared dist(degrees_of_freedom);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquareReport chi_square(std::vector<std::uint64_t> observed, std::vector<double> expected) {
  ChiSquareReport report;
  bool impossible_hit = false;
  int cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    report.samples += observed[i];
    if (expected[i] <= 0.0) {
      impossible_hit = impossible_hit || observed[i] > 0;
      continue;
    }
    const double diff = static_cast<double>(observed[i]) - expected[i];
    report.statistic += diff * diff / expected[i];
    ++cells;
  }
  report.degrees_of_freedom = cells - 1;
  report.p_value =
      impossible_hit ? 0.0 : chi_square_p_value(report.statistic, report.degrees_of_freedom);
  report.observed = std::move(observed);
  report.expected = std::move(expected);
  return report;
}

ChiSquareReport uniformity_test(int order, std::uint64_t samples, std::uint64_t seed,
                                double p) {
  if (order < 0 || order > 3) throw EnumerationError("uniformity_test supports orders 0 through 3");
  const TilingCensus census = enumerate_tilings(order);
  std::map<std::vector<Domino>, std::size_t> bin;
  for (std::size_t i = 0; i < census.tilings.size(); ++i) bin[census.tilings[i].canonical()] = i;

  constexpr std::uint64_t kReplicas = 16;
  auto counts = parallel_map(kReplicas, [&](std::size_t r) {
    std::vector<std::uint64_t> local(census.tilings.size(), 0);
    const std::uint64_t share = samples / kReplicas + (r < samples % kReplicas ? 1 : 0);
    Rng rng(replica_seed(seed, r));
    for (std::uint64_t s = 0; s < share; ++s) {
      Tiling t;
      for (int m = 1; m <= order; ++m) t = shuffle_step(t, p, rng);
      ++local[bin.at(t.canonical())];
    }
    return local;
  });

  std::vector<std::uint64_t> observed(census.tilings.size(), 0);
  for (const auto& local : counts) {
    for (std::size_t i = 0; i < local.size(); ++i) observed[i] += local[i];
  }
  std::vector<double> expected(census.tilings.size());
  for (std::size_t i = 0; i < census.tilings.size(); ++i) {
    expected[i] = static_cast<double>(samples) * gibbs_weight(census.tilings[i], p);
  }
  ChiSquareReport report = chi_square(std::move(observed), std::move(expected));
  report.order = order;
  report.bias = p;
  return report;
}

}  // namespace aztec
