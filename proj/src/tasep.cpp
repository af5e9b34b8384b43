#include "aztec/tasep.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace aztec {

ParticleState wedge(int lo, int hi) {
  if (lo > 0 || hi < 1) throw TasepError("wedge window must contain sites 0 and 1");
  ParticleState s;
  s.lo = lo;
  s.bits.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (int i = lo; i <= 0; ++i) s.set(i, 1);
  return s;
}

ParticleState wedge_for_steps(int steps) {
  if (steps < 0) throw TasepError("negative step count");
  return wedge(-steps - 2, steps + 2);
}

namespace {

void check_slack(const ParticleState& s) {
  if (s.bits.empty() || s.bits.back() == 1 || s.bits.front() == 0) {
    throw TasepError("window exhausted: widen the particle window");
  }
}

void check_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw TasepError("bias must lie in [0, 1]");
}

}  // namespace

ParticleState step_line(const ParticleState& s, double p, Rng& rng) {
  check_p(p);
  check_slack(s);
  ParticleState next = s;
  const std::size_t n = s.bits.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (s.bits[i] == 1 && s.bits[i + 1] == 0 && coin(rng, p)) {
      next.bits[i] = 0;
      next.bits[i + 1] = 1;
    }
  }
  return next;
}

std::map<ParticleState, double> exact_distribution(int steps, double p) {
  check_p(p);
  if (steps < 0 || steps > 8) throw TasepError("exact_distribution supports 0..8 steps");
  std::map<ParticleState, double> law{{wedge(-steps - 1, steps + 1), 1.0}};
  for (int t = 0; t < steps; ++t) {
    std::map<ParticleState, double> next;
    for (const auto& [state, mass] : law) {
      check_slack(state);
      std::vector<std::size_t> mobile;
      for (std::size_t i = 0; i + 1 < state.bits.size(); ++i) {
        if (state.bits[i] == 1 && state.bits[i + 1] == 0) mobile.push_back(i);
      }
      const std::uint32_t outcomes = std::uint32_t{1} << mobile.size();
      for (std::uint32_t mask = 0; mask < outcomes; ++mask) {
        const int fired = std::popcount(mask);
        const double w =
            std::pow(p, fired) * std::pow(1.0 - p, static_cast<int>(mobile.size()) - fired);
        if (w == 0.0) continue;
        ParticleState moved = state;
        for (std::size_t j = 0; j < mobile.size(); ++j) {
          if (!((mask >> j) & 1u)) continue;
          moved.bits[mobile[j]] = 0;
          moved.bits[mobile[j] + 1] = 1;
        }
        next[moved] += mass * w;
      }
    }
    law = std::move(next);
  }
  return law;
}

int count_right(const ParticleState& s, int k) {
  if (k < s.lo - 1) throw TasepError("count_right: infinitely many particles right of k");
  int total = 0;
  for (int i = std::max(k + 1, s.lo); i <= s.hi(); ++i) total += s.at(i);
  return total;
}

double h_theory(double u) {
  if (u < -0.5) return -u;
  if (u > 0.5) return 0.0;
  return (1.0 - u) / 2.0 - 0.5 * std::sqrt(std::max(0.0, 0.5 - u * u));
}

double f_theory(double u) {
  if (u < -0.5) return 1.0;
  if (u >= 0.5) return 0.0;
  return 0.5 - u / std::sqrt(2.0 - 4.0 * u * u);
}

ParticleState run_wedge(int steps, double p, std::uint64_t seed) {
  Rng rng(seed);
  ParticleState s = wedge_for_steps(steps);
  for (int t = 0; t < steps; ++t) s = step_line(s, p, rng);
  return s;
}

std::vector<ProfileBin> density_profile(const ParticleState& s, int steps, int bins,
                                        double u_min, double u_max) {
  if (steps < 1 || bins < 1) throw TasepError("density_profile needs steps >= 1 and bins >= 1");
  if (!(u_min < u_max)) throw TasepError("density_profile needs u_min < u_max");
  std::vector<ProfileBin> out(static_cast<std::size_t>(bins));
  const double width = (u_max - u_min) / bins;
  for (int b = 0; b < bins; ++b) {
    ProfileBin& bin = out[static_cast<std::size_t>(b)];
    bin.u_lo = u_min + b * width;
    bin.u_hi = bin.u_lo + width;
    bin.center = bin.u_lo + width / 2.0;
    bin.width = width;
  }
  const int k_first = static_cast<int>(std::ceil(u_min * steps));
  for (int k = k_first; static_cast<double>(k) < u_max * steps; ++k) {
    const double u = static_cast<double>(k) / steps;
    const int b = std::min(bins - 1, static_cast<int>(std::floor((u - u_min) / width)));
    ProfileBin& bin = out[static_cast<std::size_t>(b)];
    bin.empirical += s.at(k);
    bin.theory += f_theory(u);
    ++bin.sites;
  }
  for (ProfileBin& bin : out) {
    if (bin.sites == 0) continue;
    bin.empirical /= bin.sites;
    bin.theory /= bin.sites;
  }
  return out;
}

double drift_rate(double slope) {
  return ((1.0 - slope) + std::sqrt(1.0 + slope * slope)) / 2.0;
}

double ode_residual(double x) {
  if (!(x > 0.0 && x < 1.0)) throw TasepError("ode_residual needs x in (0, 1)");
  const double root = std::sqrt(x - x * x);
  const double y = 0.5 + root;
  const double dy = (1.0 - 2.0 * x) / (2.0 * root);
  return std::abs(y - x * dy - drift_rate(dy));
}

int RingState::particles() const {
  return static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

int RingState::mobile() const {
  const std::size_t n = bits.size();
  int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i] == 1 && bits[(i + 1) % n] == 0) ++total;
  }
  return total;
}

RingState step_ring(const RingState& r, double p, Rng& rng) {
  check_p(p);
  RingState next = r;
  const std::size_t n = r.bits.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (r.bits[i] == 1 && r.bits[j] == 0 && coin(rng, p)) {
      next.bits[i] = 0;
      next.bits[j] = 1;
    }
  }
  return next;
}

namespace {

struct RingChain {
  std::vector<std::uint32_t> states;
  std::map<std::uint32_t, std::size_t> index;
  // Sparse rows: (target, probability).
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;
};

int ring_mobile(std::uint32_t s, int n) {
  int total = 0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    if (((s >> i) & 1u) && !((s >> j) & 1u)) ++total;
  }
  return total;
}

RingChain ring_chain(int n, int k, double p) {
  if (n < 1 || n > 20) throw TasepError("ring size must lie in 1..20");
  if (k < 0 || k > n) throw TasepError("particle count must lie in 0..n");
  check_p(p);
  RingChain chain;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    if (std::popcount(s) == k) {
      chain.index[s] = chain.states.size();
      chain.states.push_back(s);
    }
  }
  chain.rows.resize(chain.states.size());
  for (std::size_t a = 0; a < chain.states.size(); ++a) {
    const std::uint32_t s = chain.states[a];
    std::vector<int> mobile;
    for (int i = 0; i < n; ++i) {
      if (((s >> i) & 1u) && !((s >> ((i + 1) % n)) & 1u)) mobile.push_back(i);
    }
    std::map<std::size_t, double> row;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << mobile.size()); ++mask) {
      const int fired = std::popcount(mask);
      const double w =
          std::pow(p, fired) * std::pow(1.0 - p, static_cast<int>(mobile.size()) - fired);
      if (w == 0.0) continue;
      std::uint32_t t = s;
      for (std::size_t j = 0; j < mobile.size(); ++j) {
        if (!((mask >> j) & 1u)) continue;
        const int i = mobile[j];
        t &= ~(std::uint32_t{1} << i);
        t |= std::uint32_t{1} << ((i + 1) % n);
      }
      row[chain.index.at(t)] += w;
    }
    chain.rows[a].assign(row.begin(), row.end());
  }
  return chain;
}

std::vector<double> push_forward(const RingChain& chain, const std::vector<double>& pi) {
  std::vector<double> out(pi.size(), 0.0);
  for (std::size_t a = 0; a < pi.size(); ++a) {
    for (const auto& [b, w] : chain.rows[a]) out[b] += pi[a] * w;
  }
  return out;
}

}  // namespace

double ring_stationarity_check(int n_sites, int particles) {
  const RingChain chain = ring_chain(n_sites, particles, 0.5);
  std::vector<double> pi(chain.states.size());
  double total = 0.0;
  for (std::size_t a = 0; a < pi.size(); ++a) {
    pi[a] = std::ldexp(1.0, ring_mobile(chain.states[a], n_sites));
    total += pi[a];
  }
  for (double& v : pi) v /= total;
  const auto moved = push_forward(chain, pi);
  double worst = 0.0;
  for (std::size_t a = 0; a < pi.size(); ++a) worst = std::max(worst, std::abs(moved[a] - pi[a]));
  return worst;
}

std::map<std::uint32_t, double> ring_stationary_distribution(int n_sites, int particles,
                                                             double p) {
  const RingChain chain = ring_chain(n_sites, particles, p);
  std::vector<double> pi(chain.states.size(), 1.0 / static_cast<double>(chain.states.size()));
  // The lazy chain (I + P) / 2 has the same stationary law and is aperiodic.
  for (int iter = 0; iter < 200000; ++iter) {
    auto moved = push_forward(chain, pi);
    double change = 0.0;
    for (std::size_t a = 0; a < pi.size(); ++a) {
      moved[a] = 0.5 * (moved[a] + pi[a]);
      change = std::max(change, std::abs(moved[a] - pi[a]));
    }
    pi = std::move(moved);
    if (change < 1e-15) break;
  }
  std::map<std::uint32_t, double> out;
  for (std::size_t a = 0; a < pi.size(); ++a) out[chain.states[a]] = pi[a];
  return out;
}

namespace {

void check_pair(const CoupledPair& c) {
  if (c.upper.lo != c.lower.lo || c.upper.bits.size() != c.lower.bits.size()) {
    throw TasepError("coupled rows must share a window");
  }
  check_slack(c.upper);
  check_slack(c.lower);
}

bool pair10(const std::vector<std::uint8_t>& row, std::size_t i) {
  return row[i] == 1 && row[i + 1] == 0;
}

// Site ranges [first, last] of the blocks, as window offsets.
std::vector<std::pair<std::size_t, std::size_t>> block_ranges(const CoupledPair& c) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = c.upper.bits.size();
  std::size_t first = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool linked = i + 1 < n && (pair10(c.upper.bits, i) || pair10(c.lower.bits, i));
    if (!linked) {
      out.emplace_back(first, i);
      first = i + 1;
    }
  }
  return out;
}

void move(std::vector<std::uint8_t>& row, std::size_t i) {
  row[i] = 0;
  row[i + 1] = 1;
}

}  // namespace

std::vector<Block> coupled_blocks(const CoupledPair& c) {
  if (c.upper.lo != c.lower.lo || c.upper.bits.size() != c.lower.bits.size()) {
    throw TasepError("coupled rows must share a window");
  }
  std::vector<Block> out;
  for (const auto& [first, last] : block_ranges(c)) {
    Block b;
    b.start = c.upper.lo + static_cast<int>(first);
    b.upper.assign(c.upper.bits.begin() + static_cast<std::ptrdiff_t>(first),
                   c.upper.bits.begin() + static_cast<std::ptrdiff_t>(last + 1));
    b.lower.assign(c.lower.bits.begin() + static_cast<std::ptrdiff_t>(first),
                   c.lower.bits.begin() + static_cast<std::ptrdiff_t>(last + 1));
    out.push_back(std::move(b));
  }
  return out;
}

BlockStability classify_block(const Block& b) {
  if (b.size() == 1) return BlockStability::Stable;
  using Rows = std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>;
  static const std::vector<Rows> stable = {
      {{1, 0}, {1, 0}}, {{1, 1}, {1, 0}}, {{0, 0}, {1, 0}}, {{1, 1, 0}, {1, 0, 0}}};
  for (const auto& [a, c] : stable) {
    if ((b.upper == a && b.lower == c) || (b.upper == c && b.lower == a)) {
      return BlockStability::Stable;
    }
  }
  return BlockStability::Unstable;
}

CoupledPair coupled_step(const CoupledPair& c, Rng& rng) {
  check_pair(c);
  CoupledPair next = c;
  for (const auto& [first, last] : block_ranges(c)) {
    std::vector<std::size_t> up;
    std::vector<std::size_t> low;
    for (std::size_t i = first; i < last; ++i) {
      if (pair10(c.upper.bits, i)) up.push_back(i);
      if (pair10(c.lower.bits, i)) low.push_back(i);
    }
    if (last - first == 1 && up.size() == 1 && low.size() == 1) {
      if (coin(rng, 0.5)) {
        move(next.upper.bits, first);
        move(next.lower.bits, first);
      }
      continue;
    }
    const std::size_t paired = std::min(up.size(), low.size());
    for (std::size_t j = 0; j < paired; ++j) {
      if (coin(rng, 0.5)) {
        move(next.upper.bits, up[j]);
      } else {
        move(next.lower.bits, low[j]);
      }
    }
    for (std::size_t j = paired; j < up.size(); ++j) {
      if (coin(rng, 0.5)) move(next.upper.bits, up[j]);
    }
    for (std::size_t j = paired; j < low.size(); ++j) {
      if (coin(rng, 0.5)) move(next.lower.bits, low[j]);
    }
  }
  return next;
}

CoupledPair shared_coin_step(const CoupledPair& c, double p, Rng& rng) {
  check_p(p);
  check_pair(c);
  CoupledPair next = c;
  for (std::size_t i = 0; i + 1 < c.upper.bits.size(); ++i) {
    const bool a = pair10(c.upper.bits, i);
    const bool b = pair10(c.lower.bits, i);
    if (!a && !b) continue;
    if (coin(rng, p)) {
      if (a) move(next.upper.bits, i);
      if (b) move(next.lower.bits, i);
    }
  }
  return next;
}

CoupledPair monotone_step(const CoupledPair& c, double p, Rng& rng) {
  check_p(p);
  check_pair(c);
  if (p > 0.5) throw TasepError("monotone coupling needs p <= 1/2");
  const std::size_t n = c.upper.bits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (c.lower.bits[i] > c.upper.bits[i]) throw TasepError("monotone_step needs lower <= upper");
  }
  std::vector<double> u(n);
  for (double& v : u) v = uniform01(rng);
  CoupledPair next = c;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pair10(c.upper.bits, i) && u[i] < p) move(next.upper.bits, i);
    if (!pair10(c.lower.bits, i)) continue;
    bool jump = false;
    if (pair10(c.upper.bits, i)) {
      jump = u[i] < p;
    } else if (i + 2 < n && pair10(c.upper.bits, i + 1)) {
      jump = u[i + 1] >= 1.0 - p;
    } else {
      jump = coin(rng, p);
    }
    if (jump) move(next.lower.bits, i);
  }
  return next;
}

int mismatch_count(const CoupledPair& c) {
  if (c.upper.lo != c.lower.lo || c.upper.bits.size() != c.lower.bits.size()) {
    throw TasepError("coupled rows must share a window");
  }
  int total = 0;
  for (std::size_t i = 0; i < c.upper.bits.size(); ++i) total += c.upper.bits[i] != c.lower.bits[i];
  return total;
}

std::vector<int> y_process_step(std::span<const int> gaps, double b, Rng& rng) {
  if (!(b > 0.0 && b <= 1.0)) throw TasepError("gap process needs b in (0, 1]");
  for (int g : gaps) {
    if (g < 1) throw TasepError("gaps must be positive");
  }
  const std::size_t k = gaps.size();
  // alpha[i] is the jump of particle i; particle 0 is the lead.
  std::vector<int> alpha(k + 1, 0);
  alpha[0] = coin(rng, b / 2.0) ? 1 : 0;
  for (std::size_t i = 1; i <= k; ++i) {
    alpha[i] = gaps[i - 1] == 1 ? 0 : (coin(rng, 0.5) ? 1 : 0);
  }
  std::vector<int> next(k);
  for (std::size_t i = 0; i < k; ++i) next[i] = gaps[i] + alpha[i] - alpha[i + 1];
  return next;
}

double gap_tail(int m, double b) {
  if (!(b > 0.0 && b < 1.0)) throw TasepError("gap law needs b in (0, 1)");
  if (m < 1) return 1.0;
  return b * std::pow(b / (2.0 - b), m - 1);
}

double gap_mean(double b) {
  if (!(b > 0.0 && b < 1.0)) throw TasepError("gap law needs b in (0, 1)");
  return (2.0 - b * b) / (2.0 - 2.0 * b);
}

int sample_gap(double b, Rng& rng) {
  if (!(b > 0.0 && b < 1.0)) throw TasepError("gap law needs b in (0, 1)");
  if (!coin(rng, b)) return 1;
  const double r = b / (2.0 - b);
  int g = 2;
  while (coin(rng, r)) ++g;
  return g;
}

}  // namespace aztec
