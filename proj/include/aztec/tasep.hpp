#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "aztec/random.hpp"

namespace aztec {

class TasepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Occupancy of the sites lo..hi of Z. Every site left of the window is
// occupied and every site right of it is vacant.
struct ParticleState {
  int lo = 0;
  std::vector<std::uint8_t> bits;

  int hi() const { return lo + static_cast<int>(bits.size()) - 1; }
  int at(int i) const {
    if (i < lo) return 1;
    if (i > hi()) return 0;
    return bits[static_cast<std::size_t>(i - lo)];
  }
  void set(int i, int value) { bits[static_cast<std::size_t>(i - lo)] = static_cast<std::uint8_t>(value); }

  friend auto operator<=>(const ParticleState&, const ParticleState&) = default;
};

// The wedge x*: sites <= 0 occupied, sites > 0 vacant, on [lo, hi].
ParticleState wedge(int lo, int hi);

// Wedge on [-steps - 2, steps + 2], wide enough for a run of `steps` updates.
ParticleState wedge_for_steps(int steps);

// One parallel update: every particle with a vacancy on its right jumps with
// probability p, independently. Throws TasepError when the window has no
// slack (a particle on hi, or a vacancy on lo).
ParticleState step_line(const ParticleState& s, double p, Rng& rng);

// Exact law after `steps` updates from the wedge, on the window
// [-steps - 1, steps + 1]. Supports up to 8 steps.
std::map<ParticleState, double> exact_distribution(int steps, double p);

// Particles strictly right of site k. Requires lo - 1 <= k.
int count_right(const ParticleState& s, int k);

// Limiting normalized particle count right of un at time n.
double h_theory(double u);
// Limiting density, -h'(u) with the right-derivative convention at -1/2.
double f_theory(double u);

// Runs `steps` updates from the wedge on wedge_for_steps(steps).
ParticleState run_wedge(int steps, double p, std::uint64_t seed);

struct ProfileBin {
  double u_lo = 0.0;
  double u_hi = 0.0;
  double center = 0.0;
  double width = 0.0;
  double empirical = 0.0;  // mean occupancy of the sites k with k / steps in the bin
  double theory = 0.0;     // mean of f_theory(k / steps) over the same sites
  int sites = 0;
};

// Splits [u_min, u_max) in u = k / steps into `bins` equal pieces; site k
// falls in the bin containing k / steps.
std::vector<ProfileBin> density_profile(const ParticleState& s, int steps, int bins,
                                        double u_min = -1.0, double u_max = 1.0);

// Upward drift of a locally straight lattice path with slope s.
double drift_rate(double slope);
// |y - x y' - drift_rate(y')| for y = 1/2 + sqrt(x - x^2), x in (0, 1).
double ode_residual(double x);

// Occupancy of the sites of Z / n.
struct RingState {
  std::vector<std::uint8_t> bits;

  int n_sites() const { return static_cast<int>(bits.size()); }
  int particles() const;
  // Number of particles whose clockwise neighbour is vacant.
  int mobile() const;

  friend auto operator<=>(const RingState&, const RingState&) = default;
};

RingState step_ring(const RingState& r, double p, Rng& rng);

// Largest |(pi P)(s) - pi(s)| over the C(n, k) ring states, where P is the
// p = 1/2 ring dynamics and pi(s) is proportional to 2^(mobile particles of s).
double ring_stationarity_check(int n_sites, int particles);

// Stationary law of the ring dynamics with bias p, by power iteration on the
// exact transition matrix. States are bit masks (bit i = site i).
std::map<std::uint32_t, double> ring_stationary_distribution(int n_sites, int particles,
                                                             double p);

// Two configurations on a common window; they must agree outside it.
struct CoupledPair {
  ParticleState upper;
  ParticleState lower;
};

// A maximal run of linked sites: i and i + 1 are linked when either row reads
// "10" there.
struct Block {
  int start = 0;
  std::vector<std::uint8_t> upper;
  std::vector<std::uint8_t> lower;

  int size() const { return static_cast<int>(upper.size()); }
};

enum class BlockStability : std::uint8_t { Stable, Unstable };

std::vector<Block> coupled_blocks(const CoupledPair& c);

// Blocks of length 1 and [10/10], [11/10], [00/10], [110/100] with their
// row swaps are stable; every other block can lose a mismatch.
BlockStability classify_block(const Block& b);

// Fair-coin joint update: a [10/10] block shares one coin; in longer blocks
// the i-th "10" of the upper row and the i-th "10" of the lower row use
// complementary coins. Every other coin is independent. Each row on its own
// follows the p = 1/2 dynamics.
CoupledPair coupled_step(const CoupledPair& c, Rng& rng);

// Joint update in which the particle on site i of either row uses the same
// coin (one uniform per site).
CoupledPair shared_coin_step(const CoupledPair& c, double p, Rng& rng);

// Joint update preserving lower <= upper sitewise, valid for p <= 1/2. A
// lower particle blocked in the upper row by a mobile particle uses the
// complement of that particle's coin; otherwise coins are shared by site.
CoupledPair monotone_step(const CoupledPair& c, double p, Rng& rng);

int mismatch_count(const CoupledPair& c);

// Gap process behind a lead particle that advances with probability b / 2.
// gaps[0] is the distance from the lead particle to the next one.
std::vector<int> y_process_step(std::span<const int> gaps, double b, Rng& rng);

// P(gap > m) under the product stationary law of the gap process.
double gap_tail(int m, double b);
// Mean gap under the same law, (2 - b^2) / (2 - 2b).
double gap_mean(double b);
// Draw from the stationary single-gap law.
int sample_gap(double b, Rng& rng);

}  // namespace aztec
