#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "aztec/geometry.hpp"
#include "aztec/random.hpp"

namespace aztec {

class ShuffleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One creation decision: the lower-left cell of a 2x2 hole and whether it was
// filled with two horizontal dominoes.
struct CoinDraw {
  Cell hole;
  bool horizontal = false;

  friend bool operator==(const CoinDraw&, const CoinDraw&) = default;
};

// Every creation coin of a run, in the order the holes were filled.
struct CoinTape {
  std::uint64_t seed = 0;
  double bias = 0.5;
  std::vector<CoinDraw> draws;
};

// Removes every bad block. The result keeps the order of t.
PartialTiling destruction(const Tiling& t);

// Moves each domino one unit along its heading (computed at the order of pt);
// the result lives in the diamond one order larger. Throws ShuffleError if two
// dominoes collide.
PartialTiling slide(const PartialTiling& pt);

// Decomposes the uncovered cells into 2x2 holes, scanning rows top to bottom
// and each row left to right. Returns the lower-left cells of the holes in
// scan order. Throws ShuffleError if an empty cell cannot start a 2x2 hole.
std::vector<Cell> find_holes(const PartialTiling& pt);

// Fills each hole with two horizontal dominoes (probability p) or two vertical
// dominoes, drawing one coin per hole in the given order.
Tiling creation(PartialTiling pt, std::span<const Cell> holes, double p, Rng& rng,
                CoinTape* tape = nullptr);

// Deterministic creation from explicit choices, one per hole.
Tiling fill_holes(PartialTiling pt, std::span<const Cell> holes,
                  const std::vector<bool>& horizontal);

// destruction, slide, find_holes, creation. Maps an order n-1 tiling to an
// order n tiling; p = 1/2 is the unbiased shuffle.
Tiling shuffle_step(const Tiling& t, double p, Rng& rng, CoinTape* tape = nullptr);

// Shuffle step whose creation coins are read from tape.draws starting at
// *cursor. Throws ShuffleError if the tape disagrees with the holes found.
Tiling replay_step(const Tiling& t, const CoinTape& tape, std::size_t* cursor);

// Iterates shuffle_step `order` times from the empty tiling.
Tiling sample_tiling(int order, double p, std::uint64_t seed,
                     CoinTape* tape = nullptr);

// Rebuilds the tiling of the given order from a recorded tape.
Tiling replay(const CoinTape& tape, int order);

int good_block_count(const Tiling& t);
int bad_block_count(const Tiling& t);

// The bad blocks of t as (lower-left cell, orientation) pairs in hole-scan
// order. These are exactly the fill choices under which reverse_step undoes
// shuffle_step(t).
std::vector<CoinDraw> bad_blocks(const Tiling& t);

// Number of holes reverse_step will find in t: good blocks minus the order.
int reverse_hole_count(const Tiling& t);

// Removes the good blocks of an order-n tiling, slides the rest against their
// arrows into the order n-1 diamond and fills the holes with bad blocks,
// horizontal where fill_horizontal is true. Throws ShuffleError when the
// number of choices differs from the number of holes.
Tiling reverse_step(const Tiling& t, const std::vector<bool>& fill_horizontal);

// Number of order n-1 tilings that shuffle into t: 2^(good blocks - n).
// Throws ShuffleError if the count does not fit in 64 bits.
std::uint64_t predecessor_count(const Tiling& t);

}  // namespace aztec
