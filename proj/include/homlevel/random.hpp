#pragma once

// Random modules and bounded complexes for property tests and the
// acceptance suite. Everything is drawn from a caller-supplied engine.

#include <random>

#include "homlevel/complex.hpp"

namespace homlevel {

struct RandomShape {
  int max_gens = 2;    // generators per module
  Index max_dim = 6;   // Artin mode: cap on dim_k of each module
  bool free_only = false;
};

/// Artin: a random quotient of A^g. Graded: coker of a random map of frees
/// with generators in degrees base and base + 1.
FgModule random_module(const Ring& r, std::mt19937_64& rng, const RandomShape& shape = {}, int base = 0);

/// A complex supported in [lo, lo + length - 1]; each d_n is a random map
/// into the cycles of the degree below, so d o d = 0 by construction.
Complex random_complex(const Ring& r, int lo, int length, std::mt19937_64& rng,
                       const RandomShape& shape = {});

/// A uniformly random element of the space of chain maps x -> y.
ChainMap random_chain_map(const Complex& x, const Complex& y, std::mt19937_64& rng);

}  // namespace homlevel
