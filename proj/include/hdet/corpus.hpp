#pragma once

// Seeded random Büchi automata and a small set of hand-written ones.

#include <cstdint>
#include <string>
#include <vector>

#include "hdet/automaton.hpp"

namespace hdet {

struct random_nbw_params {
  unsigned min_states = 1;
  unsigned max_states = 5;
  unsigned num_symbols = 2;
  double min_density = 0.1;  // per-edge probability, drawn per automaton
  double max_density = 0.6;
  double final_probability = 0.4;
};

/// Deterministic in `seed`: the same seed gives the same automaton on
/// every platform. States are q0..q(n-1), symbols a, b, c, ...
nbw random_nbw(std::uint64_t seed, const random_nbw_params& params = {});

struct named_nbw {
  std::string name;
  nbw automaton;
};

/// The two-state automaton p -a-> {p,q}, q -a-> q with q final.
nbw example_e1();

/// Ten hand-written automata; the first is example_e1().
std::vector<named_nbw> handwritten_fixtures();

inline constexpr std::size_t kCorpusSeeds = 200;

/// Seeds 1..count followed by the hand-written fixtures.
std::vector<named_nbw> standard_corpus(std::size_t seeds = kCorpusSeeds);

}  // namespace hdet
