#include "hdet/corpus.hpp"

#include <random>
#include <tuple>

namespace hdet {

namespace {

// Portable draws: only the raw engine output is used, never the
// implementation-defined distributions.
struct draw {
  std::mt19937_64 engine;
  std::uint64_t below(std::uint64_t k) { return engine() % k; }
  double unit() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
};

nbw make(std::vector<std::string> states, std::vector<std::string> symbols,
         std::set<state_id> initial,
         std::vector<std::tuple<state_id, symbol_id, state_id>> edges,
         std::set<state_id> finals) {
  nbw a;
  a.state_names = std::move(states);
  a.symbols = std::move(symbols);
  a.initial = std::move(initial);
  for (auto [p, s, q] : edges) a.edges.insert({p, s, q});
  a.finals = std::move(finals);
  return a;
}

}  // namespace

nbw random_nbw(std::uint64_t seed, const random_nbw_params& params) {
  draw rng{std::mt19937_64(seed)};
  nbw a;
  const auto n = params.min_states +
                 static_cast<unsigned>(
                     rng.below(params.max_states - params.min_states + 1));
  for (unsigned q = 0; q < n; ++q) a.state_names.push_back("q" + std::to_string(q));
  for (unsigned s = 0; s < params.num_symbols; ++s) {
    a.symbols.push_back(std::string(1, static_cast<char>('a' + s)));
  }
  const double density =
      params.min_density + rng.unit() * (params.max_density - params.min_density);
  // Mostly a single initial state; occasionally a second one.
  a.initial.insert(0);
  if (n > 1 && rng.unit() < 0.2) {
    a.initial.insert(static_cast<state_id>(rng.below(n)));
  }
  for (state_id p = 0; p < n; ++p) {
    for (symbol_id s = 0; s < params.num_symbols; ++s) {
      for (state_id q = 0; q < n; ++q) {
        if (rng.unit() < density) a.edges.insert({p, s, q});
      }
    }
  }
  for (state_id q = 0; q < n; ++q) {
    if (rng.unit() < params.final_probability) a.finals.insert(q);
  }
  return a;
}

nbw example_e1() {
  return make({"p", "q"}, {"a"}, {0}, {{0, 0, 0}, {0, 0, 1}, {1, 0, 1}}, {1});
}

std::vector<named_nbw> handwritten_fixtures() {
  const std::vector<std::string> ab{"a", "b"};
  std::vector<named_nbw> out;
  out.push_back({"e1", example_e1()});
  // Finitely many b.
  out.push_back({"finitely-many-b",
                 make({"q0", "q1"}, ab, {0},
                      {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}}, {1})});
  out.push_back({"no-finals",
                 make({"q0", "q1"}, ab, {0},
                      {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}, {1, 1, 1}}, {})});
  out.push_back({"universal-loop",
                 make({"q0"}, ab, {0}, {{0, 0, 0}, {0, 1, 0}}, {0})});
  out.push_back({"empty-initial",
                 make({"q0", "q1"}, ab, {}, {{0, 0, 1}, {1, 1, 0}}, {1})});
  // Infinitely many a.
  out.push_back({"infinitely-many-a",
                 make({"q0", "q1"}, ab, {0},
                      {{0, 0, 1}, {0, 1, 0}, {1, 0, 1}, {1, 1, 0}}, {1})});
  // Exactly the word (ab)^ω; any deviation has no successor.
  out.push_back({"ab-forever",
                 make({"q0", "q1"}, ab, {0}, {{0, 0, 1}, {1, 1, 0}}, {0})});
  // Eventually only b; the second initial state never reaches a final.
  out.push_back({"two-initial",
                 make({"q0", "q1", "q2"}, ab, {0, 1},
                      {{0, 0, 0}, {0, 1, 0}, {0, 1, 2}, {2, 1, 2},
                       {1, 0, 1}, {1, 1, 1}},
                      {2})});
  // Nondeterministic guess out of a universal prefix state.
  out.push_back({"a-then-b",
                 make({"q0", "q1", "q2", "q3"}, ab, {0},
                      {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 2},
                       {2, 0, 3}, {2, 1, 2}, {3, 0, 3}, {3, 1, 2}},
                      {2})});
  // Reaches ⊕ on 1.2, 2.1 and 3, which share the identifier (3,1).
  out.push_back({"shared-identifiers",
                 make({"q0", "q1", "q2", "q3"}, ab, {0},
                      {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}, {1, 0, 2}, {1, 1, 0},
                       {1, 1, 3}, {2, 0, 3}, {2, 1, 2}, {2, 1, 3}, {3, 0, 1},
                       {3, 1, 3}},
                      {2})});
  return out;
}

std::vector<named_nbw> standard_corpus(std::size_t seeds) {
  std::vector<named_nbw> out;
  out.reserve(seeds + 10);
  for (std::size_t seed = 1; seed <= seeds; ++seed) {
    out.push_back({"seed-" + std::to_string(seed), random_nbw(seed)});
  }
  for (auto& f : handwritten_fixtures()) out.push_back(std::move(f));
  return out;
}

}  // namespace hdet
