#pragma once

// Fixpoint exploration of history trees into deterministic Rabin automata,
// with acceptance on transitions (DRTW) or on states (DRW).

#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <string>

#include "hdet/automaton.hpp"
#include "hdet/history_tree.hpp"

namespace hdet {

using drtw = deterministic_rabin<history_tree>;
using drw = deterministic_rabin<enriched_history_tree>;

struct build_options {
  construction_mode mode = construction_mode::canonical;
  mark_semantics marks = mark_semantics::stable_through;
  std::size_t max_states = 2'000'000;
};

struct build_stats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::size_t pairs = 0;
  std::size_t max_tree_size = 0;
  std::size_t max_spawned_size = 0;
  /// Spawned (intermediate) names beyond the n-full tree, summed over steps.
  std::size_t spawned_outside_full_tree = 0;
  /// Result-tree names beyond the n-full tree; always 0 for a sound build.
  std::size_t final_outside_full_tree = 0;
};

/// key=value lines.
std::string to_key_values(const build_stats& stats);

class capacity_error : public std::runtime_error {
 public:
  capacity_error(const std::string& what, build_stats partial)
      : std::runtime_error(what), partial_(partial) {}
  const build_stats& partial() const { return partial_; }

 private:
  build_stats partial_;
};

template <class Automaton>
struct build_result {
  Automaton automaton;
  build_stats stats;
};

/// Breadth-first over reachable history trees, alphabet in declared order.
/// Throws input_error for an invalid NBW and capacity_error past
/// options.max_states.
build_result<drtw> build_drtw(const nbw& a, const build_options& options = {});

/// As build_drtw, but each state also remembers the annotation of the step
/// that entered it, and acceptance moves onto states.
build_result<drw> build_drw(const nbw& a, const build_options& options = {});

/// One pair per index that is ⊕-marked somewhere. For target i, `marks[i]`
/// is its annotation and `carried[i]` the indices present in the tree it
/// leads to (transition-based) or holds (state-based).
rabin_pair_set assemble_pairs(std::span<const transition_annotation> marks,
                              std::span<const std::set<pair_index>> carried,
                              mark_semantics semantics, acceptance_kind kind);

}  // namespace hdet
