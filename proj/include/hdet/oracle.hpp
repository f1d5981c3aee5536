#pragma once

// Ground truth on ultimately periodic words: Büchi membership through
// transition profiles, deterministic Rabin membership through simulation,
// and bounded differential equivalence.

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hdet/automaton.hpp"

namespace hdet {

/// The infinite word prefix · period^ω.
struct lasso_word {
  std::vector<symbol_id> prefix;
  std::vector<symbol_id> period;  // non-empty

  /// Symbol names separated by nothing when every name is one character,
  /// by '.' otherwise; ε for an empty prefix.
  std::string to_string(const std::vector<std::string>& symbols) const;

  friend auto operator<=>(const lasso_word&, const lasso_word&) = default;
  friend bool operator==(const lasso_word&, const lasso_word&) = default;
};

/// Reachability summary of a finite word: for every pair of states, whether
/// the word leads from one to the other, and whether it can do so visiting a
/// final state after the first position.
class transition_profile {
 public:
  enum class reach : std::uint8_t { none = 0, path = 1, through_final = 2 };

  /// Profile of the empty word: the identity.
  explicit transition_profile(std::size_t num_states);
  static transition_profile of_symbol(const nbw& a, symbol_id sym);
  static transition_profile of_word(const nbw& a, std::span<const symbol_id> word);

  std::size_t num_states() const { return n_; }
  reach at(state_id from, state_id to) const { return cells_[from * n_ + to]; }

  /// Profile of (this word)·(other word).
  transition_profile then(const transition_profile& other) const;

  friend bool operator==(const transition_profile&,
                         const transition_profile&) = default;

 private:
  std::size_t n_;
  std::vector<reach> cells_;
};

bool nbw_lasso_member(const nbw& a, const lasso_word& w);

/// Runs the prefix, then repeats the period until a period-boundary state
/// recurs; the transitions (or states) of that loop form the infinity set.
bool det_lasso_member(std::size_t num_symbols, state_id initial,
                      std::span<const state_id> successors,
                      const rabin_pair_set& acceptance, const lasso_word& w);

template <class Payload>
bool det_lasso_member(const deterministic_rabin<Payload>& d,
                      const lasso_word& w) {
  return det_lasso_member(d.num_symbols(), d.initial, d.successors,
                          d.acceptance, w);
}

struct counterexample {
  lasso_word word;
  bool nbw_verdict;
  bool det_verdict;
};

struct equiv_report {
  std::size_t tested = 0;
  std::optional<counterexample> first;
  std::chrono::duration<double> wall_time{};
};

/// All lassos with |u| <= max_prefix and 1 <= |v| <= max_period over
/// `num_symbols` symbols, ordered by |u|, u, |v|, v.
std::vector<lasso_word> enumerate_lassos(std::size_t num_symbols,
                                         std::size_t max_prefix,
                                         std::size_t max_period);

equiv_report bounded_equiv(const nbw& a, std::size_t num_symbols,
                           state_id initial, std::span<const state_id> successors,
                           const rabin_pair_set& acceptance,
                           std::size_t max_prefix, std::size_t max_period);

template <class Payload>
equiv_report bounded_equiv(const nbw& a, const deterministic_rabin<Payload>& d,
                           std::size_t max_prefix, std::size_t max_period) {
  if (d.symbols != a.symbols) throw input_error("alphabets differ");
  return bounded_equiv(a, d.num_symbols(), d.initial, d.successors,
                       d.acceptance, max_prefix, max_period);
}

/// key=value lines; `symbols` names the counterexample's letters.
std::string to_key_values(const equiv_report& report,
                          const std::vector<std::string>& symbols);

}  // namespace hdet
