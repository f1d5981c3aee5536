#pragma once

// Büchi input automata, deterministic Rabin output automata, and the
// elementary operations on them.

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hdet/ordered_tree.hpp"

namespace hdet {

using state_id = std::uint32_t;
using symbol_id = std::uint32_t;

/// Raised for malformed arguments to automaton operations (unknown states or
/// symbols, mismatched acceptance kinds, alphabet mismatches).
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Set of NBW states packed into one machine word. Determinization is
/// limited to automata with at most kMaxStates states.
class state_set {
 public:
  static constexpr std::size_t kMaxStates = 64;

  constexpr state_set() = default;
  constexpr explicit state_set(std::uint64_t bits) : bits_(bits) {}
  state_set(std::initializer_list<state_id> states);

  static state_set single(state_id q) { return state_set{q}; }

  bool contains(state_id q) const { return (bits_ >> q) & 1U; }
  void insert(state_id q);
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  std::uint64_t bits() const { return bits_; }
  std::vector<state_id> to_vector() const;
  bool is_subset_of(state_set other) const { return (bits_ & ~other.bits_) == 0; }

  friend state_set operator|(state_set a, state_set b) { return state_set(a.bits_ | b.bits_); }
  friend state_set operator&(state_set a, state_set b) { return state_set(a.bits_ & b.bits_); }
  friend state_set operator-(state_set a, state_set b) { return state_set(a.bits_ & ~b.bits_); }
  state_set& operator|=(state_set o) { bits_ |= o.bits_; return *this; }

  friend auto operator<=>(const state_set&, const state_set&) = default;
  friend bool operator==(const state_set&, const state_set&) = default;

 private:
  std::uint64_t bits_ = 0;
};

struct edge {
  state_id from;
  symbol_id symbol;
  state_id to;
  friend auto operator<=>(const edge&, const edge&) = default;
  friend bool operator==(const edge&, const edge&) = default;
};

/// Nondeterministic Büchi word automaton over an explicit alphabet. States
/// are the dense ids 0..state_names.size()-1.
struct nbw {
  std::vector<std::string> state_names;
  std::vector<std::string> symbols;
  std::set<state_id> initial;
  std::set<edge> edges;
  std::set<state_id> finals;

  std::size_t num_states() const { return state_names.size(); }
  std::size_t num_symbols() const { return symbols.size(); }
  std::optional<symbol_id> find_symbol(std::string_view name) const;
  std::optional<state_id> find_state(std::string_view name) const;

  friend bool operator==(const nbw&, const nbw&) = default;
};

struct diagnostic {
  std::string location;  // e.g. "edge 3", "initial", "symbols[1]"
  std::string message;
};

/// Every invariant violation, empty for a valid automaton.
std::vector<diagnostic> validate_nbw(const nbw& a);

/// { q' | (q, sym, q') ∈ δ, q ∈ from }. Throws input_error for unknown states
/// or symbols.
std::set<state_id> post_set(const nbw& a, const std::set<state_id>& from,
                            symbol_id sym);

/// Precomputed successor sets, for automata with at most kMaxStates states.
class successor_table {
 public:
  explicit successor_table(const nbw& a);
  state_set post(state_set from, symbol_id sym) const;
  state_set finals() const { return finals_; }
  state_set initial() const { return initial_; }
  std::size_t num_states() const { return num_states_; }
  std::size_t num_symbols() const { return num_symbols_; }

 private:
  std::size_t num_states_;
  std::size_t num_symbols_;
  std::vector<state_set> succ_;  // [state * num_symbols + symbol]
  state_set finals_;
  state_set initial_;
};

// --- Rabin acceptance ---------------------------------------------------------

/// Name of a Rabin pair: a node name (baseline construction), a canonical
/// identifier, or a plain ordinal for automata read back from files.
using pair_index = std::variant<std::uint32_t, node_name, identifier>;

std::string to_string(const pair_index& index);

enum class acceptance_kind { transition_based, state_based };

/// Mark targets are transition ids (state * |Σ| + symbol) or state ids.
struct rabin_pair {
  pair_index index;
  std::set<std::uint32_t> accepting;
  std::set<std::uint32_t> rejecting;
  friend bool operator==(const rabin_pair&, const rabin_pair&) = default;
};

struct rabin_pair_set {
  acceptance_kind kind = acceptance_kind::transition_based;
  std::vector<rabin_pair> pairs;
  friend bool operator==(const rabin_pair_set&, const rabin_pair_set&) = default;
};

/// True iff some pair meets `inf` in its accepting set and misses its
/// rejecting set. Throws input_error if `inf_kind` differs from acc.kind.
bool rabin_loop_accepts(const rabin_pair_set& acc, acceptance_kind inf_kind,
                        const std::set<std::uint32_t>& inf);

/// ⊕ / ⊖ decoration of one determinization step.
///   accepting: stable nodes whose subtrees were pruned (⊕)
///   unstable:  nodes renamed by compression (⊖)
///   displaced: indices of deleted source nodes that another node of the
///              result carries (filled in under stable-through marks only)
struct transition_annotation {
  std::set<pair_index> accepting;
  std::set<pair_index> unstable;
  std::set<pair_index> displaced;

  bool empty() const {
    return accepting.empty() && unstable.empty() && displaced.empty();
  }
  friend auto operator<=>(const transition_annotation&,
                          const transition_annotation&) = default;
  friend bool operator==(const transition_annotation&,
                         const transition_annotation&) = default;
};

/// Complete deterministic automaton with Rabin acceptance. Each state
/// carries a payload (a history tree, an enriched history tree, or nothing
/// for automata read from files).
template <class Payload>
struct deterministic_rabin {
  std::vector<std::string> symbols;
  std::vector<Payload> states;
  state_id initial = 0;
  std::vector<state_id> successors;                // [state * |Σ| + symbol]
  std::vector<transition_annotation> annotations;  // parallel to successors
  rabin_pair_set acceptance;

  std::size_t num_states() const { return states.size(); }
  std::size_t num_symbols() const { return symbols.size(); }
  std::uint32_t transition(state_id s, symbol_id a) const {
    return static_cast<std::uint32_t>(s * symbols.size() + a);
  }
  state_id successor(state_id s, symbol_id a) const {
    return successors.at(transition(s, a));
  }
  /// Exactly one successor per (state, symbol) and every id in range.
  bool is_total() const {
    if (initial >= states.size()) return false;
    if (successors.size() != states.size() * symbols.size()) return false;
    for (auto t : successors) {
      if (t >= states.size()) return false;
    }
    return true;
  }
};

}  // namespace hdet
