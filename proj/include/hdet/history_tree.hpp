#pragma once

// History trees (optionally carrying canonical identifiers) and the
// σ-successor construction between them.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hdet/automaton.hpp"
#include "hdet/ordered_tree.hpp"

namespace hdet {

/// baseline: Rabin pairs are indexed by node names.
/// canonical: Rabin pairs are indexed by canonical (height, flag) identifiers.
enum class construction_mode { baseline, canonical };

/// Which transitions count against a pair index.
///   stable_through: ⊖, plus deleted nodes whose index another node takes
///                   over, plus targets lacking the index. Default.
///   target_absence: ⊖ plus targets lacking the index.
///   paper_strict:   ⊖ only, and a renamed accepting node gets neither mark.
enum class mark_semantics { stable_through, target_absence, paper_strict };

std::string to_string(construction_mode mode);
std::string to_string(mark_semantics marks);

struct history_node {
  node_name name;
  state_set label;
  std::optional<identifier> id;

  friend auto operator<=>(const history_node&, const history_node&) = default;
  friend bool operator==(const history_node&, const history_node&) = default;
};

/// Ordered tree labelled with NBW state sets. The empty tree is the
/// rejecting sink.
class history_tree {
 public:
  history_tree() = default;
  /// Nodes in any order; they are stored sorted by name.
  explicit history_tree(std::vector<history_node> nodes);

  static history_tree sink() { return {}; }
  bool is_sink() const { return nodes_.empty(); }

  const std::vector<history_node>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  const history_node* find(const node_name& name) const;
  ordered_tree_set shape() const;

  history_tree without_identifiers() const;

  /// Pair indices carried by the nodes under `mode`.
  std::set<pair_index> indices(construction_mode mode) const;

  /// "ε:{p,q}(0,1) 1:{q}(1,1)"; "∅" for the sink. State names come from
  /// `state_names` when given, otherwise ids are printed.
  std::string to_string(const std::vector<std::string>* state_names = nullptr) const;

  friend auto operator<=>(const history_tree&, const history_tree&) = default;
  friend bool operator==(const history_tree&, const history_tree&) = default;

 private:
  std::vector<history_node> nodes_;
};

std::string to_string(state_set s, const std::vector<std::string>* state_names);
std::string to_string(const transition_annotation& a);

/// History tree decorated with the annotation of the step that produced it.
struct enriched_history_tree {
  history_tree base;
  transition_annotation incoming;

  friend auto operator<=>(const enriched_history_tree&,
                          const enriched_history_tree&) = default;
  friend bool operator==(const enriched_history_tree&,
                         const enriched_history_tree&) = default;
};

/// Violations of P1-P3, order-closedness, the node bound n, identifier
/// injectivity, and consistency with `table` (when given). Empty when valid.
std::vector<std::string> history_tree_violations(const history_tree& tree,
                                                 std::size_t n,
                                                 const identifier_table* table);

/// Labels (and identifiers, in canonical mode) of an intermediate tree.
struct labelled_stage {
  std::map<node_name, state_set> labels;
  std::map<node_name, identifier> ids;

  ordered_tree_set shape() const;
};

/// Every intermediate result of one successor step.
struct successor_trace {
  labelled_stage spawned;    // old nodes re-labelled, plus one new child each
  labelled_stage disjoint;   // states seen in older siblings removed
  labelled_stage nonempty;   // empty nodes removed
  labelled_stage pruned;     // subtrees under saturated nodes removed
  std::set<node_name> saturated;  // nodes whose subtrees were pruned
  std::map<node_name, node_name> renaming;  // compression of `pruned`
  history_tree result;
  transition_annotation annotation;
};

/// Successor construction bound to one NBW.
class history_construction {
 public:
  history_construction(const nbw& a, construction_mode mode,
                       mark_semantics marks = mark_semantics::stable_through);

  construction_mode mode() const { return mode_; }
  mark_semantics marks() const { return marks_; }
  /// Number of NBW states (at least 1); the identifier-table capacity.
  unsigned capacity() const { return capacity_; }
  const identifier_table& table() const { return *table_; }
  std::size_t num_symbols() const { return post_.num_symbols(); }

  history_tree initial() const;
  std::pair<history_tree, transition_annotation> successor(
      const history_tree& tree, symbol_id sym) const;
  successor_trace trace(const history_tree& tree, symbol_id sym) const;

 private:
  pair_index index_of(const node_name& name) const;

  successor_table post_;
  construction_mode mode_;
  mark_semantics marks_;
  unsigned capacity_;
  std::shared_ptr<const identifier_table> table_;
};

history_tree initial_history_tree(const nbw& a, construction_mode mode);

std::pair<history_tree, transition_annotation> successor(
    const nbw& a, const history_tree& tree, symbol_id sym,
    construction_mode mode,
    mark_semantics marks = mark_semantics::stable_through);

}  // namespace hdet
