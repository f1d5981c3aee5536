#pragma once

// Ordered-tree combinatorics: implicit node names, heights, the precedence
// relation and its chains, order-closedness, compression, full trees and
// canonical (height, flag) identifiers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hdet {

/// Position in an ordered tree: a finite sequence of positive integers.
/// The empty sequence is the root. Names compare lexicographically, which
/// orders a tree depth-first with older siblings first.
class node_name {
 public:
  node_name() = default;
  node_name(std::initializer_list<std::uint32_t> components);
  explicit node_name(std::vector<std::uint32_t> components);

  /// Accepts "ε" (or the empty string) for the root, otherwise
  /// dot-separated positive integers such as "1.3".
  static node_name parse(std::string_view text);

  std::span<const std::uint32_t> components() const { return components_; }
  std::size_t depth() const { return components_.size(); }
  bool is_root() const { return components_.empty(); }
  std::uint32_t last() const { return components_.back(); }

  node_name parent() const;
  node_name child(std::uint32_t index) const;
  node_name prefix(std::size_t length) const;
  bool is_proper_prefix_of(const node_name& other) const;

  std::string to_string() const;

  friend auto operator<=>(const node_name&, const node_name&) = default;
  friend bool operator==(const node_name&, const node_name&) = default;

 private:
  std::vector<std::uint32_t> components_;
};

/// Sum of the components; 0 for the root.
std::uint32_t height(const node_name& name);

/// Strict precedence: `lhs` is a proper prefix t1..tm of `rhs`, optionally
/// extended by one component s with 1 <= s < t(m+1).
bool precedes(const node_name& lhs, const node_name& rhs);

/// Every name strictly preceding `name`, ordered by height. Its size equals
/// height(name).
std::vector<node_name> chain(const node_name& name);

/// chain(name) followed by `name` itself.
std::vector<node_name> closed_chain(const node_name& name);

/// True iff the closed chains of the two names together hold at most `n`
/// names, i.e. both can appear in one order-closed tree with n nodes.
bool can_co_occur(const node_name& lhs, const node_name& rhs, unsigned n);

/// Prefix-closed finite set of names. Order-closedness is not required.
class ordered_tree_set {
 public:
  using const_iterator = std::set<node_name>::const_iterator;

  ordered_tree_set() = default;

  /// Throws std::invalid_argument if `names` is not prefix-closed.
  static ordered_tree_set from_names(std::set<node_name> names);
  static ordered_tree_set from_names(std::initializer_list<node_name> names);

  bool contains(const node_name& name) const { return names_.contains(name); }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const_iterator begin() const { return names_.begin(); }
  const_iterator end() const { return names_.end(); }
  const std::set<node_name>& names() const { return names_; }

  /// Inserts a name whose parent is already present (or the root).
  void insert(const node_name& name);

  std::vector<node_name> children(const node_name& name) const;
  std::size_t degree(const node_name& name) const;
  bool is_leaf(const node_name& name) const;

  friend bool operator==(const ordered_tree_set&,
                         const ordered_tree_set&) = default;

 private:
  std::set<node_name> names_;
};

bool is_prefix_closed(const std::set<node_name>& names);
bool is_order_closed(const ordered_tree_set& tree);

struct stability_classes {
  std::set<node_name> stable;
  std::set<node_name> unstable;
  std::set<node_name> imbalanced;  // subset of unstable
};

/// Imbalanced nodes violate the height conditions (root height 0, older
/// sibling one lower, leftmost child one higher). Unstable nodes are the
/// imbalanced ones, their younger siblings, and all their descendants.
stability_classes classify(const ordered_tree_set& tree);

/// The renaming that closes sibling gaps: comp(ε)=ε and
/// comp(τ·i)=comp(τ)·j where j-1 is the number of older siblings present.
std::map<node_name, node_name> compress(const ordered_tree_set& tree);

/// The n-full ordered tree: every name that can occur in an order-closed
/// tree with at most n nodes. Built by repeatedly adding a new youngest
/// child to every node; has 2^(n-1) nodes.
ordered_tree_set full_tree(unsigned n);

struct identifier {
  std::uint32_t height = 0;
  std::uint32_t flag = 1;

  std::string to_string() const;  // "(h,f)"
  friend auto operator<=>(const identifier&, const identifier&) = default;
  friend bool operator==(const identifier&, const identifier&) = default;
};

/// Canonical identifiers for the n-full ordered tree. Nodes are visited in
/// spine order and each takes the least flag not already held by a
/// same-height node it can co-occur with. Names outside the full tree are
/// assigned lazily by the same rule; existing entries never change.
///
/// Lookups are safe to call concurrently.
class identifier_table {
 public:
  explicit identifier_table(unsigned capacity);
  ~identifier_table();
  identifier_table(identifier_table&&) noexcept;
  identifier_table& operator=(identifier_table&&) noexcept;

  unsigned capacity() const { return capacity_; }

  identifier lookup(const node_name& name) const;

  /// Full-tree entries in the order flags were assigned.
  const std::vector<std::pair<node_name, identifier>>& spine_order() const {
    return spine_order_;
  }

  bool in_full_tree(const node_name& name) const {
    return height(name) < capacity_;
  }

  /// Number of names assigned beyond the full tree so far.
  std::size_t extension_count() const;

 private:
  struct flag_book;

  unsigned capacity_;
  std::vector<std::pair<node_name, identifier>> spine_order_;
  std::unique_ptr<flag_book> book_;
};

/// Shared, immutable-after-construction table for capacity n.
std::shared_ptr<const identifier_table> canonical_identifier_table(unsigned n);

/// Same as identifier_table::lookup; present for call-site symmetry.
inline identifier identifier_of(const identifier_table& table,
                                const node_name& name) {
  return table.lookup(name);
}

}  // namespace hdet

template <>
struct std::hash<hdet::node_name> {
  std::size_t operator()(const hdet::node_name& name) const noexcept;
};
