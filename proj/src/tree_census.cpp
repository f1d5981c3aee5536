#include <set>
#include <vector>

#include "hdet/census.hpp"

namespace hdet {

namespace {

using forest = std::vector<history_node>;

// All trees rooted at `name` with root label `label`.
std::vector<forest> trees_at(const node_name& name, state_set label);

// All ordered child sequences below `parent` whose labels are disjoint,
// non-empty, and drawn from `avail`, starting with child number `index`.
void child_sequences(const node_name& parent, state_set avail,
                     std::uint32_t index, forest& current,
                     std::vector<forest>& out) {
  // Children must leave at least one state of the parent uncovered.
  if (!avail.empty()) out.push_back(current);
  // Taking all of `avail` would cover the parent, so proper subsets only.
  const auto bits = avail.bits();
  for (std::uint64_t sub = (bits - 1) & bits; sub != 0; sub = (sub - 1) & bits) {
    const state_set child_label(sub);
    for (const auto& subtree : trees_at(parent.child(index), child_label)) {
      const auto mark = current.size();
      current.insert(current.end(), subtree.begin(), subtree.end());
      child_sequences(parent, avail - child_label, index + 1, current, out);
      current.resize(mark);
    }
  }
}

std::vector<forest> trees_at(const node_name& name, state_set label) {
  std::vector<forest> below;
  forest current;
  child_sequences(name, label, 1, current, below);
  std::vector<forest> out;
  out.reserve(below.size());
  for (auto& f : below) {
    forest tree{history_node{name, label, std::nullopt}};
    tree.insert(tree.end(), f.begin(), f.end());
    out.push_back(std::move(tree));
  }
  return out;
}

void check_cap(unsigned n, unsigned cap) {
  if (n > cap) {
    throw cap_exceeded("n = " + std::to_string(n) + " exceeds the cap of " +
                       std::to_string(cap));
  }
}

}  // namespace

std::vector<history_tree> enumerate_history_trees(unsigned n, unsigned cap) {
  check_cap(n, cap);
  if (n > state_set::kMaxStates) throw cap_exceeded("too many states");
  std::vector<history_tree> out;
  const std::uint64_t all = n == 64 ? ~0ULL : (1ULL << n) - 1;
  for (std::uint64_t root = 1; root <= all && root != 0; ++root) {
    for (auto& f : trees_at(node_name{}, state_set(root))) {
      out.emplace_back(std::move(f));
    }
  }
  return out;
}

std::uint64_t count_history_trees(unsigned n) {
  // rooted[m]: trees whose root label is a fixed m-set.
  // exact[m]: ordered child sequences whose labels partition a fixed m-set.
  std::vector<std::vector<std::uint64_t>> binom(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    binom[i].assign(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
  }
  std::vector<std::uint64_t> rooted(n + 1, 0), exact(n + 1, 0);
  exact[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned j = 0; j < m; ++j) rooted[m] += binom[m][j] * exact[j];
    for (unsigned i = 1; i <= m; ++i) {
      exact[m] += binom[m][i] * rooted[i] * exact[m - i];
    }
  }
  std::uint64_t total = 0;
  for (unsigned m = 1; m <= n; ++m) total += binom[n][m] * rooted[m];
  return total;
}

full_census enumerate_full(unsigned n, unsigned cap) {
  const auto trees = enumerate_history_trees(n, cap);
  const auto table = canonical_identifier_table(n);
  full_census out;
  out.trees = trees.size();
  std::set<history_tree> with_ids;
  std::set<history_tree> erased;
  for (const auto& t : trees) {
    std::vector<history_node> nodes = t.nodes();
    for (auto& node : nodes) {
      if (!table->in_full_tree(node.name)) ++out.outside_full_tree;
      node.id = table->lookup(node.name);
    }
    history_tree annotated(std::move(nodes));
    if (!history_tree_violations(annotated, n, table.get()).empty()) ++out.invalid;
    erased.insert(annotated.without_identifiers());
    with_ids.insert(std::move(annotated));
  }
  out.with_identifiers = with_ids.size();
  out.erased_distinct = erased.size();
  return out;
}

}  // namespace hdet
