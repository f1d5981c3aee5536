#include "hdet/history_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdet {

std::string to_string(construction_mode mode) {
  return mode == construction_mode::baseline ? "baseline" : "canonical";
}

std::string to_string(mark_semantics marks) {
  switch (marks) {
    case mark_semantics::stable_through: return "stable-through";
    case mark_semantics::target_absence: return "target-absence";
    case mark_semantics::paper_strict: return "paper-strict";
  }
  return "?";
}

history_tree::history_tree(std::vector<history_node> nodes)
    : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
}

const history_node* history_tree::find(const node_name& name) const {
  auto it = std::lower_bound(
      nodes_.begin(), nodes_.end(), name,
      [](const history_node& n, const node_name& key) { return n.name < key; });
  return it != nodes_.end() && it->name == name ? &*it : nullptr;
}

ordered_tree_set history_tree::shape() const {
  std::set<node_name> names;
  for (const auto& n : nodes_) names.insert(n.name);
  return ordered_tree_set::from_names(std::move(names));
}

history_tree history_tree::without_identifiers() const {
  history_tree out = *this;
  for (auto& n : out.nodes_) n.id.reset();
  return out;
}

std::set<pair_index> history_tree::indices(construction_mode mode) const {
  std::set<pair_index> out;
  for (const auto& n : nodes_) {
    if (mode == construction_mode::canonical) {
      if (!n.id) throw std::logic_error("canonical tree without identifiers");
      out.insert(*n.id);
    } else {
      out.insert(n.name);
    }
  }
  return out;
}

std::string to_string(state_set s, const std::vector<std::string>* names) {
  std::string out = "{";
  bool first = true;
  for (auto q : s.to_vector()) {
    if (!first) out += ',';
    first = false;
    out += names && q < names->size() ? (*names)[q] : std::to_string(q);
  }
  return out + "}";
}

std::string history_tree::to_string(
    const std::vector<std::string>* state_names) const {
  if (is_sink()) return "∅";
  std::string out;
  for (const auto& n : nodes_) {
    if (!out.empty()) out += ' ';
    out += n.name.to_string() + ":" + hdet::to_string(n.label, state_names);
    if (n.id) out += n.id->to_string();
  }
  return out;
}

std::string to_string(const transition_annotation& a) {
  std::string out;
  auto emit = [&out](std::string_view sign, const std::set<pair_index>& set) {
    for (const auto& i : set) {
      if (!out.empty()) out += ' ';
      out += sign;
      out += to_string(i);
    }
  };
  emit("⊕", a.accepting);
  emit("⊖", a.unstable);
  return out;
}

std::vector<std::string> history_tree_violations(const history_tree& tree,
                                                 std::size_t n,
                                                 const identifier_table* table) {
  std::vector<std::string> out;
  if (tree.is_sink()) return out;
  std::set<node_name> names;
  for (const auto& node : tree.nodes()) names.insert(node.name);
  if (!is_prefix_closed(names)) {
    out.push_back("tree is not prefix-closed");
    return out;
  }
  const auto shape = ordered_tree_set::from_names(names);
  if (!is_order_closed(shape)) out.push_back("tree is not order-closed");
  if (tree.size() > n) {
    out.push_back("tree has " + std::to_string(tree.size()) +
                  " nodes, more than " + std::to_string(n));
  }
  for (const auto& node : tree.nodes()) {
    const auto where = node.name.to_string();
    if (node.label.empty()) out.push_back("P1: empty label at " + where);
    state_set seen;
    state_set children_union;
    for (const auto& child : shape.children(node.name)) {
      const auto label = tree.find(child)->label;
      if (!(label & seen).empty()) {
        out.push_back("P2: children of " + where + " overlap");
      }
      seen |= label;
      children_union |= label;
    }
    if (!children_union.is_subset_of(node.label) ||
        children_union == node.label) {
      out.push_back("P3: label of " + where +
                    " is not a proper superset of its children");
    }
  }
  std::set<identifier> ids;
  std::size_t with_id = 0;
  for (const auto& node : tree.nodes()) {
    if (!node.id) continue;
    ++with_id;
    if (!ids.insert(*node.id).second) {
      out.push_back("identifier " + node.id->to_string() + " is not unique");
    }
    if (node.id->height != height(node.name)) {
      out.push_back("identifier height mismatch at " + node.name.to_string());
    }
    if (table) {
      if (!table->in_full_tree(node.name)) {
        out.push_back(node.name.to_string() + " lies outside the full tree");
      }
      if (table->lookup(node.name) != *node.id) {
        out.push_back("identifier of " + node.name.to_string() +
                      " differs from the table");
      }
    }
  }
  if (with_id != 0 && with_id != tree.size()) {
    out.push_back("identifiers present on some nodes only");
  }
  return out;
}

ordered_tree_set labelled_stage::shape() const {
  std::set<node_name> names;
  for (const auto& [name, label] : labels) names.insert(name);
  return ordered_tree_set::from_names(std::move(names));
}

// --- successor construction ---------------------------------------------------

history_construction::history_construction(const nbw& a, construction_mode mode,
                                           mark_semantics marks)
    : post_(a),
      mode_(mode),
      marks_(marks),
      capacity_(static_cast<unsigned>(std::max<std::size_t>(1, a.num_states()))),
      table_(canonical_identifier_table(capacity_)) {}

pair_index history_construction::index_of(const node_name& name) const {
  if (mode_ == construction_mode::canonical) return table_->lookup(name);
  return name;
}

history_tree history_construction::initial() const {
  if (post_.initial().empty()) return history_tree::sink();
  history_node root{node_name{}, post_.initial(), std::nullopt};
  if (mode_ == construction_mode::canonical) root.id = table_->lookup(root.name);
  return history_tree({root});
}

std::pair<history_tree, transition_annotation> history_construction::successor(
    const history_tree& tree, symbol_id sym) const {
  auto t = trace(tree, sym);
  return {std::move(t.result), std::move(t.annotation)};
}

successor_trace history_construction::trace(const history_tree& tree,
                                            symbol_id sym) const {
  if (sym >= post_.num_symbols()) throw input_error("unknown symbol");
  successor_trace out;
  if (tree.is_sink()) return out;
  const bool canonical = mode_ == construction_mode::canonical;
  const auto source_shape = tree.shape();

  // Spawn: every old node follows σ; each node gains a youngest child holding
  // the final σ-successors of its label.
  auto& spawned = out.spawned.labels;
  for (const auto& node : tree.nodes()) {
    spawned[node.name] = post_.post(node.label, sym);
  }
  for (const auto& node : tree.nodes()) {
    const auto fresh = node.name.child(
        static_cast<std::uint32_t>(source_shape.degree(node.name)) + 1);
    spawned[fresh] = spawned.at(node.name) & post_.finals();
  }
  if (canonical) {
    for (const auto& [name, label] : spawned) {
      out.spawned.ids[name] = table_->lookup(name);
    }
  }

  // A state stays only in the oldest sibling (and its subtree) holding it.
  auto& disjoint = out.disjoint.labels;
  for (const auto& [name, label] : spawned) {
    if (name.is_root()) {
      disjoint[name] = label;
      continue;
    }
    const auto parent = name.parent();
    state_set older;
    for (std::uint32_t k = 1; k < name.last(); ++k) {
      if (auto it = spawned.find(parent.child(k)); it != spawned.end()) {
        older |= it->second;
      }
    }
    disjoint[name] = (label & disjoint.at(parent)) - older;
  }
  out.disjoint.ids = out.spawned.ids;

  // Drop empty nodes. Labels only shrink downwards, so this keeps the
  // tree prefix-closed.
  for (const auto& [name, label] : disjoint) {
    if (label.empty()) continue;
    out.nonempty.labels[name] = label;
    if (canonical) out.nonempty.ids[name] = out.spawned.ids.at(name);
  }

  // A node covered exactly by its children is saturated: the children go,
  // the node is accepting unless compression renames it.
  const auto nonempty_shape = out.nonempty.shape();
  std::set<node_name> cut;
  for (const auto& [name, label] : out.nonempty.labels) {
    if (!name.is_root() &&
        std::any_of(cut.begin(), cut.end(), [&](const node_name& c) {
          return c.is_proper_prefix_of(name);
        })) {
      continue;
    }
    out.pruned.labels[name] = label;
    if (canonical) out.pruned.ids[name] = out.nonempty.ids.at(name);
    const auto children = nonempty_shape.children(name);
    if (children.empty()) continue;
    state_set below;
    for (const auto& c : children) below |= out.nonempty.labels.at(c);
    if (below == label) {
      out.saturated.insert(name);
      cut.insert(name);
    }
  }

  if (out.pruned.labels.empty()) {
    out.result = history_tree::sink();
    return out;
  }

  // Compress to an order-closed tree; renamed nodes are the unstable ones.
  const auto pruned_shape = out.pruned.shape();
  out.renaming = compress(pruned_shape);
  std::vector<history_node> nodes;
  nodes.reserve(out.pruned.labels.size());
  for (const auto& [name, label] : out.pruned.labels) {
    const auto& renamed = out.renaming.at(name);
    const bool moved = renamed != name;
    const bool saturated = out.saturated.contains(name);
    if (saturated && !moved) out.annotation.accepting.insert(index_of(name));
    if (moved &&
        (marks_ != mark_semantics::paper_strict || !saturated)) {
      out.annotation.unstable.insert(index_of(name));
    }
    history_node node{renamed, label, std::nullopt};
    if (canonical) node.id = table_->lookup(renamed);
    nodes.push_back(std::move(node));
  }
  out.result = history_tree(std::move(nodes));

  // A deleted node whose index is taken over by another node of the result
  // would otherwise go uncharged.
  if (marks_ == mark_semantics::stable_through) {
    const auto carried = out.result.indices(mode_);
    for (const auto& node : tree.nodes()) {
      if (out.pruned.labels.contains(node.name)) continue;
      auto index = index_of(node.name);
      if (carried.contains(index)) out.annotation.displaced.insert(index);
    }
  }
  return out;
}

history_tree initial_history_tree(const nbw& a, construction_mode mode) {
  return history_construction(a, mode).initial();
}

std::pair<history_tree, transition_annotation> successor(
    const nbw& a, const history_tree& tree, symbol_id sym,
    construction_mode mode, mark_semantics marks) {
  return history_construction(a, mode, marks).successor(tree, sym);
}

}  // namespace hdet
