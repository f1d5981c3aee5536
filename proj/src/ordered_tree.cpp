#include "hdet/ordered_tree.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace hdet {

namespace {

constexpr std::string_view kRootText = "ε";

std::size_t sorted_union_size(const std::vector<node_name>& lhs,
                              const std::vector<node_name>& rhs) {
  std::size_t count = 0;
  auto a = lhs.begin();
  auto b = rhs.begin();
  while (a != lhs.end() && b != rhs.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++a;
      ++b;
    }
    ++count;
  }
  return count + static_cast<std::size_t>(lhs.end() - a) +
         static_cast<std::size_t>(rhs.end() - b);
}

}  // namespace

node_name::node_name(std::initializer_list<std::uint32_t> components)
    : node_name(std::vector<std::uint32_t>(components)) {}

node_name::node_name(std::vector<std::uint32_t> components)
    : components_(std::move(components)) {
  for (auto c : components_) {
    if (c == 0) {
      throw std::invalid_argument("node name components must be positive");
    }
  }
}

node_name node_name::parse(std::string_view text) {
  if (text.empty() || text == kRootText) return {};
  std::vector<std::uint32_t> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto dot = text.find('.', pos);
    if (dot == std::string_view::npos) dot = text.size();
    auto piece = text.substr(pos, dot - pos);
    std::uint32_t value = 0;
    auto [end, ec] =
        std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (ec != std::errc{} || end != piece.data() + piece.size() ||
        piece.empty()) {
      throw std::invalid_argument("malformed node name: " + std::string(text));
    }
    parts.push_back(value);
    pos = dot + 1;
  }
  return node_name(std::move(parts));
}

node_name node_name::parent() const {
  if (is_root()) throw std::logic_error("root has no parent");
  return prefix(components_.size() - 1);
}

node_name node_name::child(std::uint32_t index) const {
  if (index == 0) {
    throw std::invalid_argument("node name components must be positive");
  }
  node_name result = *this;
  result.components_.push_back(index);
  return result;
}

node_name node_name::prefix(std::size_t length) const {
  node_name result;
  result.components_.assign(components_.begin(),
                            components_.begin() + static_cast<long>(length));
  return result;
}

bool node_name::is_proper_prefix_of(const node_name& other) const {
  return components_.size() < other.components_.size() &&
         std::equal(components_.begin(), components_.end(),
                    other.components_.begin());
}

std::string node_name::to_string() const {
  if (is_root()) return std::string(kRootText);
  std::string out;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(components_[i]);
  }
  return out;
}

std::uint32_t height(const node_name& name) {
  std::uint32_t sum = 0;
  for (auto c : name.components()) sum += c;
  return sum;
}

bool precedes(const node_name& lhs, const node_name& rhs) {
  auto a = lhs.components();
  auto b = rhs.components();
  // lhs = b[0..m) or lhs = b[0..m)·s with s < b[m], where m < |b|.
  if (a.size() > b.size()) return false;
  if (a.size() < b.size() && std::equal(a.begin(), a.end(), b.begin())) {
    return true;
  }
  if (a.empty()) return false;
  std::size_t m = a.size() - 1;
  return std::equal(a.begin(), a.begin() + static_cast<long>(m), b.begin()) &&
         a[m] < b[m];
}

std::vector<node_name> chain(const node_name& name) {
  std::vector<node_name> result;
  result.reserve(height(name));
  auto comps = name.components();
  for (std::size_t m = 0; m < comps.size(); ++m) {
    node_name base = name.prefix(m);
    result.push_back(base);
    for (std::uint32_t s = 1; s < comps[m]; ++s) {
      result.push_back(base.child(s));
    }
  }
  return result;
}

std::vector<node_name> closed_chain(const node_name& name) {
  auto result = chain(name);
  result.push_back(name);
  return result;
}

bool can_co_occur(const node_name& lhs, const node_name& rhs, unsigned n) {
  auto a = closed_chain(lhs);
  auto b = closed_chain(rhs);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return sorted_union_size(a, b) <= n;
}

// --- ordered_tree_set -------------------------------------------------------

ordered_tree_set ordered_tree_set::from_names(std::set<node_name> names) {
  if (!is_prefix_closed(names)) {
    throw std::invalid_argument("ordered tree must be prefix-closed");
  }
  ordered_tree_set tree;
  tree.names_ = std::move(names);
  return tree;
}

ordered_tree_set ordered_tree_set::from_names(
    std::initializer_list<node_name> names) {
  return from_names(std::set<node_name>(names));
}

void ordered_tree_set::insert(const node_name& name) {
  if (!name.is_root() && !names_.contains(name.parent())) {
    throw std::invalid_argument("parent of " + name.to_string() +
                                " is missing");
  }
  names_.insert(name);
}

std::vector<node_name> ordered_tree_set::children(
    const node_name& name) const {
  std::vector<node_name> result;
  // Children follow their parent directly in lexicographic order, each
  // trailed by its own subtree.
  auto it = names_.upper_bound(name);
  while (it != names_.end() && name.is_proper_prefix_of(*it)) {
    if (it->depth() == name.depth() + 1) result.push_back(*it);
    ++it;
  }
  return result;
}

std::size_t ordered_tree_set::degree(const node_name& name) const {
  return children(name).size();
}

bool ordered_tree_set::is_leaf(const node_name& name) const {
  auto it = names_.upper_bound(name);
  return it == names_.end() || !name.is_proper_prefix_of(*it);
}

bool is_prefix_closed(const std::set<node_name>& names) {
  for (const auto& name : names) {
    if (!name.is_root() && !names.contains(name.parent())) return false;
  }
  return true;
}

bool is_order_closed(const ordered_tree_set& tree) {
  return classify(tree).imbalanced.empty();
}

stability_classes classify(const ordered_tree_set& tree) {
  stability_classes result;
  for (const auto& name : tree) {
    if (name.is_root()) continue;
    auto index = name.last();
    if (index >= 2 && !tree.contains(name.parent().child(index - 1))) {
      result.imbalanced.insert(name);
    }
  }
  for (const auto& bad : result.imbalanced) {
    const node_name parent = bad.parent();
    for (const auto& name : tree) {
      // Younger-or-equal siblings of an imbalanced node, and everything below.
      if (name.depth() < bad.depth()) continue;
      if (!parent.is_proper_prefix_of(name)) continue;
      if (name.components()[parent.depth()] >= bad.last()) {
        result.unstable.insert(name);
      }
    }
  }
  for (const auto& name : tree) {
    if (!result.unstable.contains(name)) result.stable.insert(name);
  }
  return result;
}

std::map<node_name, node_name> compress(const ordered_tree_set& tree) {
  std::map<node_name, node_name> renaming;
  // Lexicographic iteration visits every parent before its children.
  for (const auto& name : tree) {
    if (name.is_root()) {
      renaming.emplace(name, name);
      continue;
    }
    const node_name parent = name.parent();
    std::uint32_t older = 0;
    for (std::uint32_t k = 1; k < name.last(); ++k) {
      if (tree.contains(parent.child(k))) ++older;
    }
    renaming.emplace(name, renaming.at(parent).child(older + 1));
  }
  return renaming;
}

ordered_tree_set full_tree(unsigned n) {
  if (n == 0) throw std::invalid_argument("full tree needs n >= 1");
  ordered_tree_set tree;
  tree.insert(node_name{});
  for (unsigned round = 1; round < n; ++round) {
    std::vector<node_name> fresh;
    fresh.reserve(tree.size());
    for (const auto& name : tree) {
      fresh.push_back(
          name.child(static_cast<std::uint32_t>(tree.degree(name)) + 1));
    }
    for (const auto& name : fresh) tree.insert(name);
  }
  return tree;
}

std::string identifier::to_string() const {
  return "(" + std::to_string(height) + "," + std::to_string(flag) + ")";
}

}  // namespace hdet

std::size_t std::hash<hdet::node_name>::operator()(
    const hdet::node_name& name) const noexcept {
  std::size_t seed = name.depth();
  for (auto c : name.components()) {
    seed ^= c + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}
