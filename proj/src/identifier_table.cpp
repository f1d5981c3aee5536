#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hdet/ordered_tree.hpp"

namespace hdet {

namespace {

struct flagged_name {
  node_name name;
  std::uint32_t flag;
  std::vector<node_name> sorted_closed_chain;
};

std::vector<node_name> sorted_closed_chain(const node_name& name) {
  auto c = closed_chain(name);
  std::sort(c.begin(), c.end());
  return c;
}

bool union_within(const std::vector<node_name>& lhs,
                  const std::vector<node_name>& rhs, std::size_t limit) {
  std::size_t count = 0;
  auto a = lhs.begin();
  auto b = rhs.begin();
  while (a != lhs.end() || b != rhs.end()) {
    if (b == rhs.end() || (a != lhs.end() && *a < *b)) {
      ++a;
    } else if (a == lhs.end() || *b < *a) {
      ++b;
    } else {
      ++a;
      ++b;
    }
    if (++count > limit) return false;
  }
  return true;
}

}  // namespace

struct identifier_table::flag_book {
  unsigned capacity;
  std::map<node_name, identifier> assignment;
  std::map<std::uint32_t, std::vector<flagged_name>> by_height;
  std::size_t extensions = 0;
  std::mutex mutex;

  identifier assign(const node_name& name) {
    const auto h = height(name);
    auto chain_of_name = sorted_closed_chain(name);
    auto& peers = by_height[h];
    std::vector<bool> taken;
    for (const auto& peer : peers) {
      if (union_within(peer.sorted_closed_chain, chain_of_name, capacity)) {
        if (taken.size() <= peer.flag) taken.resize(peer.flag + 1, false);
        taken[peer.flag] = true;
      }
    }
    std::uint32_t flag = 1;
    while (flag < taken.size() && taken[flag]) ++flag;
    peers.push_back({name, flag, std::move(chain_of_name)});
    identifier id{h, flag};
    assignment.emplace(name, id);
    return id;
  }
};

identifier_table::identifier_table(unsigned capacity)
    : capacity_(capacity), book_(std::make_unique<flag_book>()) {
  if (capacity == 0) {
    throw std::invalid_argument("identifier table needs capacity >= 1");
  }
  book_->capacity = capacity;

  const auto tree = full_tree(capacity);
  std::set<node_name> placed;
  // Leaves in left-first order; each contributes the not-yet-placed part of
  // its closed chain (its spine), lowest height first.
  for (const auto& leaf : tree) {
    if (!tree.is_leaf(leaf)) continue;
    for (const auto& name : closed_chain(leaf)) {
      if (!placed.insert(name).second) continue;
      spine_order_.emplace_back(name, book_->assign(name));
    }
  }
}

identifier_table::~identifier_table() = default;
identifier_table::identifier_table(identifier_table&&) noexcept = default;
identifier_table& identifier_table::operator=(identifier_table&&) noexcept =
    default;

identifier identifier_table::lookup(const node_name& name) const {
  std::lock_guard lock(book_->mutex);
  if (auto it = book_->assignment.find(name); it != book_->assignment.end()) {
    return it->second;
  }
  ++book_->extensions;
  return book_->assign(name);
}

std::size_t identifier_table::extension_count() const {
  std::lock_guard lock(book_->mutex);
  return book_->extensions;
}

std::shared_ptr<const identifier_table> canonical_identifier_table(
    unsigned n) {
  return std::make_shared<const identifier_table>(n);
}

}  // namespace hdet
