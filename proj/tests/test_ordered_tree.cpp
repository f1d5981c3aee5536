#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <set>
#include <thread>

#include "hdet/ordered_tree.hpp"

using namespace hdet;

namespace {

node_name nm(const char* text) { return node_name::parse(text); }

std::set<node_name> names(std::initializer_list<const char*> list) {
  std::set<node_name> out;
  for (auto s : list) out.insert(nm(s));
  return out;
}

// --- oracles, written straight from the definitions --------------------------

// lhs = (proper prefix of rhs of length m) followed by nothing or by one s
// with 1 <= s < rhs[m].
bool precedes_oracle(const node_name& lhs, const node_name& rhs) {
  const auto r = rhs.components();
  const auto l = lhs.components();
  for (std::size_t m = 0; m < r.size(); ++m) {
    if (l.size() == m && std::equal(l.begin(), l.end(), r.begin())) return true;
    if (l.size() == m + 1 && std::equal(l.begin(), l.begin() + m, r.begin()) &&
        l[m] >= 1 && l[m] < r[m]) {
      return true;
    }
  }
  return false;
}

// Every name with the given height bound, by brute force over compositions.
std::vector<node_name> names_up_to_height(std::uint32_t max_height) {
  std::vector<node_name> out{node_name{}};
  std::function<void(std::vector<std::uint32_t>&, std::uint32_t)> grow =
      [&](std::vector<std::uint32_t>& prefix, std::uint32_t h) {
        for (std::uint32_t c = 1; h + c <= max_height; ++c) {
          prefix.push_back(c);
          out.emplace_back(prefix);
          grow(prefix, h + c);
          prefix.pop_back();
        }
      };
  std::vector<std::uint32_t> start;
  grow(start, 0);
  return out;
}

std::set<node_name> chain_oracle(const node_name& t) {
  std::set<node_name> out;
  for (const auto& c : names_up_to_height(height(t))) {
    if (precedes_oracle(c, t)) out.insert(c);
  }
  return out;
}

// Unstable per the definition: imbalanced nodes (a gap before them among
// their siblings), their younger siblings, and all their descendants.
std::set<node_name> unstable_oracle(const std::set<node_name>& tree) {
  std::set<node_name> imbalanced;
  for (const auto& t : tree) {
    if (t.is_root()) continue;
    if (t.last() >= 2 && !tree.contains(t.parent().child(t.last() - 1))) {
      imbalanced.insert(t);
    }
  }
  std::set<node_name> out;
  for (const auto& t : tree) {
    for (const auto& i : imbalanced) {
      // t is i, a descendant of i, a younger sibling of i or a descendant of one
      const auto ic = i.components();
      const auto tc = t.components();
      if (tc.size() < ic.size()) continue;
      if (!std::equal(ic.begin(), ic.end() - 1, tc.begin())) continue;
      if (tc[ic.size() - 1] >= ic.back()) out.insert(t);
    }
  }
  return out;
}

// All prefix-closed sets with at most `max_nodes` names and components at
// most `max_component`, reported through `visit`.
void for_each_prefix_closed(std::size_t max_nodes, std::uint32_t max_component,
                            const std::function<void(const std::set<node_name>&)>& visit) {
  // Grow by adding names in increasing order; a name may be added only if
  // its parent is present and it exceeds the last added name, which makes
  // every set appear once.
  std::set<node_name> current{node_name{}};
  std::function<void(const node_name&)> grow = [&](const node_name& last) {
    visit(current);
    if (current.size() == max_nodes) return;
    std::vector<node_name> candidates;
    for (const auto& p : current) {
      for (std::uint32_t c = 1; c <= max_component; ++c) {
        auto child = p.child(c);
        if (!current.contains(child) && last < child) candidates.push_back(child);
      }
    }
    for (const auto& c : candidates) {
      current.insert(c);
      grow(c);
      current.erase(c);
    }
  };
  grow(node_name{});
}

// Every order-closed tree with at most n nodes.
void for_each_order_closed(std::size_t n,
                           const std::function<void(const std::set<node_name>&)>& visit) {
  for_each_prefix_closed(n, static_cast<std::uint32_t>(n), [&](const auto& t) {
    if (unstable_oracle(t).empty()) visit(t);
  });
}

}  // namespace

TEST_CASE("node names parse and print") {
  CHECK(nm("ε").is_root());
  CHECK(nm("").is_root());
  CHECK(nm("1.3").to_string() == "1.3");
  CHECK(node_name{}.to_string() == "ε");
  CHECK(nm("2.1.2").depth() == 3);
  CHECK(nm("2.1.2").parent() == nm("2.1"));
  CHECK_THROWS_AS(nm("1.0"), std::invalid_argument);
  CHECK_THROWS_AS(nm("1..2"), std::invalid_argument);
  CHECK_THROWS_AS(node_name(std::vector<std::uint32_t>{0}), std::invalid_argument);
  CHECK(nm("1.2") < nm("1.2.1"));
  CHECK(nm("1.2.1") < nm("2"));
}

TEST_CASE("height") {
  CHECK(height(node_name{}) == 0);
  CHECK(height(nm("1.3")) == 4);
  CHECK(height(nm("2.1.2")) == 5);
}

TEST_CASE("precedes examples") {
  CHECK(precedes(node_name{}, nm("1")));
  CHECK(precedes(nm("2"), nm("3")));
  CHECK_FALSE(precedes(nm("3"), nm("3")));
  CHECK(precedes(nm("1.1"), nm("1.2")));
  CHECK_FALSE(precedes(nm("1.2"), nm("1.1")));
}

TEST_CASE("chain examples") {
  auto as_set = [](const std::vector<node_name>& v) {
    return std::set<node_name>(v.begin(), v.end());
  };
  CHECK(as_set(chain(nm("1.2"))) == names({"ε", "1", "1.1"}));
  CHECK(as_set(chain(nm("3"))) == names({"ε", "1", "2"}));
  CHECK(chain(node_name{}).empty());
  CHECK(closed_chain(nm("3")).back() == nm("3"));
}

TEST_CASE("chain agrees with the precedence oracle and has height many names") {
  for (const auto& t : full_tree(10)) {
    const auto c = chain(t);
    CHECK(c.size() == height(t));
    if (height(t) <= 7) {
      CHECK(std::set<node_name>(c.begin(), c.end()) == chain_oracle(t));
    }
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(height(c[i - 1]) < height(c[i]));
  }
}

TEST_CASE("precedes matches its oracle and is a strict partial order") {
  const auto universe = full_tree(7);
  const std::vector<node_name> v(universe.begin(), universe.end());
  for (const auto& a : v) {
    CHECK_FALSE(precedes(a, a));
    for (const auto& b : v) {
      const bool ab = precedes(a, b);
      REQUIRE(ab == precedes_oracle(a, b));
      if (ab) CHECK_FALSE(precedes(b, a));
    }
  }
  for (const auto& a : v) {
    for (const auto& b : v) {
      if (!precedes(a, b)) continue;
      for (const auto& c : v) {
        if (precedes(b, c)) REQUIRE(precedes(a, c));
      }
    }
  }
}

TEST_CASE("order-closedness and classification examples") {
  auto t1 = ordered_tree_set::from_names(names({"ε", "1", "1.1", "2"}));
  CHECK(is_order_closed(t1));
  CHECK(classify(t1).unstable.empty());
  CHECK(classify(t1).stable == t1.names());

  auto t2 = ordered_tree_set::from_names(names({"ε", "2"}));
  CHECK_FALSE(is_order_closed(t2));
  CHECK(classify(t2).imbalanced == names({"2"}));

  auto t3 = ordered_tree_set::from_names(names({"ε", "1", "3", "3.1"}));
  const auto c3 = classify(t3);
  CHECK(c3.imbalanced == names({"3"}));
  CHECK(c3.unstable == names({"3", "3.1"}));
  CHECK(c3.stable == names({"ε", "1"}));
}

TEST_CASE("prefix-closed construction is enforced") {
  CHECK_THROWS_AS(ordered_tree_set::from_names(names({"ε", "1.1"})), std::invalid_argument);
  ordered_tree_set t = ordered_tree_set::from_names(names({"ε"}));
  CHECK_THROWS_AS(t.insert(nm("2.1")), std::invalid_argument);
  t.insert(nm("2"));
  CHECK(t.degree(node_name{}) == 1);
  CHECK(t.children(node_name{}) == std::vector<node_name>{nm("2")});
}

TEST_CASE("compress examples") {
  auto m = compress(ordered_tree_set::from_names(names({"ε", "1", "3", "3.1"})));
  CHECK(m.at(nm("ε")) == nm("ε"));
  CHECK(m.at(nm("1")) == nm("1"));
  CHECK(m.at(nm("3")) == nm("2"));
  CHECK(m.at(nm("3.1")) == nm("2.1"));

  auto m2 = compress(ordered_tree_set::from_names(names({"ε", "2", "2.2"})));
  CHECK(m2.at(nm("2")) == nm("1"));
  CHECK(m2.at(nm("2.2")) == nm("1.1"));

  const auto closed = ordered_tree_set::from_names(names({"ε", "1", "1.1", "2"}));
  for (const auto& [from, to] : compress(closed)) CHECK(from == to);
}

TEST_CASE("classify and compress agree with the stability oracle on a small universe") {
  std::size_t checked = 0;
  for_each_prefix_closed(8, 4, [&](const std::set<node_name>& names_set) {
    const auto t = ordered_tree_set::from_names(names_set);
    const auto c = classify(t);
    const auto expected = unstable_oracle(names_set);
    std::set<node_name> renamed;
    std::set<node_name> image;
    for (const auto& [from, to] : compress(t)) {
      if (from != to) renamed.insert(from);
      image.insert(to);
    }
    REQUIRE(c.unstable == expected);
    REQUIRE(renamed == expected);
    REQUIRE(is_order_closed(ordered_tree_set::from_names(image)));
    REQUIRE(image.size() == names_set.size());
    REQUIRE(is_order_closed(t) == expected.empty());
    ++checked;
  });
  // Plane trees with up to 8 nodes and at most 4 children per position:
  // sum over k of C(4k, k) / (3k + 1).
  CHECK(checked == 1 + 4 + 22 + 140 + 969 + 7084 + 53820 + 420732);
}

TEST_CASE("full tree census and structure") {
  CHECK(full_tree(2).names() == names({"ε", "1"}));
  CHECK(full_tree(3).names() == names({"ε", "1", "1.1", "2"}));
  CHECK(full_tree(7).size() == 64);
  for (unsigned n = 1; n <= 12; ++n) {
    const auto t = full_tree(n);
    CHECK(t.size() == (std::size_t{1} << (n - 1)));
    for (const auto& name : t) CHECK(height(name) < n);
    if (n > 1) {
      const auto prev = full_tree(n - 1);
      std::set<node_name> expected = prev.names();
      for (const auto& p : prev) {
        expected.insert(p.child(static_cast<std::uint32_t>(prev.degree(p)) + 1));
      }
      CHECK(t.names() == expected);
    }
    // Leaves are exactly the names whose closed chain holds n names.
    for (const auto& name : t) {
      CHECK(t.is_leaf(name) == (closed_chain(name).size() == n));
    }
  }
  CHECK_THROWS_AS(full_tree(0), std::invalid_argument);
}

TEST_CASE("every order-closed tree with at most n nodes lies in the full tree") {
  for (unsigned n = 1; n <= 6; ++n) {
    const auto full = full_tree(n);
    std::set<node_name> covered;
    for_each_order_closed(n, [&](const std::set<node_name>& t) {
      for (const auto& name : t) {
        REQUIRE(full.contains(name));
        covered.insert(name);
      }
    });
    CHECK(covered == full.names());
  }
}

TEST_CASE("co-occurrence examples") {
  CHECK_FALSE(can_co_occur(nm("1.3"), nm("4"), 7));
  CHECK(can_co_occur(nm("1"), nm("2"), 3));
  for (const auto& t : full_tree(6)) CHECK(can_co_occur(t, t, 6));
  CHECK_FALSE(can_co_occur(nm("5"), nm("5"), 5));
}

TEST_CASE("co-occurrence matches joint membership in an order-closed tree") {
  const unsigned n = 5;
  std::set<std::pair<node_name, node_name>> together;
  for_each_order_closed(n, [&](const std::set<node_name>& t) {
    for (const auto& a : t) {
      for (const auto& b : t) together.emplace(a, b);
    }
  });
  for (const auto& a : full_tree(n)) {
    for (const auto& b : full_tree(n)) {
      CHECK(can_co_occur(a, b, n) == together.contains({a, b}));
    }
  }
}

TEST_CASE("identifier table examples") {
  for (unsigned n = 1; n <= 8; ++n) {
    CHECK(canonical_identifier_table(n)->lookup(node_name{}) == identifier{0, 1});
  }
  const auto t7 = canonical_identifier_table(7);
  CHECK(t7->lookup(nm("1.3")) == t7->lookup(nm("4")));
  CHECK(t7->lookup(nm("4")) == identifier{4, 4});
  CHECK(canonical_identifier_table(3)->lookup(nm("1.1")).height == 2);
  const auto t2 = canonical_identifier_table(2);
  CHECK(t2->spine_order().size() == 2);
  CHECK(t2->lookup(nm("1")) == identifier{1, 1});
  CHECK(identifier{3, 2}.to_string() == "(3,2)");
}

TEST_CASE("spine order visits leaves left to right") {
  const auto t = canonical_identifier_table(4);
  std::vector<std::string> order;
  for (const auto& [name, id] : t->spine_order()) order.push_back(name.to_string());
  CHECK(order == std::vector<std::string>{"ε", "1", "1.1", "1.1.1", "1.2", "2",
                                          "2.1", "3"});
}

TEST_CASE("identifier table is sound and within the per-height bounds") {
  for (unsigned n = 1; n <= 10; ++n) {
    const auto table = canonical_identifier_table(n);
    const auto& entries = table->spine_order();
    REQUIRE(entries.size() == (std::size_t{1} << (n - 1)));
    std::map<std::uint32_t, std::set<std::uint32_t>> flags;
    for (const auto& [name, id] : entries) {
      CHECK(id.height == height(name));
      CHECK(id.flag >= 1);
      flags[id.height].insert(id.flag);
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto ci = chain_oracle(entries[i].first);
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        if (entries[i].second.height != entries[j].second.height) continue;
        auto cj = chain_oracle(entries[j].first);
        cj.insert(ci.begin(), ci.end());
        cj.insert(entries[i].first);
        cj.insert(entries[j].first);
        if (cj.size() <= n) REQUIRE(entries[i].second.flag != entries[j].second.flag);
      }
    }
    for (const auto& [h, fs] : flags) {
      if (h == 0 || h >= n) continue;
      const std::size_t bound =
          std::min(std::size_t{1} << (h - 1), std::size_t{1} << (n - h - 1));
      CHECK(fs.size() <= bound);
    }
  }
}

TEST_CASE("lazy extension beyond the full tree") {
  identifier_table table(3);
  const auto before = table.spine_order();
  CHECK_FALSE(table.in_full_tree(nm("3")));
  CHECK(table.extension_count() == 0);
  const auto id3 = table.lookup(nm("3"));
  CHECK(id3.height == 3);
  CHECK(table.lookup(nm("3")) == id3);
  CHECK(table.extension_count() == 1);
  const auto id21 = table.lookup(nm("2.1"));
  CHECK(id21.height == 3);
  CHECK(table.extension_count() == 2);
  for (const auto& [name, id] : before) CHECK(table.lookup(name) == id);
  // Same-height extension names that can co-occur get different flags.
  if (can_co_occur(nm("3"), nm("2.1"), 3)) CHECK(id3.flag != id21.flag);
}

TEST_CASE("concurrent lookups agree") {
  identifier_table table(4);
  const auto extras = names_up_to_height(6);
  std::vector<std::vector<identifier>> seen(4);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < seen.size(); ++w) {
    workers.emplace_back([&, w] {
      for (const auto& name : extras) seen[w].push_back(table.lookup(name));
    });
  }
  for (auto& t : workers) t.join();
  for (std::size_t w = 1; w < seen.size(); ++w) CHECK(seen[w] == seen[0]);
}
