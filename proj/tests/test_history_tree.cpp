#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <deque>

#include "hdet/corpus.hpp"
#include "hdet/history_tree.hpp"

using namespace hdet;

namespace {

using label_map = std::map<node_name, std::set<state_id>>;

std::set<state_id> unpack(state_set s) {
  const auto v = s.to_vector();
  return {v.begin(), v.end()};
}

label_map labels_of(const history_tree& t) {
  label_map out;
  for (const auto& n : t.nodes()) out[n.name] = unpack(n.label);
  return out;
}

label_map labels_of(const labelled_stage& s) {
  label_map out;
  for (const auto& [name, label] : s.labels) out[name] = unpack(label);
  return out;
}

std::set<state_id> post(const nbw& a, const std::set<state_id>& from, symbol_id sym) {
  std::set<state_id> out;
  for (const auto& e : a.edges) {
    if (e.symbol == sym && from.contains(e.from)) out.insert(e.to);
  }
  return out;
}

bool is_ancestor_or_self(const node_name& y, const node_name& x) {
  const auto yc = y.components();
  const auto xc = x.components();
  return yc.size() <= xc.size() && std::equal(yc.begin(), yc.end(), xc.begin());
}

std::vector<node_name> children_in(const label_map& m, const node_name& parent) {
  std::vector<node_name> out;
  for (const auto& [name, label] : m) {
    if (!name.is_root() && name.parent() == parent) out.push_back(name);
  }
  return out;
}

// P1-P3 read off the definitions.
bool satisfies_p1_p3(const label_map& m) {
  for (const auto& [name, label] : m) {
    if (label.empty()) return false;
    std::set<state_id> below;
    for (const auto& c : children_in(m, name)) {
      for (auto q : m.at(c)) {
        if (below.contains(q)) return false;
        if (!label.contains(q)) return false;
        below.insert(q);
      }
    }
    if (!children_in(m, name).empty() && below.size() >= label.size()) return false;
  }
  return true;
}

struct oracle_step {
  std::size_t spawned_size = 0;
  label_map after_pruning;
  label_map result;
  std::set<node_name> accepting;  // step-4 names
  std::set<node_name> unstable;   // step-4 names
  std::set<node_name> displaced;  // source names
};

// One successor step on plain sets, baseline indexing.
oracle_step naive_successor(const nbw& a, const label_map& tree, symbol_id sym,
                            mark_semantics marks) {
  std::set<state_id> finals(a.finals.begin(), a.finals.end());
  label_map spawned;
  for (const auto& [name, label] : tree) spawned[name] = post(a, label, sym);
  for (const auto& [name, label] : tree) {
    const auto deg = children_in(tree, name).size();
    std::set<state_id> fresh;
    for (auto q : spawned.at(name)) {
      if (finals.contains(q)) fresh.insert(q);
    }
    spawned[name.child(static_cast<std::uint32_t>(deg) + 1)] = fresh;
  }

  // q leaves x when some non-root ancestor-or-self y of x has an older
  // sibling z with q in its spawned label.
  label_map disjoint;
  for (const auto& [x, label] : spawned) {
    std::set<state_id> kept;
    for (auto q : label) {
      bool removed = false;
      for (const auto& [z, zl] : spawned) {
        if (z.is_root() || !zl.contains(q)) continue;
        for (const auto& [y, yl] : spawned) {
          if (y.is_root() || !is_ancestor_or_self(y, x)) continue;
          if (z.parent() == y.parent() && z.last() < y.last()) removed = true;
        }
      }
      if (!removed) kept.insert(q);
    }
    disjoint[x] = kept;
  }

  label_map nonempty;
  for (const auto& [x, label] : disjoint) {
    if (!label.empty()) nonempty[x] = label;
  }

  std::set<node_name> saturated;
  for (const auto& [x, label] : nonempty) {
    const auto kids = children_in(nonempty, x);
    if (kids.empty()) continue;
    std::set<state_id> below;
    for (const auto& c : kids) below.insert(nonempty.at(c).begin(), nonempty.at(c).end());
    if (!(below.size() < label.size())) saturated.insert(x);
  }
  oracle_step out;
  out.spawned_size = spawned.size();
  for (const auto& [x, label] : nonempty) {
    bool below_saturated = false;
    for (const auto& s : saturated) {
      if (s != x && is_ancestor_or_self(s, x)) below_saturated = true;
    }
    if (!below_saturated) out.after_pruning[x] = label;
  }

  std::map<node_name, node_name> renamed;
  for (const auto& [x, label] : out.after_pruning) {
    if (x.is_root()) {
      renamed[x] = x;
      continue;
    }
    std::uint32_t older = 0;
    for (std::uint32_t k = 1; k < x.last(); ++k) {
      if (out.after_pruning.contains(x.parent().child(k))) ++older;
    }
    renamed[x] = renamed.at(x.parent()).child(older + 1);
  }
  for (const auto& [x, label] : out.after_pruning) {
    out.result[renamed.at(x)] = label;
    const bool moved = renamed.at(x) != x;
    const bool sat = saturated.contains(x);
    if (sat && !moved) out.accepting.insert(x);
    if (moved && !(sat && marks == mark_semantics::paper_strict)) out.unstable.insert(x);
  }
  if (marks == mark_semantics::stable_through) {
    for (const auto& [x, label] : tree) {
      if (!out.after_pruning.contains(x) && out.result.contains(x)) out.displaced.insert(x);
    }
  }
  return out;
}

std::set<pair_index> as_indices(const std::set<node_name>& names) {
  return {names.begin(), names.end()};
}

std::set<pair_index> as_identifiers(const std::set<node_name>& names,
                                    const identifier_table& table) {
  std::set<pair_index> out;
  for (const auto& n : names) out.insert(table.lookup(n));
  return out;
}

// Every reachable (tree, symbol) pair of one construction.
template <class Visit>
void explore(const history_construction& c, Visit visit) {
  std::set<history_tree> seen{c.initial()};
  std::deque<history_tree> todo{c.initial()};
  while (!todo.empty()) {
    const auto t = todo.front();
    todo.pop_front();
    for (symbol_id s = 0; s < c.num_symbols(); ++s) {
      const auto tr = c.trace(t, s);
      visit(t, s, tr);
      if (seen.insert(tr.result).second) todo.push_back(tr.result);
    }
  }
}

constexpr state_id P = 0;
constexpr state_id Q = 1;

}  // namespace

TEST_CASE("initial tree examples") {
  const auto e1 = example_e1();
  const auto t = initial_history_tree(e1, construction_mode::canonical);
  REQUIRE(t.size() == 1);
  CHECK(t.nodes()[0].name.is_root());
  CHECK(t.nodes()[0].label == state_set{P});
  CHECK(t.nodes()[0].id == identifier{0, 1});
  CHECK_FALSE(initial_history_tree(e1, construction_mode::baseline).nodes()[0].id);

  auto no_initial = e1;
  no_initial.initial.clear();
  CHECK(initial_history_tree(no_initial, construction_mode::canonical).is_sink());

  auto all_initial = e1;
  all_initial.initial = {P, Q};
  CHECK(initial_history_tree(all_initial, construction_mode::canonical).nodes()[0].label ==
        state_set{P, Q});
}

TEST_CASE("E1 successors") {
  const auto e1 = example_e1();
  const auto t0 = initial_history_tree(e1, construction_mode::canonical);
  const auto [t1, a1] = successor(e1, t0, 0, construction_mode::canonical);
  CHECK(t1.to_string(&e1.state_names) == "ε:{p,q}(0,1) 1:{q}(1,1)");
  CHECK(a1.empty());

  const auto [t2, a2] = successor(e1, t1, 0, construction_mode::canonical);
  CHECK(t2 == t1);
  CHECK(a2.accepting == std::set<pair_index>{identifier{1, 1}});
  CHECK(a2.unstable.empty());
  CHECK(a2.displaced.empty());

  const auto [b2, ab2] = successor(e1, t1.without_identifiers(), 0,
                                   construction_mode::baseline);
  CHECK(b2 == t1.without_identifiers());
  CHECK(ab2.accepting == std::set<pair_index>{node_name{1}});
}

TEST_CASE("the sink maps to the sink with no marks") {
  const auto e1 = example_e1();
  const auto [t, a] = successor(e1, history_tree::sink(), 0, construction_mode::canonical);
  CHECK(t.is_sink());
  CHECK(a.empty());
  CHECK(history_tree::sink().to_string() == "∅");
  CHECK_THROWS_AS(successor(e1, history_tree::sink(), 3, construction_mode::canonical),
                  input_error);
}

TEST_CASE("successor agrees with a naive reimplementation across the corpus") {
  std::size_t steps = 0;
  for (const auto& [name, a] : standard_corpus()) {
    INFO(name);
    const auto n = std::max<std::size_t>(1, a.num_states());
    for (auto marks : {mark_semantics::stable_through, mark_semantics::target_absence,
                       mark_semantics::paper_strict}) {
      for (auto mode : {construction_mode::baseline, construction_mode::canonical}) {
        const history_construction c(a, mode, marks);
        const auto& table = c.table();
        explore(c, [&](const history_tree& t, symbol_id s, const successor_trace& tr) {
          ++steps;
          const auto expected = naive_successor(a, labels_of(t), s, marks);
          REQUIRE(labels_of(tr.result) == expected.result);
          REQUIRE(labels_of(tr.pruned) == expected.after_pruning);
          const bool baseline = mode == construction_mode::baseline;
          REQUIRE(tr.annotation.accepting ==
                  (baseline ? as_indices(expected.accepting)
                            : as_identifiers(expected.accepting, table)));
          REQUIRE(tr.annotation.unstable ==
                  (baseline ? as_indices(expected.unstable)
                            : as_identifiers(expected.unstable, table)));
          if (baseline) {
            REQUIRE(tr.annotation.displaced == as_indices(expected.displaced));
          } else if (marks != mark_semantics::stable_through) {
            REQUIRE(tr.annotation.displaced.empty());
          }

          // Properties of the result and of the intermediate stages.
          REQUIRE(satisfies_p1_p3(labels_of(tr.result)));
          REQUIRE(is_order_closed(tr.result.shape()) == true);
          REQUIRE(tr.result.size() <= n);
          REQUIRE(history_tree_violations(tr.result, n, baseline ? nullptr : &table)
                      .empty());
          for (const auto& node : tr.result.nodes()) {
            REQUIRE(table.in_full_tree(node.name));
            if (!baseline) REQUIRE(node.id == table.lookup(node.name));
          }
          REQUIRE(tr.spawned.labels.size() <= 2 * n);
          REQUIRE(tr.spawned.labels.size() == expected.spawned_size);
          if (!tr.pruned.labels.empty()) {
            REQUIRE(satisfies_p1_p3(labels_of(tr.pruned)));
            // ⊖ follows stability and the renaming.
            std::set<node_name> moved;
            for (const auto& [from, to] : tr.renaming) {
              if (from != to) moved.insert(from);
            }
            REQUIRE(classify(tr.pruned.shape()).unstable == moved);
            std::set<node_name> charged = moved;
            if (marks == mark_semantics::paper_strict) {
              for (const auto& s : tr.saturated) charged.erase(s);
            }
            REQUIRE(tr.annotation.unstable ==
                    (baseline ? as_indices(charged) : as_identifiers(charged, table)));
          }
        });
      }
    }
  }
  CHECK(steps > 10000);
}

TEST_CASE("renamed saturated nodes are charged except under strict marks") {
  // ε:{p,q,r,s,t} 1:{p} 2:{q,r,t} 2.1:{q} 2.2:{r}. Under σ, p and t die,
  // so 1 empties and 2 is covered exactly by its children, then renamed to 1.
  nbw a;
  a.state_names = {"p", "q", "r", "s", "t"};
  a.symbols = {"a"};
  a.initial = {0};
  a.edges = {{1, 0, 1}, {2, 0, 2}, {3, 0, 3}};
  a.finals = {1, 2};
  const history_tree t({{node_name{}, state_set{0, 1, 2, 3, 4}, std::nullopt},
                        {node_name{1}, state_set{0}, std::nullopt},
                        {node_name{2}, state_set{1, 2, 4}, std::nullopt},
                        {node_name{2, 1}, state_set{1}, std::nullopt},
                        {node_name{2, 2}, state_set{2}, std::nullopt}});
  REQUIRE(history_tree_violations(t, 5, nullptr).empty());

  const auto [r1, default_marks] = successor(a, t, 0, construction_mode::baseline);
  CHECK(default_marks.accepting.empty());
  CHECK(default_marks.unstable.contains(node_name{2}));
  CHECK(r1.find(node_name{1}) != nullptr);
  CHECK(r1.find(node_name{1})->label == state_set{1, 2});

  const auto [r2, strict] =
      successor(a, t, 0, construction_mode::baseline, mark_semantics::paper_strict);
  CHECK(r2 == r1);
  CHECK(strict.accepting.empty());
  CHECK_FALSE(strict.unstable.contains(node_name{2}));
}

TEST_CASE("violations detector") {
  const auto ok = history_tree({{node_name{}, state_set{0, 1}, std::nullopt},
                                {node_name{1}, state_set{1}, std::nullopt}});
  CHECK(history_tree_violations(ok, 2, nullptr).empty());

  // P1: empty label.
  CHECK_FALSE(history_tree_violations(
                  history_tree({{node_name{}, state_set{}, std::nullopt}}), 2, nullptr)
                  .empty());
  // P2: overlapping siblings.
  CHECK_FALSE(history_tree_violations(
                  history_tree({{node_name{}, state_set{0, 1, 2}, std::nullopt},
                                {node_name{1}, state_set{1}, std::nullopt},
                                {node_name{2}, state_set{1}, std::nullopt}}),
                  3, nullptr)
                  .empty());
  // P3: children cover the parent.
  CHECK_FALSE(history_tree_violations(
                  history_tree({{node_name{}, state_set{1}, std::nullopt},
                                {node_name{1}, state_set{1}, std::nullopt}}),
                  2, nullptr)
                  .empty());
  // Not order-closed.
  CHECK_FALSE(history_tree_violations(
                  history_tree({{node_name{}, state_set{0, 1}, std::nullopt},
                                {node_name{2}, state_set{1}, std::nullopt}}),
                  2, nullptr)
                  .empty());
  // Too many nodes for the capacity.
  CHECK_FALSE(history_tree_violations(ok, 1, nullptr).empty());
  // Identifier inconsistent with the table.
  const auto table = canonical_identifier_table(2);
  CHECK_FALSE(history_tree_violations(
                  history_tree({{node_name{}, state_set{0, 1}, identifier{0, 1}},
                                {node_name{1}, state_set{1}, identifier{1, 2}}}),
                  2, table.get())
                  .empty());
  CHECK(history_tree_violations(
            history_tree({{node_name{}, state_set{0, 1}, identifier{0, 1}},
                          {node_name{1}, state_set{1}, identifier{1, 1}}}),
            2, table.get())
            .empty());
}

TEST_CASE("two accepting nodes may share a height with distinct flags") {
  // Shape check for accepting nodes (3,2) and (3,4) in one tree: both
  // identifiers exist and are carried by names that can co-occur.
  const unsigned n = 7;
  const auto table = canonical_identifier_table(n);
  std::vector<node_name> with2, with4;
  for (const auto& [name, id] : table->spine_order()) {
    if (id == identifier{3, 2}) with2.push_back(name);
    if (id == identifier{3, 4}) with4.push_back(name);
  }
  REQUIRE_FALSE(with2.empty());
  REQUIRE_FALSE(with4.empty());
  bool together = false;
  for (const auto& x : with2) {
    for (const auto& y : with4) together = together || can_co_occur(x, y, n);
  }
  CHECK(together);
}
