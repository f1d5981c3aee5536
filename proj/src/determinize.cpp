#include "hdet/determinize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace hdet {

namespace {

void require_valid(const nbw& a) {
  auto problems = validate_nbw(a);
  if (problems.empty()) return;
  std::string what = "invalid automaton:";
  for (const auto& d : problems) what += " [" + d.location + ": " + d.message + "]";
  throw input_error(what);
}

void note_step(build_stats& stats, const successor_trace& step,
               const history_construction& construction) {
  const auto& table = construction.table();
  stats.max_spawned_size =
      std::max(stats.max_spawned_size, step.spawned.labels.size());
  for (const auto& [name, label] : step.spawned.labels) {
    if (!table.in_full_tree(name)) ++stats.spawned_outside_full_tree;
  }
  stats.max_tree_size = std::max(stats.max_tree_size, step.result.size());
  for (const auto& node : step.result.nodes()) {
    if (!table.in_full_tree(node.name)) ++stats.final_outside_full_tree;
  }
}

// Generic breadth-first exploration. `expand` maps a payload and a symbol to
// the successor payload plus the annotation of the step.
template <class Payload, class Expand>
deterministic_rabin<Payload> explore(const nbw& a, Payload initial,
                                     const build_options& options,
                                     build_stats& stats, Expand expand) {
  deterministic_rabin<Payload> out;
  out.symbols = a.symbols;
  std::map<Payload, state_id> index;
  auto intern = [&](Payload p) {
    auto [it, fresh] = index.emplace(p, static_cast<state_id>(out.states.size()));
    if (fresh) {
      if (out.states.size() >= options.max_states) {
        stats.states = out.states.size();
        throw capacity_error("state limit of " +
                                 std::to_string(options.max_states) +
                                 " reached",
                             stats);
      }
      out.states.push_back(std::move(p));
    }
    return it->second;
  };
  out.initial = intern(std::move(initial));
  const auto k = a.num_symbols();
  for (std::size_t s = 0; s < out.states.size(); ++s) {
    for (symbol_id sym = 0; sym < k; ++sym) {
      // The payload may move when `states` grows; expand from a copy.
      Payload from = out.states[s];
      auto [next, marks] = expand(from, sym);
      auto target = intern(std::move(next));
      out.successors.push_back(target);
      out.annotations.push_back(std::move(marks));
    }
    stats.states = out.states.size();
    stats.transitions = out.successors.size();
  }
  return out;
}

}  // namespace

std::string to_key_values(const build_stats& stats) {
  std::ostringstream out;
  out << "states=" << stats.states << "\n"
      << "transitions=" << stats.transitions << "\n"
      << "pairs=" << stats.pairs << "\n"
      << "max_tree_size=" << stats.max_tree_size << "\n"
      << "max_spawned_size=" << stats.max_spawned_size << "\n"
      << "spawned_outside_full_tree=" << stats.spawned_outside_full_tree << "\n"
      << "final_outside_full_tree=" << stats.final_outside_full_tree << "\n";
  return out.str();
}

rabin_pair_set assemble_pairs(std::span<const transition_annotation> marks,
                              std::span<const std::set<pair_index>> carried,
                              mark_semantics semantics, acceptance_kind kind) {
  if (marks.size() != carried.size()) {
    throw input_error("annotation and carried-index spans differ in length");
  }
  std::set<pair_index> used;
  for (const auto& m : marks) used.insert(m.accepting.begin(), m.accepting.end());

  rabin_pair_set out;
  out.kind = kind;
  for (const auto& index : used) {
    rabin_pair pair{index, {}, {}};
    for (std::uint32_t t = 0; t < marks.size(); ++t) {
      const auto& m = marks[t];
      if (m.accepting.contains(index)) pair.accepting.insert(t);
      bool reject = m.unstable.contains(index);
      if (semantics != mark_semantics::paper_strict) {
        reject = reject || !carried[t].contains(index);
      }
      if (semantics == mark_semantics::stable_through) {
        reject = reject || m.displaced.contains(index);
      }
      if (reject) pair.rejecting.insert(t);
    }
    out.pairs.push_back(std::move(pair));
  }
  return out;
}

build_result<drtw> build_drtw(const nbw& a, const build_options& options) {
  require_valid(a);
  history_construction construction(a, options.mode, options.marks);
  build_result<drtw> result;
  auto& stats = result.stats;
  stats.max_tree_size = construction.initial().size();
  result.automaton = explore<history_tree>(
      a, construction.initial(), options, stats,
      [&](const history_tree& tree, symbol_id sym) {
        auto step = construction.trace(tree, sym);
        note_step(stats, step, construction);
        return std::pair{std::move(step.result), std::move(step.annotation)};
      });

  auto& d = result.automaton;
  std::vector<std::set<pair_index>> carried;
  carried.reserve(d.successors.size());
  for (auto target : d.successors) {
    carried.push_back(d.states[target].indices(options.mode));
  }
  d.acceptance = assemble_pairs(d.annotations, carried, options.marks,
                                acceptance_kind::transition_based);
  stats.pairs = d.acceptance.pairs.size();
  return result;
}

build_result<drw> build_drw(const nbw& a, const build_options& options) {
  require_valid(a);
  history_construction construction(a, options.mode, options.marks);
  build_result<drw> result;
  auto& stats = result.stats;
  stats.max_tree_size = construction.initial().size();
  result.automaton = explore<enriched_history_tree>(
      a, enriched_history_tree{construction.initial(), {}}, options, stats,
      [&](const enriched_history_tree& state, symbol_id sym) {
        auto step = construction.trace(state.base, sym);
        note_step(stats, step, construction);
        enriched_history_tree next{step.result, step.annotation};
        return std::pair{std::move(next), std::move(step.annotation)};
      });

  auto& d = result.automaton;
  std::vector<transition_annotation> incoming;
  std::vector<std::set<pair_index>> carried;
  for (const auto& state : d.states) {
    incoming.push_back(state.incoming);
    carried.push_back(state.base.indices(options.mode));
  }
  d.acceptance = assemble_pairs(incoming, carried, options.marks,
                                acceptance_kind::state_based);
  stats.pairs = d.acceptance.pairs.size();
  return result;
}

}  // namespace hdet
