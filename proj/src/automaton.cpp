#include "hdet/automaton.hpp"

#include <algorithm>
#include <map>

namespace hdet {

state_set::state_set(std::initializer_list<state_id> states) {
  for (auto q : states) insert(q);
}

void state_set::insert(state_id q) {
  if (q >= kMaxStates) throw input_error("state id exceeds state_set capacity");
  bits_ |= std::uint64_t{1} << q;
}

std::vector<state_id> state_set::to_vector() const {
  std::vector<state_id> out;
  for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
    out.push_back(static_cast<state_id>(std::countr_zero(rest)));
  }
  return out;
}

std::optional<symbol_id> nbw::find_symbol(std::string_view name) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == name) return static_cast<symbol_id>(i);
  }
  return std::nullopt;
}

std::optional<state_id> nbw::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < state_names.size(); ++i) {
    if (state_names[i] == name) return static_cast<state_id>(i);
  }
  return std::nullopt;
}

std::vector<diagnostic> validate_nbw(const nbw& a) {
  std::vector<diagnostic> out;
  const auto n = a.num_states();
  auto state_ref = [&](state_id q) {
    return q < n ? a.state_names[q] : "#" + std::to_string(q);
  };

  std::map<std::string, std::size_t> seen_states;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto [it, fresh] = seen_states.emplace(a.state_names[i], i); !fresh) {
      out.push_back({"states[" + std::to_string(i) + "]",
                     "duplicate state name " + a.state_names[i]});
    }
  }
  std::map<std::string, std::size_t> seen_symbols;
  for (std::size_t i = 0; i < a.symbols.size(); ++i) {
    if (a.symbols[i].empty()) {
      out.push_back({"symbols[" + std::to_string(i) + "]", "empty symbol"});
    } else if (auto [it, fresh] = seen_symbols.emplace(a.symbols[i], i);
               !fresh) {
      out.push_back({"symbols[" + std::to_string(i) + "]",
                     "duplicate symbol " + a.symbols[i]});
    }
  }
  for (auto q : a.initial) {
    if (q >= n) out.push_back({"initial", "undeclared state " + state_ref(q)});
  }
  for (auto q : a.finals) {
    if (q >= n) out.push_back({"finals", "undeclared state " + state_ref(q)});
  }
  std::size_t index = 0;
  for (const auto& e : a.edges) {
    const auto where = "edge " + std::to_string(index++);
    if (e.from >= n) {
      out.push_back({where, "source is undeclared state " + state_ref(e.from)});
    }
    if (e.to >= n) {
      out.push_back({where, "target is undeclared state " + state_ref(e.to)});
    }
    if (e.symbol >= a.symbols.size()) {
      out.push_back({where, "symbol #" + std::to_string(e.symbol) +
                                " is not in the alphabet"});
    }
  }
  if (n > state_set::kMaxStates) {
    out.push_back({"states", "more than " +
                                 std::to_string(state_set::kMaxStates) +
                                 " states are not supported"});
  }
  return out;
}

std::set<state_id> post_set(const nbw& a, const std::set<state_id>& from,
                            symbol_id sym) {
  if (sym >= a.num_symbols()) throw input_error("unknown symbol");
  for (auto q : from) {
    if (q >= a.num_states()) throw input_error("unknown state");
  }
  std::set<state_id> out;
  for (const auto& e : a.edges) {
    if (e.symbol == sym && from.contains(e.from)) out.insert(e.to);
  }
  return out;
}

successor_table::successor_table(const nbw& a)
    : num_states_(a.num_states()),
      num_symbols_(a.num_symbols()),
      succ_(a.num_states() * a.num_symbols()) {
  if (num_states_ > state_set::kMaxStates) {
    throw input_error("automaton has too many states for determinization");
  }
  for (const auto& e : a.edges) {
    if (e.from >= num_states_ || e.to >= num_states_ ||
        e.symbol >= num_symbols_) {
      throw input_error("edge refers to an undeclared state or symbol");
    }
    succ_[e.from * num_symbols_ + e.symbol].insert(e.to);
  }
  for (auto q : a.finals) finals_.insert(q);
  for (auto q : a.initial) initial_.insert(q);
}

state_set successor_table::post(state_set from, symbol_id sym) const {
  state_set out;
  for (auto q : from.to_vector()) out |= succ_[q * num_symbols_ + sym];
  return out;
}

std::string to_string(const pair_index& index) {
  struct visitor {
    std::string operator()(std::uint32_t i) const { return std::to_string(i); }
    std::string operator()(const node_name& n) const { return n.to_string(); }
    std::string operator()(const identifier& id) const {
      return id.to_string();
    }
  };
  return std::visit(visitor{}, index);
}

bool rabin_loop_accepts(const rabin_pair_set& acc, acceptance_kind inf_kind,
                        const std::set<std::uint32_t>& inf) {
  if (inf_kind != acc.kind) {
    throw input_error("acceptance kind does not match the infinity set");
  }
  auto meets = [&](const std::set<std::uint32_t>& marks) {
    return std::any_of(inf.begin(), inf.end(),
                       [&](std::uint32_t t) { return marks.contains(t); });
  };
  return std::any_of(acc.pairs.begin(), acc.pairs.end(), [&](const auto& p) {
    return meets(p.accepting) && !meets(p.rejecting);
  });
}

}  // namespace hdet
