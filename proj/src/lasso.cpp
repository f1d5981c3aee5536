#include <algorithm>
#include <map>
#include <sstream>

#include "hdet/oracle.hpp"

namespace hdet {

namespace {

void check_word(std::size_t num_symbols, const lasso_word& w) {
  if (w.period.empty()) throw input_error("lasso period must be non-empty");
  auto bad = [&](symbol_id s) { return s >= num_symbols; };
  if (std::any_of(w.prefix.begin(), w.prefix.end(), bad) ||
      std::any_of(w.period.begin(), w.period.end(), bad)) {
    throw input_error("lasso word uses a symbol outside the alphabet");
  }
}

using reach = transition_profile::reach;

}  // namespace

std::string lasso_word::to_string(const std::vector<std::string>& symbols) const {
  const bool compact = std::all_of(symbols.begin(), symbols.end(),
                                   [](const auto& s) { return s.size() == 1; });
  auto spell = [&](const std::vector<symbol_id>& word) {
    if (word.empty()) return std::string("ε");
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i && !compact) out += '.';
      out += symbols.at(word[i]);
    }
    return out;
  };
  return "(" + spell(prefix) + ", " + spell(period) + ")";
}

transition_profile::transition_profile(std::size_t num_states)
    : n_(num_states), cells_(num_states * num_states, reach::none) {
  for (std::size_t q = 0; q < n_; ++q) cells_[q * n_ + q] = reach::path;
}

transition_profile transition_profile::of_symbol(const nbw& a, symbol_id sym) {
  if (sym >= a.num_symbols()) throw input_error("unknown symbol");
  transition_profile p(a.num_states());
  std::fill(p.cells_.begin(), p.cells_.end(), reach::none);
  for (const auto& e : a.edges) {
    if (e.symbol != sym) continue;
    auto& cell = p.cells_[e.from * p.n_ + e.to];
    cell = std::max(cell, a.finals.contains(e.to) ? reach::through_final
                                                   : reach::path);
  }
  return p;
}

transition_profile transition_profile::of_word(const nbw& a,
                                               std::span<const symbol_id> word) {
  transition_profile p(a.num_states());
  for (auto sym : word) p = p.then(of_symbol(a, sym));
  return p;
}

transition_profile transition_profile::then(const transition_profile& other) const {
  if (other.n_ != n_) throw input_error("profiles over different state sets");
  transition_profile out(n_);
  for (std::size_t p = 0; p < n_; ++p) {
    for (std::size_t r = 0; r < n_; ++r) {
      reach best = reach::none;
      for (std::size_t q = 0; q < n_; ++q) {
        const auto a = at(static_cast<state_id>(p), static_cast<state_id>(q));
        const auto b = other.at(static_cast<state_id>(q), static_cast<state_id>(r));
        if (a == reach::none || b == reach::none) continue;
        best = std::max({best, a, b});
      }
      out.cells_[p * n_ + r] = best;
    }
  }
  return out;
}

bool nbw_lasso_member(const nbw& a, const lasso_word& w) {
  check_word(a.num_symbols(), w);
  const auto n = a.num_states();
  const auto prefix = transition_profile::of_word(a, w.prefix);
  const auto period = transition_profile::of_word(a, w.period);

  // States at period boundaries: reached by u·v^k for some k >= 0.
  std::vector<bool> boundary(n, false);
  std::vector<state_id> stack;
  for (auto q0 : a.initial) {
    for (state_id q = 0; q < n; ++q) {
      if (prefix.at(q0, q) != reach::none && !boundary[q]) {
        boundary[q] = true;
        stack.push_back(q);
      }
    }
  }
  while (!stack.empty()) {
    auto q = stack.back();
    stack.pop_back();
    for (state_id r = 0; r < n; ++r) {
      if (period.at(q, r) != reach::none && !boundary[r]) {
        boundary[r] = true;
        stack.push_back(r);
      }
    }
  }

  // Reflexive-transitive closure of the one-period graph.
  std::vector<bool> closure(n * n, false);
  for (state_id q = 0; q < n; ++q) {
    closure[q * n + q] = true;
    for (state_id r = 0; r < n; ++r) {
      if (period.at(q, r) != reach::none) closure[q * n + r] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!closure[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (closure[k * n + j]) closure[i * n + j] = true;
      }
    }
  }

  // Accept iff a boundary state sits on a period cycle through a final.
  for (state_id q = 0; q < n; ++q) {
    if (!boundary[q]) continue;
    for (state_id r = 0; r < n; ++r) {
      if (period.at(q, r) == reach::through_final && closure[r * n + q]) {
        return true;
      }
    }
  }
  return false;
}

bool det_lasso_member(std::size_t num_symbols, state_id initial,
                      std::span<const state_id> successors,
                      const rabin_pair_set& acceptance, const lasso_word& w) {
  check_word(num_symbols, w);
  auto step = [&](state_id s, symbol_id a) {
    return successors[s * num_symbols + a];
  };
  state_id s = initial;
  for (auto a : w.prefix) s = step(s, a);

  // boundary state -> index of the first transition taken from it
  std::map<state_id, std::size_t> seen;
  std::vector<std::pair<state_id, symbol_id>> taken;
  while (!seen.contains(s)) {
    seen.emplace(s, taken.size());
    for (auto a : w.period) {
      taken.emplace_back(s, a);
      s = step(s, a);
    }
  }
  std::set<std::uint32_t> inf;
  for (std::size_t i = seen.at(s); i < taken.size(); ++i) {
    const auto [from, a] = taken[i];
    if (acceptance.kind == acceptance_kind::transition_based) {
      inf.insert(static_cast<std::uint32_t>(from * num_symbols + a));
    } else {
      inf.insert(step(from, a));
    }
  }
  return rabin_loop_accepts(acceptance, acceptance.kind, inf);
}

std::vector<lasso_word> enumerate_lassos(std::size_t num_symbols,
                                         std::size_t max_prefix,
                                         std::size_t max_period) {
  // All words of length exactly `len`, lexicographic.
  auto words_of = [num_symbols](std::size_t len) {
    std::vector<std::vector<symbol_id>> out;
    std::vector<symbol_id> w(len, 0);
    if (num_symbols == 0) return len == 0 ? decltype(out){w} : out;
    while (true) {
      out.push_back(w);
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == num_symbols) w[--i] = 0;
      if (i == 0) break;
      ++w[i - 1];
    }
    return out;
  };
  std::vector<std::vector<symbol_id>> prefixes;
  for (std::size_t len = 0; len <= max_prefix; ++len) {
    auto ws = words_of(len);
    prefixes.insert(prefixes.end(), ws.begin(), ws.end());
  }
  std::vector<std::vector<symbol_id>> periods;
  for (std::size_t len = 1; len <= max_period; ++len) {
    auto ws = words_of(len);
    periods.insert(periods.end(), ws.begin(), ws.end());
  }
  std::vector<lasso_word> out;
  out.reserve(prefixes.size() * periods.size());
  for (const auto& u : prefixes) {
    for (const auto& v : periods) out.push_back({u, v});
  }
  return out;
}

equiv_report bounded_equiv(const nbw& a, std::size_t num_symbols,
                           state_id initial, std::span<const state_id> successors,
                           const rabin_pair_set& acceptance,
                           std::size_t max_prefix, std::size_t max_period) {
  if (num_symbols != a.num_symbols()) throw input_error("alphabets differ");
  const auto start = std::chrono::steady_clock::now();
  equiv_report report;
  for (const auto& w : enumerate_lassos(num_symbols, max_prefix, max_period)) {
    ++report.tested;
    const bool expected = nbw_lasso_member(a, w);
    const bool actual =
        det_lasso_member(num_symbols, initial, successors, acceptance, w);
    if (expected != actual) {
      report.first = counterexample{w, expected, actual};
      break;
    }
  }
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

std::string to_key_values(const equiv_report& report,
                          const std::vector<std::string>& symbols) {
  std::ostringstream out;
  out << "tested=" << report.tested << "\n";
  out << "equivalent=" << (report.first ? "false" : "true") << "\n";
  if (report.first) {
    out << "counterexample=" << report.first->word.to_string(symbols) << "\n"
        << "nbw_verdict=" << (report.first->nbw_verdict ? "accept" : "reject")
        << "\n"
        << "det_verdict=" << (report.first->det_verdict ? "accept" : "reject")
        << "\n";
  }
  out << "wall_seconds=" << report.wall_time.count() << "\n";
  return out.str();
}

}  // namespace hdet
