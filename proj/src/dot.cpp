#include <map>
#include <sstream>

#include "hdet/io.hpp"

namespace hdet {

namespace {

std::string escaped(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// One line per tree node: "ε: {p,q} (0,1)".
std::string tree_label(const history_tree& t, const std::vector<std::string>& names) {
  if (t.is_sink()) return "∅";
  std::string out;
  for (const auto& n : t.nodes()) {
    if (!out.empty()) out += "\\n";
    out += escaped(n.name.to_string() + ": " + to_string(n.label, &names));
    if (n.id) out += " " + n.id->to_string();
  }
  return out;
}

template <class Payload, class Label>
std::string automaton_dot(const deterministic_rabin<Payload>& d,
                          const std::string& graph, Label label_of) {
  std::ostringstream out;
  out << "digraph " << graph << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  out << "  init [shape=point];\n";
  for (state_id s = 0; s < d.num_states(); ++s) {
    const auto [label, sink] = label_of(d.states[s]);
    out << "  s" << s << " [label=\"" << label << "\"";
    if (sink) out << ", style=dashed, color=gray";
    out << "];\n";
  }
  if (d.num_states() > 0) out << "  init -> s" << d.initial << ";\n";
  for (state_id s = 0; s < d.num_states(); ++s) {
    for (symbol_id a = 0; a < d.num_symbols(); ++a) {
      const auto t = d.transition(s, a);
      std::string text = escaped(d.symbols[a]);
      const auto marks = to_string(d.annotations.at(t));
      if (!marks.empty()) text += " " + escaped(marks);
      out << "  s" << s << " -> s" << d.successors[t] << " [label=\"" << text
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace

std::string emit_dot(const nbw& a) {
  std::ostringstream out;
  out << "digraph nbw {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  for (state_id q = 0; q < a.num_states(); ++q) {
    out << "  q" << q << " [label=\"" << escaped(a.state_names[q]) << "\"";
    if (a.finals.contains(q)) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (auto q : a.initial) {
    out << "  init" << q << " [shape=point];\n";
    out << "  init" << q << " -> q" << q << ";\n";
  }
  // Parallel edges share one arrow labelled with all their symbols.
  std::map<std::pair<state_id, state_id>, std::string> arrows;
  for (const auto& e : a.edges) {
    auto& text = arrows[{e.from, e.to}];
    if (!text.empty()) text += ",";
    text += escaped(a.symbols.at(e.symbol));
  }
  for (const auto& [ends, text] : arrows) {
    out << "  q" << ends.first << " -> q" << ends.second << " [label=\"" << text
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string emit_dot(const drtw& d, const std::vector<std::string>& state_names) {
  return automaton_dot(d, "drtw", [&](const history_tree& t) {
    return std::pair{tree_label(t, state_names), t.is_sink()};
  });
}

std::string emit_dot(const drw& d, const std::vector<std::string>& state_names) {
  return automaton_dot(d, "drw", [&](const enriched_history_tree& s) {
    auto label = tree_label(s.base, state_names);
    const auto marks = to_string(s.incoming);
    if (!marks.empty()) label += "\\n[" + escaped(marks) + "]";
    return std::pair{label, s.base.is_sink()};
  });
}

std::string emit_dot(const history_tree& t, const std::vector<std::string>& state_names) {
  std::ostringstream out;
  out << "digraph history_tree {\n";
  out << "  node [shape=ellipse];\n";
  if (t.is_sink()) {
    out << "  sink [label=\"∅\", shape=box, style=dashed, color=gray];\n";
  }
  std::map<node_name, std::size_t> ids;
  for (const auto& n : t.nodes()) {
    const auto k = ids.size();
    ids[n.name] = k;
    std::string label = to_string(n.label, &state_names);
    if (n.id) label += " " + n.id->to_string();
    out << "  n" << k << " [label=\"" << escaped(label) << "\", tooltip=\""
        << escaped(n.name.to_string()) << "\"];\n";
  }
  for (const auto& n : t.nodes()) {
    if (n.name.is_root()) continue;
    out << "  n" << ids.at(n.name.parent()) << " -> n" << ids.at(n.name) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace hdet
