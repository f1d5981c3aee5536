#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

#include "hdet/io.hpp"

namespace hdet {

std::string to_string(parse_error_kind kind) {
  switch (kind) {
    case parse_error_kind::syntax: return "syntax";
    case parse_error_kind::unsupported_acceptance: return "unsupported-acceptance";
    case parse_error_kind::undeclared_state: return "undeclared-state";
  }
  return "?";
}

parse_error::parse_error(parse_error_kind kind, std::size_t line,
                         std::size_t column, const std::string& message)
    : input_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                  to_string(kind) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

// --- lexer ---------------------------------------------------------------------

enum class tok { header, ident, integer, string, alias, punct, body, end, eof };

struct token {
  tok kind = tok::eof;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class lexer {
 public:
  explicit lexer(std::string_view text) : text_(text) {}

  std::vector<token> run() {
    std::vector<token> out;
    while (true) {
      skip_blank();
      token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (c == '"') {
        t.kind = tok::string;
        t.text = read_string();
      } else if (c == '@') {
        advance();
        t.kind = tok::alias;
        t.text = read_word();
        if (t.text.empty()) fail(t, "alias name expected after '@'");
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = tok::integer;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          t.text += text_[pos_];
          advance();
        }
      } else if (text_.substr(pos_, 8) == "--BODY--") {
        t.kind = tok::body;
        for (int i = 0; i < 8; ++i) advance();
      } else if (text_.substr(pos_, 7) == "--END--") {
        t.kind = tok::end;
        for (int i = 0; i < 7; ++i) advance();
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.text = read_word();
        t.kind = tok::ident;
        if (pos_ < text_.size() && text_[pos_] == ':') {
          advance();
          t.kind = tok::header;
        }
      } else if (std::string_view("[]{}()!&|").find(c) != std::string_view::npos) {
        t.kind = tok::punct;
        t.text = std::string(1, c);
        advance();
      } else {
        fail(t, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  [[noreturn]] static void fail(const token& at, const std::string& message) {
    throw parse_error(parse_error_kind::syntax, at.line, at.column, message);
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) {
      ++column_;  // count code points, not UTF-8 continuation bytes
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      } else if (text_.substr(pos_, 2) == "/*") {
        token at{tok::eof, "", line_, column_};
        int depth = 0;
        do {
          if (pos_ + 1 >= text_.size()) fail(at, "unterminated comment");
          if (text_.substr(pos_, 2) == "/*") {
            ++depth;
            advance();
          } else if (text_.substr(pos_, 2) == "*/") {
            --depth;
            advance();
          }
          advance();
        } while (depth > 0);
      } else {
        return;
      }
    }
  }

  std::string read_word() {
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') break;
      out += c;
      advance();
    }
    return out;
  }

  std::string read_string() {
    token at{tok::string, "", line_, column_};
    advance();  // opening quote
    std::string out;
    while (true) {
      if (pos_ >= text_.size()) fail(at, "unterminated string");
      const char c = text_[pos_];
      advance();
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= text_.size()) fail(at, "unterminated string");
        out += text_[pos_];
        advance();
      } else {
        out += c;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

// --- document ------------------------------------------------------------------

struct hoa_edge {
  token where;
  std::string alias;
  std::size_t target = 0;
  std::vector<std::uint32_t> marks;
};

struct hoa_state {
  token where;
  std::size_t id = 0;
  std::optional<std::string> name;
  std::vector<std::uint32_t> marks;
  std::vector<hoa_edge> edges;
};

struct hoa_document {
  std::optional<std::size_t> states;
  std::vector<std::pair<token, std::size_t>> starts;
  std::vector<std::string> aliases;
  std::vector<token> acc_name;
  token acceptance_at;
  std::optional<std::size_t> acceptance_sets;
  std::vector<token> acceptance;
  std::vector<std::string> properties;
  std::vector<hoa_state> body;
};

[[noreturn]] void fail_at(const token& t, parse_error_kind kind,
                          const std::string& message) {
  throw parse_error(kind, t.line, t.column, message);
}

[[noreturn]] void syntax(const token& t, const std::string& message) {
  fail_at(t, parse_error_kind::syntax, message);
}

class parser {
 public:
  explicit parser(std::string_view text) : toks_(lexer(text).run()) {}

  hoa_document run() {
    hoa_document doc;
    const auto& first = next();
    if (first.kind != tok::header || first.text != "HOA") {
      syntax(first, "document must start with 'HOA:'");
    }
    const auto& version = next();
    if (version.kind != tok::ident || version.text != "v1") {
      syntax(version, "only HOA v1 is supported");
    }
    while (peek().kind == tok::header) header(doc);
    if (peek().kind != tok::body) syntax(peek(), "expected '--BODY--'");
    next();
    if (!doc.states) syntax(peek(), "missing 'States:' header");
    while (peek().kind == tok::header && peek().text == "State") body_state(doc);
    if (peek().kind != tok::end) syntax(peek(), "expected 'State:' or '--END--'");
    next();
    if (peek().kind != tok::eof) syntax(peek(), "text after '--END--'");
    return doc;
  }

 private:
  const token& peek() const { return toks_[pos_]; }
  const token& next() {
    const auto& t = toks_[pos_];
    if (t.kind != tok::eof) ++pos_;
    return t;
  }
  bool at_punct(char c) const {
    return peek().kind == tok::punct && peek().text[0] == c;
  }
  void expect_punct(char c) {
    if (!at_punct(c)) syntax(peek(), std::string("expected '") + c + "'");
    next();
  }
  std::size_t integer() {
    const auto& t = next();
    if (t.kind != tok::integer) syntax(t, "expected an integer");
    if (t.text.size() > 9) syntax(t, "integer too large");
    return std::stoul(t.text);
  }
  bool at_value() const {
    const auto k = peek().kind;
    return k == tok::ident || k == tok::integer || k == tok::string ||
           k == tok::alias || k == tok::punct;
  }

  void header(hoa_document& doc) {
    const auto h = next();
    if (h.text == "States") {
      doc.states = integer();
    } else if (h.text == "Start") {
      doc.starts.emplace_back(peek(), integer());
      if (at_punct('&')) syntax(peek(), "conjunctive initial states are not supported");
    } else if (h.text == "AP") {
      const auto count = integer();
      for (std::size_t i = 0; i < count; ++i) {
        if (next().kind != tok::string) syntax(toks_[pos_ - 1], "expected an AP name");
      }
    } else if (h.text == "Alias") {
      const auto& name = next();
      if (name.kind != tok::alias) syntax(name, "expected '@name'");
      if (std::find(doc.aliases.begin(), doc.aliases.end(), name.text) !=
          doc.aliases.end()) {
        syntax(name, "alias @" + name.text + " declared twice");
      }
      doc.aliases.push_back(name.text);
      bool any = false;
      while (peek().kind == tok::integer || peek().kind == tok::punct ||
             (peek().kind == tok::ident && (peek().text == "t" || peek().text == "f"))) {
        next();
        any = true;
      }
      if (!any) syntax(peek(), "alias @" + name.text + " has no label expression");
    } else if (h.text == "acc-name") {
      while (peek().kind == tok::ident || peek().kind == tok::integer) {
        doc.acc_name.push_back(next());
      }
    } else if (h.text == "Acceptance") {
      doc.acceptance_at = h;
      doc.acceptance_sets = integer();
      while (at_value()) doc.acceptance.push_back(next());
    } else if (h.text == "properties") {
      while (peek().kind == tok::ident) doc.properties.push_back(next().text);
    } else {
      while (at_value()) next();  // name:, tool:, and unknown headers
    }
  }

  std::vector<std::uint32_t> marks() {
    std::vector<std::uint32_t> out;
    if (!at_punct('{')) return out;
    next();
    while (peek().kind == tok::integer) out.push_back(static_cast<std::uint32_t>(integer()));
    expect_punct('}');
    return out;
  }

  void body_state(hoa_document& doc) {
    hoa_state s;
    s.where = next();
    if (at_punct('[')) syntax(peek(), "state labels are not supported");
    const auto id_at = peek();
    s.id = integer();
    if (s.id >= *doc.states) {
      fail_at(id_at, parse_error_kind::undeclared_state,
              "state " + std::to_string(s.id) + " beyond 'States: " +
                  std::to_string(*doc.states) + "'");
    }
    if (peek().kind == tok::string) s.name = next().text;
    s.marks = marks();
    while (at_punct('[') || peek().kind == tok::integer) {
      hoa_edge e;
      e.where = peek();
      if (!at_punct('[')) {
        syntax(peek(), "edges need an explicit [@symbol] label");
      }
      next();
      const auto& label = next();
      if (label.kind != tok::alias || !at_punct(']')) {
        syntax(label,
               "propositional labels are not supported; label each edge with "
               "one symbol alias");
      }
      next();
      e.alias = label.text;
      const auto target_at = peek();
      e.target = integer();
      if (e.target >= *doc.states) {
        fail_at(target_at, parse_error_kind::undeclared_state,
                "state " + std::to_string(e.target) + " beyond 'States: " +
                    std::to_string(*doc.states) + "'");
      }
      e.marks = marks();
      s.edges.push_back(std::move(e));
    }
    doc.body.push_back(std::move(s));
  }

  std::vector<token> toks_;
  std::size_t pos_ = 0;
};

symbol_id symbol_of(const hoa_document& doc, const hoa_edge& e) {
  auto it = std::find(doc.aliases.begin(), doc.aliases.end(), e.alias);
  if (it == doc.aliases.end()) syntax(e.where, "undeclared alias @" + e.alias);
  return static_cast<symbol_id>(it - doc.aliases.begin());
}

void check_starts(const hoa_document& doc) {
  for (const auto& [at, s] : doc.starts) {
    if (s >= *doc.states) {
      fail_at(at, parse_error_kind::undeclared_state,
              "start state " + std::to_string(s) + " is not declared");
    }
  }
}

std::string joined(const std::vector<token>& ts) {
  std::string out;
  for (const auto& t : ts) out += t.text;
  return out;
}

// --- writer helpers ------------------------------------------------------------

bool valid_alias(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void write_alphabet(std::ostream& out, const std::vector<std::string>& symbols) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < symbols.size()) ++bits;
  out << "AP: " << bits;
  for (std::size_t j = 0; j < bits; ++j) out << " \"s" << j << "\"";
  out << "\n";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (!valid_alias(symbols[i])) {
      throw input_error("symbol '" + symbols[i] + "' cannot be written as a HOA alias");
    }
    out << "Alias: @" << symbols[i] << " ";
    if (bits == 0) out << "t";
    for (std::size_t j = 0; j < bits; ++j) {
      if (j) out << "&";
      if (((i >> j) & 1U) == 0) out << "!";
      out << j;
    }
    out << "\n";
  }
}

void write_marks(std::ostream& out, const std::vector<std::uint32_t>& sets) {
  if (sets.empty()) return;
  out << " {";
  for (std::size_t i = 0; i < sets.size(); ++i) out << (i ? " " : "") << sets[i];
  out << "}";
}

// Acceptance sets touching each target (transition or state id).
std::map<std::uint32_t, std::vector<std::uint32_t>> sets_by_target(
    const rabin_pair_set& acc) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> out;
  for (std::uint32_t i = 0; i < acc.pairs.size(); ++i) {
    for (auto t : acc.pairs[i].rejecting) out[t].push_back(2 * i);
    for (auto t : acc.pairs[i].accepting) out[t].push_back(2 * i + 1);
  }
  for (auto& [t, sets] : out) std::sort(sets.begin(), sets.end());
  return out;
}

std::string write_rabin(const std::vector<std::string>& symbols,
                        std::size_t num_states, state_id initial,
                        const std::vector<state_id>& successors,
                        const rabin_pair_set& acc,
                        const std::vector<std::string>& payloads) {
  std::ostringstream out;
  const auto k = acc.pairs.size();
  const bool on_states = acc.kind == acceptance_kind::state_based;
  out << "HOA: v1\n";
  out << "States: " << num_states << "\n";
  if (num_states > 0) out << "Start: " << initial << "\n";
  write_alphabet(out, symbols);
  out << "acc-name: Rabin " << k << "\n";
  out << "Acceptance: " << 2 * k << " ";
  if (k == 0) {
    out << "f\n/* no Rabin pairs: every run is rejected */\n";
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      out << (i ? "|" : "") << "(Fin(" << 2 * i << ")&Inf(" << 2 * i + 1 << "))";
    }
    out << "\n";
  }
  out << "properties: explicit-labels trans-labels "
      << (on_states ? "state-acc" : "trans-acc") << " deterministic complete\n";
  out << "--BODY--\n";
  const auto marks = sets_by_target(acc);
  auto marks_of = [&](std::uint32_t t) {
    auto it = marks.find(t);
    return it == marks.end() ? std::vector<std::uint32_t>{} : it->second;
  };
  const auto n_sym = symbols.size();
  for (state_id s = 0; s < num_states; ++s) {
    out << "State: " << s;
    if (s < payloads.size()) out << " " << quoted(payloads[s]);
    if (on_states) write_marks(out, marks_of(s));
    out << "\n";
    for (symbol_id a = 0; a < n_sym; ++a) {
      const auto t = static_cast<std::uint32_t>(s * n_sym + a);
      out << "[@" << symbols[a] << "] " << successors.at(t);
      if (!on_states) write_marks(out, marks_of(t));
      out << "\n";
    }
  }
  out << "--END--\n";
  return out.str();
}

}  // namespace

// --- NBW -----------------------------------------------------------------------

std::string emit_hoa(const nbw& a) {
  std::ostringstream out;
  out << "HOA: v1\n";
  out << "States: " << a.num_states() << "\n";
  for (auto q : a.initial) out << "Start: " << q << "\n";
  write_alphabet(out, a.symbols);
  out << "acc-name: Buchi\n";
  out << "Acceptance: 1 Inf(0)\n";
  out << "properties: explicit-labels trans-labels state-acc\n";
  out << "--BODY--\n";
  for (state_id q = 0; q < a.num_states(); ++q) {
    out << "State: " << q << " " << quoted(a.state_names[q]);
    if (a.finals.contains(q)) out << " {0}";
    out << "\n";
    for (const auto& e : a.edges) {
      if (e.from == q) out << "[@" << a.symbols.at(e.symbol) << "] " << e.to << "\n";
    }
  }
  out << "--END--\n";
  return out.str();
}

nbw parse_hoa_nbw(std::string_view text) {
  const auto doc = parser(text).run();
  const auto unsupported = parse_error_kind::unsupported_acceptance;
  if (!doc.acc_name.empty() && doc.acc_name.front().text != "Buchi") {
    fail_at(doc.acc_name.front(), unsupported,
            "acceptance '" + doc.acc_name.front().text +
                "' is not supported; expected Buchi");
  }
  if (!doc.acceptance_sets) syntax(doc.acceptance_at, "missing 'Acceptance:' header");
  if (*doc.acceptance_sets != 1 || joined(doc.acceptance) != "Inf(0)") {
    fail_at(doc.acceptance_at, unsupported,
            "only 'Acceptance: 1 Inf(0)' is supported");
  }
  check_starts(doc);

  nbw a;
  a.symbols = doc.aliases;
  for (std::size_t q = 0; q < *doc.states; ++q) a.state_names.push_back(std::to_string(q));
  for (const auto& [at, s] : doc.starts) a.initial.insert(static_cast<state_id>(s));
  std::vector<bool> seen(*doc.states, false);
  for (const auto& s : doc.body) {
    if (seen[s.id]) syntax(s.where, "state " + std::to_string(s.id) + " listed twice");
    seen[s.id] = true;
    if (s.name) a.state_names[s.id] = *s.name;
    for (auto m : s.marks) {
      if (m != 0) fail_at(s.where, unsupported, "state in acceptance set " + std::to_string(m));
      a.finals.insert(static_cast<state_id>(s.id));
    }
    for (const auto& e : s.edges) {
      if (!e.marks.empty()) {
        fail_at(e.where, unsupported, "transition-based Büchi marks are not supported");
      }
      a.edges.insert({static_cast<state_id>(s.id), symbol_of(doc, e),
                      static_cast<state_id>(e.target)});
    }
  }
  return a;
}

// --- Rabin ---------------------------------------------------------------------

std::string emit_rabin(const drtw& d, const std::vector<std::string>& state_names) {
  std::vector<std::string> payloads;
  for (const auto& t : d.states) payloads.push_back(t.to_string(&state_names));
  return write_rabin(d.symbols, d.num_states(), d.initial, d.successors,
                     d.acceptance, payloads);
}

std::string emit_rabin(const drw& d, const std::vector<std::string>& state_names) {
  std::vector<std::string> payloads;
  for (const auto& s : d.states) {
    auto text = s.base.to_string(&state_names);
    const auto marks = to_string(s.incoming);
    if (!marks.empty()) text += " | " + marks;
    payloads.push_back(std::move(text));
  }
  return write_rabin(d.symbols, d.num_states(), d.initial, d.successors,
                     d.acceptance, payloads);
}

std::string emit_rabin(const rabin_automaton& d) {
  return write_rabin(d.symbols, d.num_states(), d.initial, d.successors,
                     d.acceptance, {});
}

rabin_automaton parse_rabin_hoa(std::string_view text) {
  const auto doc = parser(text).run();
  const auto unsupported = parse_error_kind::unsupported_acceptance;
  if (!doc.acceptance_sets) syntax(doc.acceptance_at, "missing 'Acceptance:' header");
  if (!doc.acc_name.empty() && doc.acc_name.front().text != "Rabin") {
    fail_at(doc.acc_name.front(), unsupported, "expected Rabin acceptance");
  }
  const auto sets = *doc.acceptance_sets;
  if (sets % 2 != 0) fail_at(doc.acceptance_at, unsupported, "odd number of sets");
  const auto k = sets / 2;
  std::string expected;
  if (k == 0) expected = "f";
  for (std::size_t i = 0; i < k; ++i) {
    expected += (i ? "|" : "");
    expected += "(Fin(" + std::to_string(2 * i) + ")&Inf(" +
                std::to_string(2 * i + 1) + "))";
  }
  if (joined(doc.acceptance) != expected) {
    fail_at(doc.acceptance_at, unsupported,
            "acceptance must list pairs as (Fin(2i)&Inf(2i+1))");
  }
  if (doc.starts.size() != 1) {
    syntax(doc.acceptance_at, "a deterministic automaton needs exactly one start state");
  }
  check_starts(doc);

  rabin_automaton d;
  d.symbols = doc.aliases;
  d.states.resize(*doc.states);
  d.initial = static_cast<state_id>(doc.starts.front().second);
  const bool on_states = std::find(doc.properties.begin(), doc.properties.end(),
                                   "state-acc") != doc.properties.end();
  d.acceptance.kind = on_states ? acceptance_kind::state_based
                                : acceptance_kind::transition_based;
  for (std::size_t i = 0; i < k; ++i) {
    d.acceptance.pairs.push_back({static_cast<std::uint32_t>(i), {}, {}});
  }
  const auto n_sym = d.symbols.size();
  constexpr auto unset = static_cast<state_id>(-1);
  d.successors.assign(*doc.states * n_sym, unset);
  d.annotations.assign(d.successors.size(), {});
  auto add_marks = [&](const token& at, const std::vector<std::uint32_t>& marks,
                       std::uint32_t target) {
    for (auto m : marks) {
      if (m >= sets) syntax(at, "acceptance set " + std::to_string(m) + " out of range");
      auto& pair = d.acceptance.pairs[m / 2];
      (m % 2 ? pair.accepting : pair.rejecting).insert(target);
    }
  };
  for (const auto& s : doc.body) {
    if (on_states) {
      add_marks(s.where, s.marks, static_cast<std::uint32_t>(s.id));
    } else if (!s.marks.empty()) {
      syntax(s.where, "state marks in a transition-based automaton");
    }
    for (const auto& e : s.edges) {
      const auto t = static_cast<std::uint32_t>(s.id * n_sym + symbol_of(doc, e));
      if (d.successors[t] != unset) syntax(e.where, "second edge for one symbol");
      d.successors[t] = static_cast<state_id>(e.target);
      if (on_states && !e.marks.empty()) {
        syntax(e.where, "edge marks in a state-based automaton");
      }
      if (!on_states) add_marks(e.where, e.marks, t);
    }
  }
  if (!d.is_total()) syntax(doc.acceptance_at, "automaton is not complete");
  return d;
}

}  // namespace hdet
