#pragma once

// Readers and writers: a HOA v1 subset (Büchi in, Rabin out), the native
// JSON-lines format for Büchi automata, and Graphviz DOT.

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "hdet/automaton.hpp"
#include "hdet/determinize.hpp"
#include "hdet/history_tree.hpp"

namespace hdet {

enum class parse_error_kind { syntax, unsupported_acceptance, undeclared_state };

std::string to_string(parse_error_kind kind);

class parse_error : public input_error {
 public:
  parse_error(parse_error_kind kind, std::size_t line, std::size_t column,
              const std::string& message);
  parse_error_kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  parse_error_kind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// Deterministic Rabin automaton read back from a file: no payloads.
using rabin_automaton = deterministic_rabin<std::monostate>;

// --- HOA ----------------------------------------------------------------------
//
// Symbols are encoded over ceil(log2 |Σ|) atomic propositions with one alias
// per symbol (`Alias: @a !0`); every edge is labelled by exactly one alias.

/// Throws input_error when a symbol is not a valid alias name.
std::string emit_hoa(const nbw& a);

/// Accepts only `Acceptance: 1 Inf(0)` with alias-labelled edges.
nbw parse_hoa_nbw(std::string_view text);

/// `Rabin k` with pair i on sets 2i (Fin) and 2i+1 (Inf). Byte-stable.
std::string emit_rabin(const drtw& d, const std::vector<std::string>& state_names);
std::string emit_rabin(const drw& d, const std::vector<std::string>& state_names);
std::string emit_rabin(const rabin_automaton& d);

rabin_automaton parse_rabin_hoa(std::string_view text);

// --- native -------------------------------------------------------------------

/// First line: {"format":"hdet-nbw","version":1,...}; then one line per edge.
std::string emit_native(const nbw& a);
nbw parse_native(std::string_view text);

/// Native when the first non-blank character is '{', HOA otherwise. The
/// result is validated.
nbw parse_nbw(std::string_view text);

// --- DOT ----------------------------------------------------------------------

std::string emit_dot(const nbw& a);
std::string emit_dot(const drtw& d, const std::vector<std::string>& state_names);
std::string emit_dot(const drw& d, const std::vector<std::string>& state_names);
/// Nodes show "label (h,f)"; edges run from parent to child.
std::string emit_dot(const history_tree& t, const std::vector<std::string>& state_names);

}  // namespace hdet
