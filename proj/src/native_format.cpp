#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "hdet/io.hpp"
#include "json.hpp"

namespace hdet {

namespace {

using json = nlohmann::ordered_json;

constexpr int kNativeVersion = 1;

[[noreturn]] void bad(std::size_t line, const std::string& message,
                      parse_error_kind kind = parse_error_kind::syntax) {
  throw parse_error(kind, line, 1, message);
}

std::vector<std::string> string_list(const json& j, const char* key,
                                     std::size_t line) {
  if (!j.contains(key) || !j[key].is_array()) {
    bad(line, std::string("header needs an array '") + key + "'");
  }
  std::vector<std::string> out;
  for (const auto& v : j[key]) {
    if (!v.is_string()) bad(line, std::string("'") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::string emit_native(const nbw& a) {
  auto names = [&](const std::set<state_id>& ids) {
    json arr = json::array();
    for (auto q : ids) arr.push_back(a.state_names.at(q));
    return arr;
  };
  json header;
  header["format"] = "hdet-nbw";
  header["version"] = kNativeVersion;
  header["states"] = a.state_names;
  header["alphabet"] = a.symbols;
  header["initial"] = names(a.initial);
  header["finals"] = names(a.finals);
  std::string out = header.dump() + "\n";
  for (const auto& e : a.edges) {
    json line;
    line["from"] = a.state_names.at(e.from);
    line["symbol"] = a.symbols.at(e.symbol);
    line["to"] = a.state_names.at(e.to);
    out += line.dump() + "\n";
  }
  return out;
}

nbw parse_native(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  nbw a;
  std::map<std::string, state_id> state_ids;
  std::map<std::string, symbol_id> symbol_ids;

  auto lookup_state = [&](const std::string& name, std::size_t line) {
    auto it = state_ids.find(name);
    if (it == state_ids.end()) {
      bad(line, "state '" + name + "' is not declared",
          parse_error_kind::undeclared_state);
    }
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (std::all_of(raw.begin(), raw.end(),
                    [](char c) { return std::isspace(static_cast<unsigned char>(c)); })) {
      continue;
    }
    json j;
    try {
      j = json::parse(raw);
    } catch (const json::parse_error& e) {
      throw parse_error(parse_error_kind::syntax, line_no, e.byte,
                        "malformed JSON");
    }
    if (!j.is_object()) bad(line_no, "each line must be a JSON object");

    if (!have_header) {
      have_header = true;
      if (j.value("format", "") != "hdet-nbw") bad(line_no, "header must declare format hdet-nbw");
      if (j.value("version", 0) != kNativeVersion) {
        bad(line_no, "unsupported version");
      }
      a.state_names = string_list(j, "states", line_no);
      a.symbols = string_list(j, "alphabet", line_no);
      for (std::size_t q = 0; q < a.state_names.size(); ++q) {
        if (!state_ids.emplace(a.state_names[q], static_cast<state_id>(q)).second) {
          bad(line_no, "state '" + a.state_names[q] + "' declared twice");
        }
      }
      for (std::size_t s = 0; s < a.symbols.size(); ++s) {
        if (!symbol_ids.emplace(a.symbols[s], static_cast<symbol_id>(s)).second) {
          bad(line_no, "symbol '" + a.symbols[s] + "' declared twice");
        }
      }
      for (const auto& q : string_list(j, "initial", line_no)) {
        a.initial.insert(lookup_state(q, line_no));
      }
      for (const auto& q : string_list(j, "finals", line_no)) {
        a.finals.insert(lookup_state(q, line_no));
      }
      continue;
    }

    for (const char* key : {"from", "symbol", "to"}) {
      if (!j.contains(key) || !j[key].is_string()) {
        bad(line_no, std::string("edge needs a string '") + key + "'");
      }
    }
    const auto symbol = j["symbol"].get<std::string>();
    auto sym = symbol_ids.find(symbol);
    if (sym == symbol_ids.end()) bad(line_no, "symbol '" + symbol + "' is not declared");
    a.edges.insert({lookup_state(j["from"].get<std::string>(), line_no), sym->second,
                    lookup_state(j["to"].get<std::string>(), line_no)});
  }
  if (!have_header) bad(line_no + 1, "missing header line");
  return a;
}

nbw parse_nbw(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  auto a = first != std::string_view::npos && text[first] == '{'
               ? parse_native(text)
               : parse_hoa_nbw(text);
  auto problems = validate_nbw(a);
  if (!problems.empty()) {
    throw input_error("invalid automaton: " + problems.front().location + ": " +
                      problems.front().message);
  }
  return a;
}

}  // namespace hdet
