// hdet: determinize Büchi automata through history trees.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hdet/census.hpp"
#include "hdet/determinize.hpp"
#include "hdet/io.hpp"
#include "hdet/oracle.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCounterexample = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hdet::input_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hdet::input_error("cannot write " + path);
  out << text;
}

unsigned tree_cap() {
  if (const char* env = std::getenv("HDET_TREE_CAP")) {
    try {
      return static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      throw hdet::input_error("HDET_TREE_CAP must be a number");
    }
  }
  return hdet::kDefaultTreeCap;
}

struct construction_flags {
  std::string mode = "canonical";
  bool strict = false;
  std::string marks;  // overrides --strict-paper-marks when set

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "Pair indices: baseline (node names) or "
                                    "canonical (identifiers)")
        ->check(CLI::IsMember({"baseline", "canonical"}))
        ->capture_default_str();
    cmd->add_flag("--strict-paper-marks", strict,
                  "Reject only on ⊖; renamed accepting nodes get no mark");
    cmd->add_option("--marks", marks, "Mark semantics")
        ->check(CLI::IsMember({"stable-through", "target-absence", "paper-strict"}));
  }

  hdet::build_options options() const {
    hdet::build_options o;
    o.mode = mode == "baseline" ? hdet::construction_mode::baseline
                                : hdet::construction_mode::canonical;
    o.marks = strict ? hdet::mark_semantics::paper_strict
                     : hdet::mark_semantics::stable_through;
    if (marks == "target-absence") o.marks = hdet::mark_semantics::target_absence;
    if (marks == "paper-strict") o.marks = hdet::mark_semantics::paper_strict;
    if (marks == "stable-through") o.marks = hdet::mark_semantics::stable_through;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Determinize Büchi automata into deterministic Rabin automata "
               "via history trees.\n"
               "Exit codes: 0 success, 1 counterexample found, 2 input error.\n"
               "HDET_TREE_CAP overrides the tree enumeration cap (default 6)."};
  app.require_subcommand(1);

  // determinize
  auto* det = app.add_subcommand("determinize", "Build a DRTW or DRW, print HOA");
  std::string det_in, det_out = "drtw", det_output, det_format = "hoa";
  construction_flags det_flags;
  det->add_option("--in", det_in, "Büchi automaton (HOA or native JSON-lines)")
      ->required();
  det->add_option("--out", det_out, "Output kind")
      ->check(CLI::IsMember({"drtw", "drw"}))
      ->capture_default_str();
  det->add_option("-o,--output", det_output, "Write here instead of stdout");
  det->add_option("--format", det_format, "hoa or dot")
      ->check(CLI::IsMember({"hoa", "dot"}))
      ->capture_default_str();
  det_flags.attach(det);

  // verify
  auto* ver = app.add_subcommand("verify", "Compare DRTW and DRW with the Büchi "
                                           "automaton on all bounded lassos");
  std::string ver_in;
  std::size_t max_u = 4, max_v = 4;
  construction_flags ver_flags;
  ver->add_option("--in", ver_in, "Büchi automaton")->required();
  ver->add_option("--max-u", max_u, "Longest prefix")->capture_default_str();
  ver->add_option("--max-v", max_v, "Longest period")->capture_default_str();
  ver_flags.attach(ver);

  // gen-table
  auto* tab = app.add_subcommand("gen-table", "Print the canonical identifier "
                                              "table in spine order");
  unsigned tab_n = 0;
  bool tab_bounds = false;
  tab->add_option("--n", tab_n, "Capacity (number of NBW states)")
      ->required()
      ->check(CLI::Range(1U, 20U));
  tab->add_flag("--bounds", tab_bounds, "Also print the flag-bound report");

  // stats
  auto* sta = app.add_subcommand("stats", "Construction statistics for both modes");
  std::string sta_in;
  construction_flags sta_flags;
  sta->add_option("--in", sta_in, "Büchi automaton")->required();
  sta_flags.attach(sta);

  // render
  auto* ren = app.add_subcommand("render", "Write a Graphviz DOT rendering");
  std::string ren_in, ren_dot, ren_what = "nbw";
  construction_flags ren_flags;
  ren->add_option("--in", ren_in, "Büchi automaton")->required();
  ren->add_option("--dot", ren_dot, "Output DOT file ('-' for stdout)")->required();
  ren->add_option("--what", ren_what, "nbw, drtw, drw or initial (history tree)")
      ->check(CLI::IsMember({"nbw", "drtw", "drw", "initial"}))
      ->capture_default_str();
  ren_flags.attach(ren);

  // convert
  auto* con = app.add_subcommand("convert", "Rewrite a Büchi automaton");
  std::string con_in, con_to = "native", con_output;
  con->add_option("--in", con_in, "Büchi automaton")->required();
  con->add_option("--to", con_to, "hoa or native")
      ->check(CLI::IsMember({"hoa", "native"}))
      ->capture_default_str();
  con->add_option("-o,--output", con_output, "Write here instead of stdout");

  // count-trees
  auto* cnt = app.add_subcommand("count-trees", "Enumerate history trees over n states");
  unsigned cnt_n = 0;
  cnt->add_option("--n", cnt_n, "Number of states")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*det) {
      const auto a = hdet::parse_nbw(read_file(det_in));
      const auto options = det_flags.options();
      std::string text;
      if (det_out == "drtw") {
        const auto r = hdet::build_drtw(a, options);
        text = det_format == "hoa" ? hdet::emit_rabin(r.automaton, a.state_names)
                                   : hdet::emit_dot(r.automaton, a.state_names);
      } else {
        const auto r = hdet::build_drw(a, options);
        text = det_format == "hoa" ? hdet::emit_rabin(r.automaton, a.state_names)
                                   : hdet::emit_dot(r.automaton, a.state_names);
      }
      write_output(det_output, text);
      return kOk;
    }

    if (*ver) {
      const auto a = hdet::parse_nbw(read_file(ver_in));
      const auto options = ver_flags.options();
      const auto t = hdet::build_drtw(a, options);
      const auto s = hdet::build_drw(a, options);
      const auto rt = hdet::bounded_equiv(a, t.automaton, max_u, max_v);
      const auto rs = hdet::bounded_equiv(a, s.automaton, max_u, max_v);
      std::cout << "mode=" << hdet::to_string(options.mode) << "\n"
                << "marks=" << hdet::to_string(options.marks) << "\n";
      auto print = [&](const char* prefix, const hdet::equiv_report& r) {
        std::istringstream lines(hdet::to_key_values(r, a.symbols));
        for (std::string line; std::getline(lines, line);) {
          std::cout << prefix << "." << line << "\n";
        }
      };
      print("drtw", rt);
      print("drw", rs);
      return rt.first || rs.first ? kCounterexample : kOk;
    }

    if (*tab) {
      const auto table = hdet::canonical_identifier_table(tab_n);
      for (const auto& [name, id] : table->spine_order()) {
        std::cout << name.to_string() << "\t" << id.height << "\t" << id.flag << "\n";
      }
      if (tab_bounds) std::cout << hdet::to_key_values(hdet::verify_identifier_bounds(tab_n));
      return kOk;
    }

    if (*sta) {
      const auto a = hdet::parse_nbw(read_file(sta_in));
      auto options = sta_flags.options();
      std::cout << "nbw_states=" << a.num_states() << "\n"
                << "nbw_symbols=" << a.num_symbols() << "\n"
                << "marks=" << hdet::to_string(options.marks) << "\n";
      for (auto mode : {hdet::construction_mode::baseline,
                        hdet::construction_mode::canonical}) {
        options.mode = mode;
        const auto prefix = hdet::to_string(mode);
        auto print = [&](const std::string& kind, const hdet::build_stats& st) {
          std::istringstream lines(hdet::to_key_values(st));
          for (std::string line; std::getline(lines, line);) {
            std::cout << prefix << "." << kind << "." << line << "\n";
          }
        };
        print("drtw", hdet::build_drtw(a, options).stats);
        print("drw", hdet::build_drw(a, options).stats);
      }
      return kOk;
    }

    if (*ren) {
      const auto a = hdet::parse_nbw(read_file(ren_in));
      const auto options = ren_flags.options();
      std::string text;
      if (ren_what == "nbw") {
        text = hdet::emit_dot(a);
      } else if (ren_what == "initial") {
        text = hdet::emit_dot(hdet::initial_history_tree(a, options.mode), a.state_names);
      } else if (ren_what == "drtw") {
        text = hdet::emit_dot(hdet::build_drtw(a, options).automaton, a.state_names);
      } else {
        text = hdet::emit_dot(hdet::build_drw(a, options).automaton, a.state_names);
      }
      write_output(ren_dot, text);
      return kOk;
    }

    if (*con) {
      const auto a = hdet::parse_nbw(read_file(con_in));
      write_output(con_output, con_to == "hoa" ? hdet::emit_hoa(a) : hdet::emit_native(a));
      return kOk;
    }

    if (*cnt) {
      const auto cap = tree_cap();
      const auto census = hdet::enumerate_full(cnt_n, cap);
      std::cout << "n=" << cnt_n << "\n"
                << "hist=" << census.trees << "\n"
                << "hist_recurrence=" << hdet::count_history_trees(cnt_n) << "\n"
                << "histf=" << census.with_identifiers << "\n"
                << "histf_erased=" << census.erased_distinct << "\n"
                << "outside_full_tree=" << census.outside_full_tree << "\n"
                << "invalid=" << census.invalid << "\n";
      return kOk;
    }
  } catch (const hdet::capacity_error& e) {
    std::cerr << "hdet: " << e.what() << "\n" << hdet::to_key_values(e.partial());
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "hdet: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
