#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bisim.hpp"
#include "delta.hpp"
#include "fixpoint.hpp"
#include "io.hpp"
#include "limits.hpp"
#include "tree.hpp"

namespace polyaut {

namespace cli_detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void emit(const std::optional<std::string>& out_path, const std::string& text,
                 std::ostream& out) {
  if (out_path) {
    std::ofstream f(*out_path, std::ios::binary);
    if (!f) throw error("cannot write file: " + *out_path);
    f << text;
  } else {
    out << text;
  }
}

inline std::string file_kind(const std::string& text) {
  auto rows = detail::tokenize_lines(text);
  if (rows.empty()) throw error("empty input file");
  return rows[0].second[0];
}

inline Signature load_sig(const std::string& path) {
  return load_signature(read_file(path));
}

inline PAutomaton load_paut(const std::string& path, const Signature& sig) {
  PAutomaton a = parse_paut(read_file(path), sig);
  validate_p(a);
  return a;
}

inline QAutomaton load_qaut(const std::string& path, const Signature& sig) {
  QAutomaton a = parse_qaut(read_file(path), sig);
  validate_q(a);
  return a;
}

}  // namespace cli_detail

// Command-line front end over the library. Exit codes: 0 on success (and for
// predicate commands answering "true"), 1 for predicate commands answering
// "false" or "violated", 2 on input, parse or precondition errors.
inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  using cli_detail::emit;
  using cli_detail::load_paut;
  using cli_detail::load_qaut;
  using cli_detail::load_sig;
  using cli_detail::read_file;

  CLI::App app{"finite coalgebraic automata toolkit"};
  app.require_subcommand(1);
  int code = 0;

  std::string sig_path;
  std::vector<std::string> files;
  std::optional<std::string> out_path;
  std::string state;
  int depth = 10;
  bool require_root = false;
  bool dot_form = false;
  std::uint64_t cap = default_hom_cap;

  auto add_sig = [&](CLI::App* sub) {
    sub->add_option("--sig", sig_path, "signature file")->required();
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("-o,--out", out_path, "output file (default: stdout)");
  };
  auto add_files = [&](CLI::App* sub, int n, const std::string& desc) {
    sub->add_option("files", files, desc)->expected(n)->required();
  };

  auto morphism_block = [&](const std::string& head, const std::string& body) {
    if (out_path) out << "# " << head << "\n" << body;
  };

  {
    auto* sub = app.add_subcommand("validate", "check automaton invariants");
    add_sig(sub);
    add_files(sub, 1, "automaton file");
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      std::string text = read_file(files[0]);
      std::string kind = cli_detail::file_kind(text);
      try {
        if (kind == "paut") validate_p(parse_paut(text, sig));
        else if (kind == "qaut") validate_q(parse_qaut(text, sig));
        else throw error("expected a \"paut\" or \"qaut\" file");
      } catch (const parse_error&) {
        throw;
      } catch (const error& e) {
        out << e.what() << "\n";
        code = 1;
      }
    });
  }
  {
    auto* sub = app.add_subcommand("complete", "complete a P-automaton to a Q-automaton");
    add_sig(sub);
    add_files(sub, 1, "P-automaton file");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      emit(out_path, render_qaut(completion_K(load_paut(files[0], sig))), out);
    });
  }
  {
    auto* sub = app.add_subcommand("reflect", "restrict a delta-automaton to a P-automaton");
    add_sig(sub);
    add_files(sub, 1, "Q-automaton file");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      emit(out_path, render_paut(reflect_L(load_qaut(files[0], sig))), out);
    });
  }
  {
    auto* sub = app.add_subcommand("delta-check", "test delta-subcategory membership");
    add_sig(sub);
    add_files(sub, 1, "Q-automaton file");
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      DeltaReport r = delta_check(a);
      for (const DeltaWitness& w : r.witnesses)
        out << "BAD " << a.states[w.state] << " " << sig.dir_name(w.dir) << " "
            << sig.sort_token(w.target_sort) << "\n";
      code = r.verdict ? 0 : 1;
    });
  }
  {
    auto* sub = app.add_subcommand("delta-check-words",
                                   "delta membership via the word-level oracle");
    add_sig(sub);
    add_files(sub, 1, "Q-automaton file");
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      code = delta_check_words(load_qaut(files[0], sig)) ? 0 : 1;
    });
  }
  {
    auto* sub = app.add_subcommand("coreflect", "greatest delta-subautomaton");
    add_sig(sub);
    add_files(sub, 1, "Q-automaton file");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      auto [d, embedding] = coreflect_D(a);
      emit(out_path, render_qaut(d), out);
      morphism_block("embedding", render_map(d, a, embedding));
    });
  }
  {
    auto* sub = app.add_subcommand("behavior", "render the behavior tree of a state");
    add_sig(sub);
    add_files(sub, 1, "Q-automaton file");
    sub->add_option("--state", state, "start state")->required();
    sub->add_option("--depth", depth, "truncation depth (default 10)");
    sub->add_flag("--dot", dot_form, "emit Graphviz instead of text");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      LazyTree t = behavior(a, state);
      emit(out_path,
           dot_form ? render_tree_dot(sig, t, depth) : render_tree_text(sig, t, depth),
           out);
    });
  }
  {
    auto* sub = app.add_subcommand("clauses",
                                   "test depth-bounded final-coalgebra membership");
    add_sig(sub);
    add_files(sub, 1, "Q-automaton file");
    sub->add_option("--state", state, "start state")->required();
    sub->add_option("--depth", depth, "check depth (default 10)");
    sub->add_flag("--require-root", require_root, "require a labeled root");
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      code = clause_check(sig, behavior(a, state), depth, require_root) ? 0 : 1;
    });
  }
  {
    auto* sub = app.add_subcommand("bisim", "test two states for equal behavior");
    add_sig(sub);
    add_files(sub, 4, "A.qaut stateA B.qaut stateB");
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      QAutomaton b = load_qaut(files[2], sig);
      code = bisimilar(a, state_index(a, files[1]), b, state_index(b, files[3])) ? 0 : 1;
    });
  }
  {
    auto* sub = app.add_subcommand("minimize", "quotient by bisimilarity");
    add_sig(sub);
    add_files(sub, 1, "Q-automaton file");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      auto [m, projection] = minimize(a);
      emit(out_path, render_qaut(m), out);
      morphism_block("projection", render_map(a, m, projection));
    });
  }
  {
    auto* sub = app.add_subcommand("product-q", "product of two Q-automata");
    add_sig(sub);
    add_files(sub, 2, "A.qaut B.qaut");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      QAutomaton b = load_qaut(files[1], sig);
      QLimit lim = product_q(a, b);
      emit(out_path, render_qaut(lim.aut), out);
      morphism_block("projection 0", render_map(lim.aut, a, lim.projections[0]));
      morphism_block("projection 1", render_map(lim.aut, b, lim.projections[1]));
    });
  }
  {
    auto* sub = app.add_subcommand("product-p", "product of two P-automata");
    add_sig(sub);
    add_files(sub, 2, "A.paut B.paut");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      PAutomaton a = load_paut(files[0], sig);
      PAutomaton b = load_paut(files[1], sig);
      PLimit lim = product_p(a, b);
      emit(out_path, render_paut(lim.aut), out);
      morphism_block("projection 0", render_map(lim.aut, a, lim.projections[0]));
      morphism_block("projection 1", render_map(lim.aut, b, lim.projections[1]));
    });
  }
  {
    auto* sub = app.add_subcommand("equalizer-q", "equalizer of two parallel Q-morphisms");
    add_sig(sub);
    add_files(sub, 4, "A.qaut B.qaut f.map g.map");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      QAutomaton b = load_qaut(files[1], sig);
      AutMorphism f = parse_map(read_file(files[2]), a, b);
      AutMorphism g = parse_map(read_file(files[3]), a, b);
      QLimit lim = equalizer_q(a, b, f, g);
      emit(out_path, render_qaut(lim.aut), out);
      morphism_block("embedding", render_map(lim.aut, a, lim.projections[0]));
    });
  }
  {
    auto* sub = app.add_subcommand("equalizer-p", "equalizer of two parallel P-morphisms");
    add_sig(sub);
    add_files(sub, 4, "A.paut B.paut f.map g.map");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      PAutomaton a = load_paut(files[0], sig);
      PAutomaton b = load_paut(files[1], sig);
      AutMorphism f = parse_map(read_file(files[2]), a, b);
      AutMorphism g = parse_map(read_file(files[3]), a, b);
      PLimit lim = equalizer_p(a, b, f, g);
      emit(out_path, render_paut(lim.aut), out);
      morphism_block("embedding", render_map(lim.aut, a, lim.projections[0]));
    });
  }
  {
    auto* sub = app.add_subcommand("pullback-q", "pullback of a cospan of Q-morphisms");
    add_sig(sub);
    add_files(sub, 5, "A.qaut B.qaut C.qaut f.map g.map");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      QAutomaton a = load_qaut(files[0], sig);
      QAutomaton b = load_qaut(files[1], sig);
      QAutomaton c = load_qaut(files[2], sig);
      AutMorphism f = parse_map(read_file(files[3]), a, c);
      AutMorphism g = parse_map(read_file(files[4]), b, c);
      QLimit lim = pullback_q(a, b, c, f, g);
      emit(out_path, render_qaut(lim.aut), out);
      morphism_block("projection 0", render_map(lim.aut, a, lim.projections[0]));
      morphism_block("projection 1", render_map(lim.aut, b, lim.projections[1]));
    });
  }
  {
    auto* sub = app.add_subcommand("check-morphism", "test the morphism equations");
    add_sig(sub);
    add_files(sub, 3, "A B map (both automata of the same kind)");
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      std::string ta = read_file(files[0]);
      std::string tb = read_file(files[1]);
      std::string ka = cli_detail::file_kind(ta), kb = cli_detail::file_kind(tb);
      if (ka != kb) throw error("automata are of different kinds");
      if (ka == "paut") {
        PAutomaton a = parse_paut(ta, sig), b = parse_paut(tb, sig);
        validate_p(a);
        validate_p(b);
        code = is_morphism_p(a, b, parse_map(read_file(files[2]), a, b)) ? 0 : 1;
      } else if (ka == "qaut") {
        QAutomaton a = parse_qaut(ta, sig), b = parse_qaut(tb, sig);
        validate_q(a);
        validate_q(b);
        code = is_morphism_q(a, b, parse_map(read_file(files[2]), a, b)) ? 0 : 1;
      } else {
        throw error("expected \"paut\" or \"qaut\" files");
      }
    });
  }
  {
    auto* sub = app.add_subcommand("hom-count", "count the morphisms A -> B");
    add_sig(sub);
    add_files(sub, 2, "A B (both automata of the same kind)");
    sub->add_option("--cap", cap, "candidate bound (default 1000000)");
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      std::string ta = read_file(files[0]);
      std::string tb = read_file(files[1]);
      std::string ka = cli_detail::file_kind(ta), kb = cli_detail::file_kind(tb);
      if (ka != kb) throw error("automata are of different kinds");
      std::size_t count = 0;
      if (ka == "paut") {
        PAutomaton a = parse_paut(ta, sig), b = parse_paut(tb, sig);
        validate_p(a);
        validate_p(b);
        count = hom_enumerate(a, b, cap).size();
      } else if (ka == "qaut") {
        QAutomaton a = parse_qaut(ta, sig), b = parse_qaut(tb, sig);
        validate_q(a);
        validate_q(b);
        count = hom_enumerate(a, b, cap).size();
      } else {
        throw error("expected \"paut\" or \"qaut\" files");
      }
      out << count << "\n";
    });
  }
  {
    auto* sub = app.add_subcommand("segerberg",
                                   "evaluate both sides of the fixpoint equation");
    add_files(sub, 1, "frame file");
    sub->callback([&]() {
      KripkeFrame f = parse_frame(read_file(files[0]));
      SegerbergSides s = segerberg_sides(f);
      out << "lhs " << render_world_set(f, s.lhs) << "\n";
      out << "rhs " << render_world_set(f, s.rhs) << "\n";
      code = s.lhs == s.rhs ? 0 : 1;
    });
  }
  {
    auto* sub = app.add_subcommand("counterexample",
                                   "evaluate the two-sort diamond inequality");
    add_files(sub, 1, "frame file");
    sub->callback([&]() {
      KripkeFrame f = parse_frame(read_file(files[0]));
      CounterexampleReport r = counterexample_check(f);
      out << "lhs " << render_world_set(f, r.lhs) << "\n";
      out << "rhs " << render_world_set(f, r.rhs) << "\n";
      code = r.violated ? 1 : 0;
    });
  }
  {
    auto* sub = app.add_subcommand("dot", "Graphviz export of an automaton");
    add_sig(sub);
    add_files(sub, 1, "automaton file");
    add_out(sub);
    sub->callback([&]() {
      Signature sig = load_sig(sig_path);
      std::string text = read_file(files[0]);
      std::string kind = cli_detail::file_kind(text);
      if (kind == "paut") {
        PAutomaton a = parse_paut(text, sig);
        validate_p(a);
        emit(out_path, render_dot(a), out);
      } else if (kind == "qaut") {
        QAutomaton a = parse_qaut(text, sig);
        validate_q(a);
        emit(out_path, render_dot(a), out);
      } else {
        throw error("expected a \"paut\" or \"qaut\" file");
      }
    });
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}

}  // namespace polyaut
