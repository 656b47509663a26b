// Command-line front end. run() is the whole program minus process plumbing,
// so tests can drive it in-process.
//
// Exit codes: 0 success / true verdict, 1 negative verdict, 2 usage or input
// error, 3 budget exceeded.

#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paf/berry.hpp"
#include "paf/bform.hpp"
#include "paf/godel.hpp"
#include "paf/proof.hpp"
#include "paf/syntax.hpp"

namespace paf::cli {

enum Exit : int { ok = 0, negative = 1, usage = 2, over_budget = 3 };

class InputError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string read_all(std::istream& in) {
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// First line that is neither blank nor a '#' comment.
inline std::string first_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = paf::detail::trim(line);
    if (!t.empty() && t[0] != '#') return t;
  }
  throw InputError("no formula found");
}

inline Formula formula_file(const std::string& path) { return parse_formula(first_line(read_file(path))); }

inline bool is_decimal(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

inline bool looks_like_dump(const std::string& s) {
  for (const char* head : {"Eq(", "Not(", "Imp(", "Forall("})
    if (s.rfind(head, 0) == 0) return true;
  return false;
}

inline BOptions offset_options(int offset) {
  if (offset != 0 && offset != 1) throw InputError("--offset must be 0 or 1");
  return BOptions{offset == 1 ? Offset::one : Offset::zero};
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write '" + p.string() + "'");
  out << text;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Peano arithmetic with factorial: syntax, Goedel codes, proofs, B-formulas, Berry sentence"};
  app.name("paf");
  app.require_subcommand(1);
  app.fallthrough();
  Budget budget;
  app.add_option("--budget-bits", budget.max_bits, "largest code, in bits, that may be materialized")
      ->check(CLI::PositiveNumber);

  // Text from the positional argument, or stdin when absent.
  std::string text_arg;
  auto input_text = [&] { return text_arg.empty() ? detail::first_line(detail::read_all(in)) : text_arg; };

  auto* parse_cmd = app.add_subcommand("parse", "parse formula text and print its syntax tree");
  parse_cmd->add_option("formula", text_arg, "formula text (default: stdin)");

  auto* print_cmd = app.add_subcommand("print", "print a formula (text or syntax tree) in canonical form");
  print_cmd->add_option("formula", text_arg, "formula text or syntax tree (default: stdin)");

  auto* encode_cmd = app.add_subcommand("encode", "Goedel code of a formula");
  encode_cmd->add_option("formula", text_arg, "formula text (default: stdin)");

  auto* decode_cmd = app.add_subcommand("decode", "formula with the given Goedel code");
  decode_cmd->add_option("code", text_arg, "decimal code (default: stdin)");

  std::string path, target_text;
  auto* check_cmd = app.add_subcommand("check-proof", "check a proof file");
  check_cmd->add_option("file", path, "proof file")->required();
  check_cmd->add_option("--target", target_text, "formula the proof must end with (default: its last line)");

  VarIndex var = 0;
  std::vector<VarIndex> aux;
  bool inner = false;
  int offset = 1;
  auto* build_b_cmd = app.add_subcommand("build-b", "B-formula of the body in a formula file");
  build_b_cmd->add_option("file", path, "formula file")->required();
  build_b_cmd->add_option("--var", var, "index k of the distinguished variable x_k")->required();
  build_b_cmd->add_option("--aux", aux, "indices of y, u, v, w (default: next unused)")->expected(4)->delimiter(',');
  build_b_cmd->add_flag("--inner", inner, "omit the outer existential");
  build_b_cmd->add_option("--offset", offset, "constant in != and >: 1 for 0', 0 for 0")->capture_default_str();

  auto* recognize_cmd = app.add_subcommand("recognize-b", "recognize a standard-form B-formula");
  recognize_cmd->add_option("file", path, "formula file")->required();
  recognize_cmd->add_option("--offset", offset, "constant in != and >: 1 for 0', 0 for 0")->capture_default_str();

  std::string l_arg, m_arg;
  std::size_t n = 0;
  auto* decide_cmd = app.add_subcommand("decide-r", "decide r(l, m, n)");
  decide_cmd->add_option("--l", l_arg, "code of a formula, or a formula file")->required();
  decide_cmd->add_option("--m", m_arg, "proof code, or a proof file")->required();
  decide_cmd->add_option("--n", n, "natural number n")->required();
  decide_cmd->add_option("--offset", offset, "constant in != and >: 1 for 0', 0 for 0")->capture_default_str();

  std::string r_path, out_dir;
  VarIndex k = 0;
  std::optional<std::size_t> l2;
  auto* berry_cmd = app.add_subcommand("build-berry", "build the Berry sentence and its certificate");
  berry_cmd->add_option("--r", r_path, "formula file holding R(x_{k-2}, x_{k-1}, x_k)")->required();
  berry_cmd->add_option("--k", k, "index k")->required();
  berry_cmd->add_option("--l2", l2, "number of factorials in a (default: least admissible)");
  berry_cmd->add_option("--out", out_dir, "output directory")->required();

  auto* certify_cmd = app.add_subcommand("certify", "re-check an artifact written by build-berry");
  certify_cmd->add_option("--in", out_dir, "artifact directory")->required();

  std::vector<const char*> argv{"paf"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Exit::ok : Exit::usage;
  }

  try {
    if (parse_cmd->parsed()) {
      out << dump(parse_formula(input_text())) << "\n";
      return Exit::ok;
    }
    if (print_cmd->parsed()) {
      std::string t = input_text();
      out << print_formula(detail::looks_like_dump(t) ? read_dump(t) : parse_formula(t)) << "\n";
      return Exit::ok;
    }
    if (encode_cmd->parsed()) {
      SymbolString s = flatten(parse_formula(input_text()));
      if (estimated_log2(s) > static_cast<double>(budget.max_bits) + 1) {
        err << "budget exceeded: code needs about " << static_cast<std::uint64_t>(estimated_log2(s)) << " bits\n";
        return Exit::over_budget;
      }
      out << encode_symbols(s).to_decimal() << "\n";
      return Exit::ok;
    }
    if (decode_cmd->parsed()) {
      auto f = decode_formula(Code::from_decimal(input_text()), budget);
      if (!f) {
        err << to_string(f.rejection().kind) << ": " << f.rejection().reason << "\n";
        return f.rejection().kind == Rejection::Kind::budget_exceeded ? Exit::over_budget : Exit::negative;
      }
      out << print_formula(f.value()) << "\n";
      return Exit::ok;
    }
    if (check_cmd->parsed()) {
      Proof p = parse_proof(detail::read_file(path));
      if (!target_text.empty()) p.target = parse_formula(target_text);
      Verdict v = check_proof(p);
      if (v) {
        out << "valid: " << print_formula(p.target) << "\n";
        return Exit::ok;
      }
      out << "invalid";
      if (v.line) out << " at line " << *v.line;
      out << ": " << v.reason << "\n";
      return Exit::negative;
    }
    if (build_b_cmd->parsed()) {
      Formula a = detail::formula_file(path);
      TemplateVars vars = fresh_template_vars(a, var);
      if (!aux.empty()) vars = TemplateVars{var, aux[0], aux[1], aux[2], aux[3]};
      out << print_formula(build_B(a, vars, detail::offset_options(offset), inner)) << "\n";
      return Exit::ok;
    }
    if (recognize_cmd->parsed()) {
      auto rec = recognize_B(detail::formula_file(path), detail::offset_options(offset));
      if (!rec) {
        out << "not a B-formula\n";
        return Exit::negative;
      }
      out << "body: " << print_formula(rec->body) << "\n";
      out << "x: x" << rec->vars.x << "\ny: x" << rec->vars.y << "\nu: x" << rec->vars.u << "\nv: x" << rec->vars.v
          << "\nw: x" << rec->vars.w << "\n";
      return Exit::ok;
    }
    if (decide_cmd->parsed()) {
      BOptions opts = detail::offset_options(offset);
      LArgument l = detail::is_decimal(l_arg) ? LArgument{Code::from_decimal(l_arg)}
                                              : LArgument{detail::formula_file(l_arg)};
      MArgument m = detail::is_decimal(m_arg) ? MArgument{Code::from_decimal(m_arg)}
                                              : MArgument{parse_proof(detail::read_file(m_arg))};
      RTrace t = decide_r(l, m, n, budget, opts);
      out << format_trace(t);
      return t.budget_exceeded ? Exit::over_budget : t.verdict ? Exit::ok : Exit::negative;
    }
    if (berry_cmd->parsed()) {
      BerryInput input{detail::formula_file(r_path), k};
      validate(input);
      if (l2 && *l2 < 2) throw InputError("--l2 must be at least 2");
      std::size_t chosen = l2.value_or(choose_l2(input));
      BerryArtifact shape = paf::detail::assemble(input, chosen, {});
      double bits = estimated_log2(flatten(shape.exists_b_d));
      if (bits > static_cast<double>(budget.max_bits) + 1) {
        err << "budget exceeded: G needs about " << static_cast<std::uint64_t>(bits) << " bits\n";
        return Exit::over_budget;
      }
      BerryArtifact art = build_berry(input, chosen);
      BerryCertificate cert = certify(art);
      std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      detail::write_file(dir / "exists_B_D.paf", print_formula(art.exists_b_d) + "\n");
      detail::write_file(dir / "G.txt", art.g.to_decimal() + "\n");
      detail::write_file(dir / "certificate.txt", format_certificate(art, cert));
      out << "L2 = " << art.l2 << "\nL = " << art.l << "\nc = " << art.c << "\nbitlen(G) = " << art.g.bit_length()
          << "\nverdict: " << (cert.verdict ? "G < a" : "not certified") << "\n";
      return cert.verdict ? Exit::ok : Exit::negative;
    }
    if (certify_cmd->parsed()) {
      std::filesystem::path dir(out_dir);
      Formula sentence = detail::formula_file((dir / "exists_B_D.paf").string());
      SymbolString s = flatten(sentence);
      if (estimated_log2(s) > static_cast<double>(budget.max_bits) + 1) {
        err << "budget exceeded: G needs about " << static_cast<std::uint64_t>(estimated_log2(s)) << " bits\n";
        return Exit::over_budget;
      }
      BerryArtifact art = analyze_berry(sentence);
      Code stored = Code::from_decimal(detail::read_file((dir / "G.txt").string()));
      if (!(stored == art.g)) {
        out << "G.txt does not match the code of exists_B_D.paf\n";
        return Exit::negative;
      }
      BerryCertificate cert = certify(art);
      out << format_certificate(art, cert);
      return cert.verdict ? Exit::ok : Exit::negative;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Exit::usage;
  }
  return Exit::usage;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace paf::cli
