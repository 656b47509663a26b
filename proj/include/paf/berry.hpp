// Construction of the Berry-like sentence Ex_k B_D(x_k) and the certificate
// that its Goedel code G is below the factorial tower a = tower(L2).
//
//   D(x_k) = Ax_{k-2}( ~Ax_{k-1}~(a = x_{k-2} + x_{k-1} + 0)
//                      -> ~Ax_{k-1}~(R(x_{k-2}, x_{k-1}, x_k)) )
//
// and the sentence is the B-formula of D with template variables
// x_k, x_{k+2}, x_{2k+4}, x_{2k+5}, x_{2k+6}.
//
// R is an input. The formula representing r(l, m, n) is only known to exist;
// demo_representation() is a stand-in with the right free variables.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stop_token>
#include <string>
#include <vector>

#include "paf/bform.hpp"
#include "paf/godel.hpp"
#include "paf/real.hpp"
#include "paf/stirling.hpp"
#include "paf/syntax.hpp"

namespace paf {

struct BerryInput {
  Formula r;       // free variables exactly x_{k-2}, x_{k-1}, x_k
  VarIndex k = 2;  // largest variable index in r
};

// Stand-in for the representing formula: x0 + x1 = x2, with k = 2. It has the
// right shape only; it does not represent r(l, m, n).
inline BerryInput demo_representation() {
  return {Formula::eq(Term::add(Term::var(0), Term::var(1)), Term::var(2)), 2};
}

// Throws Error unless the input invariants hold.
inline void validate(const BerryInput& in) {
  if (in.k < 2) throw Error("berry input: k must be at least 2");
  std::set<VarIndex> want{in.k - 2, in.k - 1, in.k};
  if (free_vars(in.r) != want)
    throw Error("berry input: R must have free variables exactly x" + std::to_string(in.k - 2) + ", x" +
                std::to_string(in.k - 1) + ", x" + std::to_string(in.k));
  if (max_var(in.r).value_or(0) > in.k)
    throw Error("berry input: R uses a variable above x" + std::to_string(in.k));
}

inline Term build_a_term(std::size_t l2) {
  if (l2 < 1) throw Error("build_a_term needs L2 >= 1");
  return tower_term(l2);
}

inline Formula build_D(const BerryInput& in, std::size_t l2) {
  validate(in);
  const VarIndex y = in.k - 2, z = in.k - 1;
  Formula bounded = Formula::eq(build_a_term(l2), Term::add(Term::add(Term::var(y), Term::var(z)), Term::zero()));
  return Formula::forall(y, Formula::imp(mk_exists(z, bounded), mk_exists(z, in.r)));
}

inline TemplateVars berry_template_vars(VarIndex k) { return {k, k + 2, 2 * k + 4, 2 * k + 5, 2 * k + 6}; }

inline std::size_t symbol_count(const Formula& f) { return flatten(f).size(); }

inline std::uint64_t max_symbol_code(const Formula& f) {
  std::uint64_t m = 0;
  for (Symbol s : flatten(f)) m = std::max(m, symbol_code(s));
  return m;
}

struct BerryArtifact {
  BerryInput input;
  Term a_term;
  Formula d;
  Formula b_d;        // B_D(x_k), unquantified
  Formula exists_b_d;
  Code g{};
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  std::size_t l = 0;
  std::int64_t c = 0;  // L - 2 L1 - 6 L2
  VarIndex k = 0;
};

namespace detail {

// Everything except G, which is the expensive part.
inline BerryArtifact assemble(const BerryInput& in, std::size_t l2, const BOptions& opts) {
  BerryArtifact art{in, build_a_term(l2), build_D(in, l2), Formula::eq(Term::zero(), Term::zero()),
                    Formula::eq(Term::zero(), Term::zero())};
  TemplateVars vars = berry_template_vars(in.k);
  art.b_d = build_B(art.d, vars, opts, true);
  art.exists_b_d = build_B(art.d, vars, opts);
  art.l1 = symbol_count(in.r);
  art.l2 = l2;
  art.l = symbol_count(art.exists_b_d);
  art.c = static_cast<std::int64_t>(art.l) - 2 * static_cast<std::int64_t>(art.l1) - 6 * static_cast<std::int64_t>(l2);
  art.k = in.k;
  return art;
}

}  // namespace detail

// The constant c in L = 2 L1 + 6 L2 + c for this input, measured from one
// assembly (L2 enters only through the a-term, so c does not depend on L2).
inline std::int64_t measure_c(const BerryInput& in, const BOptions& opts = {}) {
  return detail::assemble(in, 1, opts).c;
}

struct L2Conditions {
  bool above_four = false;     // L2 > 4
  bool length_bound = false;   // L2 > 2 L1 + c + 1
  bool growth = false;         // 2^L2 > 7 L2 (4k + 39)
  bool all() const { return above_four && length_bound && growth; }
};

inline L2Conditions l2_conditions(std::size_t l1, std::int64_t c, VarIndex k, std::size_t l2) {
  L2Conditions out;
  out.above_four = l2 > 4;
  out.length_bound = static_cast<std::int64_t>(l2) > 2 * static_cast<std::int64_t>(l1) + c + 1;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 2, static_cast<unsigned long>(l2));
  mpz_class rhs = mpz_class(7) * static_cast<unsigned long>(l2) * (4 * static_cast<unsigned long>(k) + 39);
  out.growth = power > rhs;
  return out;
}

// Smallest L2 meeting all three conditions. The growth condition stays true
// once true, so a scan upward from the linear lower bounds finds the minimum.
inline std::size_t min_l2(std::size_t l1, std::int64_t c, VarIndex k) {
  std::int64_t start = std::max<std::int64_t>(5, 2 * static_cast<std::int64_t>(l1) + c + 2);
  auto l2 = static_cast<std::size_t>(start);
  while (!l2_conditions(l1, c, k, l2).all()) ++l2;
  return l2;
}

inline std::size_t choose_l2(const BerryInput& in, const BOptions& opts = {}) {
  validate(in);
  return min_l2(symbol_count(in.r), measure_c(in, opts), in.k);
}

// Builds the sentence with L2 = choose_l2(in), or `l2` when given.
inline BerryArtifact build_berry(const BerryInput& in, std::optional<std::size_t> l2 = std::nullopt,
                                 const BOptions& opts = {}, const std::stop_token& stop = {}) {
  validate(in);
  BerryArtifact art = detail::assemble(in, l2.value_or(choose_l2(in, opts)), opts);
  art.g = encode_formula(art.exists_b_d, stop);
  return art;
}

// Recovers the artifact from a sentence produced by build_berry. Throws Error
// if the formula is not of that form.
inline BerryArtifact analyze_berry(const Formula& sentence, const BOptions& opts = {}) {
  auto rec = recognize_B(sentence, opts);
  if (!rec) throw Error("not a B-formula");
  VarIndex k = rec->vars.x;
  if (k < 2 || rec->vars != berry_template_vars(k)) throw Error("template variables are not those of the Berry sentence");
  const Formula& d = rec->body;
  using K = Formula::Kind;
  auto fail = [] { return Error("body is not of the form D(x_k)"); };
  if (!d.is(K::forall) || d.index() != k - 2 || !d.body().is(K::imp)) throw fail();
  Formula left = d.body().antecedent(), right = d.body().consequent();
  if (!left.is(K::neg) || !left.body().is(K::forall) || !left.body().body().is(K::neg)) throw fail();
  if (!right.is(K::neg) || !right.body().is(K::forall) || !right.body().body().is(K::neg)) throw fail();
  Formula bounded = left.body().body().body();
  if (!bounded.is(K::eq)) throw fail();
  Term a = bounded.left();
  std::size_t l2 = 0;
  while (a.is(Term::Kind::fact)) {
    a = a.arg();
    ++l2;
  }
  if (l2 == 0 || a != numeral(3)) throw fail();
  BerryInput in{right.body().body().body(), k};
  BerryArtifact art = build_berry(in, l2, opts);
  if (art.exists_b_d != sentence) throw Error("formula differs from the rebuilt Berry sentence");
  return art;
}

// ---------------------------------------------------------------------------
// Certificate

struct Inequality {
  std::string name;
  std::string lhs;
  std::string op;
  std::string rhs;
  bool holds = false;
};

struct BerryCertificate {
  std::vector<Inequality> conditions;    // the three conditions on L2
  std::vector<Inequality> direct;        // ln ln G < 8 L2 <= ln ln a
  std::vector<Inequality> diagnostics;   // the intermediate chain and accounting
  Real ln_g_hi;                          // ln G <= ln_g_hi
  Real lnln_g_hi;                        // ln ln G <= lnln_g_hi
  TowerFloor tower_floor;                // ln ln a >= floor
  std::vector<std::string> notes;
  bool verdict = false;
};

namespace detail {

inline std::string num(const mpz_class& z) {
  std::string s = z.get_str();
  if (s.size() <= 40) return s;
  return "<" + std::to_string(mpz_sizeinbase(z.get_mpz_t(), 2)) + "-bit integer>";
}

inline bool all_hold(const std::vector<Inequality>& v) {
  return std::all_of(v.begin(), v.end(), [](const Inequality& i) { return i.holds; });
}

}  // namespace detail

inline BerryCertificate certify(const BerryArtifact& art) {
  using detail::num;
  BerryCertificate cert;
  const auto l1 = static_cast<unsigned long>(art.l1);
  const auto l2 = static_cast<unsigned long>(art.l2);
  const auto l = static_cast<unsigned long>(art.l);
  const unsigned long kcode = 4 * static_cast<unsigned long>(art.k) + 39;

  // (a) conditions on L2
  L2Conditions cond = l2_conditions(art.l1, art.c, art.k, art.l2);
  mpz_class pow_l2;
  mpz_ui_pow_ui(pow_l2.get_mpz_t(), 2, l2);
  cert.conditions.push_back({"L2 > 4", std::to_string(l2), ">", "4", cond.above_four});
  cert.conditions.push_back({"L2 > 2*L1 + c + 1", std::to_string(l2), ">",
                             std::to_string(2 * static_cast<std::int64_t>(l1) + art.c + 1), cond.length_bound});
  cert.conditions.push_back({"2^L2 > 7*L2*(4k+39)", num(pow_l2), ">",
                             num(mpz_class(7) * l2 * kcode), cond.growth});

  // (b) ln ln G < 8 L2, from G < 2^bitlen(G)
  const std::size_t bits = art.g.bit_length();
  cert.ln_g_hi = Real(128);
  mpfr_const_log2(cert.ln_g_hi.get(), MPFR_RNDU);
  mpfr_mul_ui(cert.ln_g_hi.get(), cert.ln_g_hi.get(), static_cast<unsigned long>(bits), MPFR_RNDU);
  cert.lnln_g_hi = Real(128);
  mpfr_log(cert.lnln_g_hi.get(), cert.ln_g_hi.get(), MPFR_RNDU);
  const bool direct = mpfr_cmp_ui(cert.lnln_g_hi.get(), 8 * l2) < 0;
  cert.direct.push_back({"ln ln G < 8*L2", cert.lnln_g_hi.str(12, MPFR_RNDU) + " (upper bound)", "<",
                         std::to_string(8 * l2), direct});

  // (c) ln ln a >= 8 L2
  cert.tower_floor = tower_lnln_floor(art.l2);
  const bool tower = at_least(cert.tower_floor.floor, static_cast<std::uint64_t>(8 * l2));
  cert.direct.push_back({"ln ln a >= 8*L2", cert.tower_floor.floor.str() + " (lower bound)", ">=",
                         std::to_string(8 * l2), tower});

  // Intermediate steps of the textbook chain, for diagnosis.
  auto& diag = cert.diagnostics;
  diag.push_back({"L = 2*L1 + 6*L2 + c", std::to_string(l), "=",
                  std::to_string(2 * static_cast<std::int64_t>(l1) + 6 * static_cast<std::int64_t>(l2) + art.c),
                  true});
  diag.push_back({"max symbol code = 4k+39", std::to_string(max_symbol_code(art.exists_b_d)), "=",
                  std::to_string(kcode), max_symbol_code(art.exists_b_d) == kcode});
  diag.push_back({"L + 1 < 7*L2", std::to_string(l + 1), "<", std::to_string(7 * l2), l + 1 < 7 * l2});
  const std::uint64_t p_l = nth_prime(art.l);
  diag.push_back({"p_L < 2^(2^(L+1))", "bitlen(p_L) = " + std::to_string(std::bit_width(p_l)), "<=",
                  "2^" + std::to_string(l + 1), check_lemma2(art.l)});
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(p_l), kcode * (l + 1));
  diag.push_back({"G < p_L^((4k+39)(L+1))", num(art.g.value()), "<", num(bound), art.g.value() < bound});
  // (4k+39)(L+1) 2^(L+1) < 7 L2 (4k+39) 2^(7 L2) < 2^(8 L2)
  mpz_class e1, e2, e3, t;
  mpz_ui_pow_ui(t.get_mpz_t(), 2, l + 1);
  e1 = t * kcode * (l + 1);
  mpz_ui_pow_ui(t.get_mpz_t(), 2, 7 * l2);
  e2 = t * kcode * (7 * l2);
  mpz_ui_pow_ui(e3.get_mpz_t(), 2, 8 * l2);
  diag.push_back({"exponent (4k+39)(L+1)2^(L+1) < 7L2(4k+39)2^(7L2)", num(e1), "<", num(e2), e1 < e2});
  diag.push_back({"exponent 7L2(4k+39)2^(7L2) < 2^(8L2)", num(e2), "<", num(e3), e2 < e3});

  cert.notes.push_back("D bounds the code variable by a = x + y + 0, i.e. codes up to and including a");
  cert.notes.push_back("R is " + print_formula(art.input.r) + " (a stand-in unless supplied by the caller)");

  cert.verdict = detail::all_hold(cert.conditions) && detail::all_hold(cert.direct);
  return cert;
}

inline std::string format_certificate(const BerryArtifact& art, const BerryCertificate& cert) {
  std::string out;
  out += "k = " + std::to_string(art.k) + "\n";
  out += "L1 = " + std::to_string(art.l1) + "\n";
  out += "L2 = " + std::to_string(art.l2) + "\n";
  out += "L = " + std::to_string(art.l) + "\n";
  out += "c = " + std::to_string(art.c) + "\n";
  out += "bitlen(G) = " + std::to_string(art.g.bit_length()) + "\n";
  auto section = [&](const char* title, const std::vector<Inequality>& v) {
    out += std::string("[") + title + "]\n";
    for (const Inequality& i : v)
      out += i.name + ": " + i.lhs + " " + i.op + " " + i.rhs + " : " + (i.holds ? "PASS" : "FAIL") + "\n";
  };
  section("conditions", cert.conditions);
  section("direct", cert.direct);
  section("diagnostics", cert.diagnostics);
  out += "[tower]\n";
  for (const std::string& s : cert.tower_floor.steps) out += s + "\n";
  out += "[notes]\n";
  for (const std::string& s : cert.notes) out += s + "\n";
  out += std::string("verdict: ") + (cert.verdict ? "G < a" : "not certified") + "\n";
  return out;
}

}  // namespace paf
