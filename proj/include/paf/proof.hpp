// Hilbert-style proof checking for PAF: axiom schemas 10-28, modus ponens (29)
// and generalization (30).

#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "paf/godel.hpp"
#include "paf/syntax.hpp"

namespace paf {

inline constexpr int kFirstSchema = 10;
inline constexpr int kLastSchema = 28;

// ---------------------------------------------------------------------------
// Schema matching

namespace detail {

using FK = Formula::Kind;
using TK = Term::Kind;

inline bool is_var(const Term& t) { return t.is(TK::var); }
inline bool is_succ_var(const Term& t) { return t.is(TK::succ) && is_var(t.arg()); }
inline bool same_var(const Term& a, const Term& b) { return is_var(a) && is_var(b) && a.index() == b.index(); }

// Finds t with a[x_k := t] == b, where x_k has a free occurrence in a.
class SubstitutionMatcher {
 public:
  explicit SubstitutionMatcher(VarIndex k) : k_(k) {}

  bool formula(const Formula& a, const Formula& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case FK::eq: return term(a.left(), b.left()) && term(a.right(), b.right());
      case FK::neg: return formula(a.body(), b.body());
      case FK::imp: return formula(a.antecedent(), b.antecedent()) && formula(a.consequent(), b.consequent());
      case FK::forall:
        if (a.index() != b.index()) return false;
        if (a.index() == k_) return a.body() == b.body();
        return formula(a.body(), b.body());
    }
    return false;
  }

  const std::optional<Term>& replacement() const { return replacement_; }

 private:
  bool term(const Term& a, const Term& b) {
    if (a.is(TK::var) && a.index() == k_) {
      if (!replacement_) {
        replacement_ = b;
        return true;
      }
      return *replacement_ == b;
    }
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case TK::zero: return true;
      case TK::var: return a.index() == b.index();
      case TK::succ:
      case TK::fact: return term(a.arg(), b.arg());
      case TK::add:
      case TK::mul: return term(a.lhs(), b.lhs()) && term(a.rhs(), b.rhs());
    }
    return false;
  }

  VarIndex k_;
  std::optional<Term> replacement_;
};

inline bool schema10(const Formula& f) {
  // A -> (B -> A)
  return f.is(FK::imp) && f.consequent().is(FK::imp) && f.consequent().consequent() == f.antecedent();
}

inline bool schema11(const Formula& f) {
  // (A -> (B -> C)) -> ((A -> B) -> (A -> C))
  if (!f.is(FK::imp)) return false;
  Formula l = f.antecedent(), r = f.consequent();
  if (!l.is(FK::imp) || !l.consequent().is(FK::imp) || !r.is(FK::imp)) return false;
  Formula a = l.antecedent(), b = l.consequent().antecedent(), c = l.consequent().consequent();
  Formula ab = r.antecedent(), ac = r.consequent();
  return ab.is(FK::imp) && ac.is(FK::imp) && ab.antecedent() == a && ab.consequent() == b && ac.antecedent() == a &&
         ac.consequent() == c;
}

inline bool schema12(const Formula& f) {
  // (~A -> ~B) -> (B -> A)
  if (!f.is(FK::imp)) return false;
  Formula l = f.antecedent(), r = f.consequent();
  return l.is(FK::imp) && l.antecedent().is(FK::neg) && l.consequent().is(FK::neg) && r.is(FK::imp) &&
         r.antecedent() == l.consequent().body() && r.consequent() == l.antecedent().body();
}

inline bool schema13(const Formula& f) {
  // Ax_k A -> A, x_k not free in A
  if (!f.is(FK::imp) || !f.antecedent().is(FK::forall)) return false;
  Formula q = f.antecedent();
  return q.body() == f.consequent() && !occurs_free(q.body(), q.index());
}

inline bool schema14(const Formula& f) {
  // Ax_k A[x_k] -> A[t], x_k free in A, t free for x_k in A
  if (!f.is(FK::imp) || !f.antecedent().is(FK::forall)) return false;
  Formula q = f.antecedent();
  if (!occurs_free(q.body(), q.index())) return false;
  SubstitutionMatcher m(q.index());
  if (!m.formula(q.body(), f.consequent()) || !m.replacement()) return false;
  return free_for(q.body(), q.index(), *m.replacement());
}

inline bool schema15(const Formula& f) {
  // Ax_k (A -> B) -> (A -> Ax_k B), x_k not free in A
  if (!f.is(FK::imp)) return false;
  Formula l = f.antecedent(), r = f.consequent();
  if (!l.is(FK::forall) || !l.body().is(FK::imp) || !r.is(FK::imp) || !r.consequent().is(FK::forall)) return false;
  VarIndex k = l.index();
  Formula a = l.body().antecedent(), b = l.body().consequent();
  return r.antecedent() == a && r.consequent().index() == k && r.consequent().body() == b && !occurs_free(a, k);
}

inline bool var_eq(const Formula& f) { return f.is(FK::eq) && is_var(f.left()) && is_var(f.right()); }

inline bool schema16(const Formula& f) {
  // x_k = x_k
  return var_eq(f) && same_var(f.left(), f.right());
}

inline bool schema17(const Formula& f) {
  // (x_i = x_j) -> (x_j = x_i)
  if (!f.is(FK::imp) || !var_eq(f.antecedent()) || !var_eq(f.consequent())) return false;
  Formula a = f.antecedent(), b = f.consequent();
  return same_var(a.left(), b.right()) && same_var(a.right(), b.left());
}

inline bool schema18(const Formula& f) {
  // (x_i = x_j) -> ((x_i = x_k) -> (x_j = x_k))
  if (!f.is(FK::imp) || !var_eq(f.antecedent()) || !f.consequent().is(FK::imp)) return false;
  Formula ij = f.antecedent(), ik = f.consequent().antecedent(), jk = f.consequent().consequent();
  return var_eq(ik) && var_eq(jk) && same_var(ik.left(), ij.left()) && same_var(jk.left(), ij.right()) &&
         same_var(jk.right(), ik.right());
}

inline bool schema19(const Formula& f) {
  // (x_i = x_j) -> (x_i' = x_j')
  if (!f.is(FK::imp) || !var_eq(f.antecedent())) return false;
  Formula a = f.antecedent(), b = f.consequent();
  return b.is(FK::eq) && is_succ_var(b.left()) && is_succ_var(b.right()) && same_var(b.left().arg(), a.left()) &&
         same_var(b.right().arg(), a.right());
}

inline bool schema20(const Formula& f) {
  // ~x_k' = 0
  return f.is(FK::neg) && f.body().is(FK::eq) && is_succ_var(f.body().left()) && f.body().right().is(TK::zero);
}

inline bool schema21(const Formula& f) {
  // (x_i' = x_j') -> (x_i = x_j)
  if (!f.is(FK::imp) || !var_eq(f.consequent())) return false;
  Formula a = f.antecedent(), b = f.consequent();
  return a.is(FK::eq) && is_succ_var(a.left()) && is_succ_var(a.right()) && same_var(a.left().arg(), b.left()) &&
         same_var(a.right().arg(), b.right());
}

inline bool schema22(const Formula& f) {
  // x_k + 0 = x_k
  if (!f.is(FK::eq)) return false;
  Term l = f.left();
  return l.is(TK::add) && is_var(l.lhs()) && l.rhs().is(TK::zero) && same_var(f.right(), l.lhs());
}

inline bool schema23(const Formula& f) {
  // x_i + x_j' = (x_i + x_j)'
  if (!f.is(FK::eq)) return false;
  Term l = f.left(), r = f.right();
  if (!l.is(TK::add) || !is_var(l.lhs()) || !is_succ_var(l.rhs())) return false;
  if (!r.is(TK::succ) || !r.arg().is(TK::add)) return false;
  return same_var(r.arg().lhs(), l.lhs()) && same_var(r.arg().rhs(), l.rhs().arg());
}

inline bool schema24(const Formula& f) {
  // x_k * 0 = 0
  if (!f.is(FK::eq)) return false;
  Term l = f.left();
  return l.is(TK::mul) && is_var(l.lhs()) && l.rhs().is(TK::zero) && f.right().is(TK::zero);
}

inline bool schema25(const Formula& f) {
  // x_i * x_j' = x_i * x_j + x_i
  if (!f.is(FK::eq)) return false;
  Term l = f.left(), r = f.right();
  if (!l.is(TK::mul) || !is_var(l.lhs()) || !is_succ_var(l.rhs())) return false;
  if (!r.is(TK::add) || !r.lhs().is(TK::mul)) return false;
  Term prod = r.lhs();
  return same_var(prod.lhs(), l.lhs()) && same_var(prod.rhs(), l.rhs().arg()) && same_var(r.rhs(), l.lhs());
}

inline bool schema26(const Formula& f) {
  // 0! = 0'
  return f == Formula::eq(Term::fact(Term::zero()), numeral(1));
}

inline bool schema27(const Formula& f) {
  // (x_k')! = x_k' * x_k!
  if (!f.is(FK::eq)) return false;
  Term l = f.left(), r = f.right();
  if (!l.is(TK::fact) || !is_succ_var(l.arg())) return false;
  Term x = l.arg().arg();
  return r.is(TK::mul) && is_succ_var(r.lhs()) && same_var(r.lhs().arg(), x) && r.rhs().is(TK::fact) &&
         same_var(r.rhs().arg(), x);
}

inline bool schema28(const Formula& f) {
  // ~(A[0] -> ~Ax_k(A[x_k] -> A[x_k'])) -> A[x_k], x_k free in A[x_k]
  if (!f.is(FK::imp) || !f.antecedent().is(FK::neg)) return false;
  Formula conj = f.antecedent().body();
  if (!conj.is(FK::imp) || !conj.consequent().is(FK::neg)) return false;
  Formula step = conj.consequent().body();
  if (!step.is(FK::forall) || !step.body().is(FK::imp)) return false;
  VarIndex k = step.index();
  Formula a = f.consequent();
  if (step.body().antecedent() != a || !occurs_free(a, k)) return false;
  try {
    return conj.antecedent() == substitute(a, k, Term::zero()) &&
           step.body().consequent() == substitute(a, k, Term::succ(Term::var(k)));
  } catch (const CaptureError&) {
    return false;
  }
}

}  // namespace detail

// True when f instantiates axiom schema `schema` (10..28).
inline bool is_axiom_instance(const Formula& f, int schema) {
  switch (schema) {
    case 10: return detail::schema10(f);
    case 11: return detail::schema11(f);
    case 12: return detail::schema12(f);
    case 13: return detail::schema13(f);
    case 14: return detail::schema14(f);
    case 15: return detail::schema15(f);
    case 16: return detail::schema16(f);
    case 17: return detail::schema17(f);
    case 18: return detail::schema18(f);
    case 19: return detail::schema19(f);
    case 20: return detail::schema20(f);
    case 21: return detail::schema21(f);
    case 22: return detail::schema22(f);
    case 23: return detail::schema23(f);
    case 24: return detail::schema24(f);
    case 25: return detail::schema25(f);
    case 26: return detail::schema26(f);
    case 27: return detail::schema27(f);
    case 28: return detail::schema28(f);
    default: return false;
  }
}

// Every schema id f instantiates; empty when f is not an axiom.
inline std::vector<int> match_axiom(const Formula& f) {
  std::vector<int> ids;
  for (int s = kFirstSchema; s <= kLastSchema; ++s)
    if (is_axiom_instance(f, s)) ids.push_back(s);
  return ids;
}

// {A, A -> B} |- B. Throws Error on a shape mismatch.
inline Formula apply_mp(const Formula& a, const Formula& imp) {
  if (!imp.is(Formula::Kind::imp)) throw Error("modus ponens: second premise is not an implication");
  if (imp.antecedent() != a) throw Error("modus ponens: antecedent does not match first premise");
  return imp.consequent();
}

// A |- Ax_k A
inline Formula apply_gen(const Formula& a, VarIndex k) { return Formula::forall(k, a); }

// ---------------------------------------------------------------------------
// Proofs

struct AxiomInstance {
  int schema;
  friend bool operator==(const AxiomInstance&, const AxiomInstance&) = default;
};

// F_k follows from F_premise and F_implication = (F_premise -> F_k).
struct ModusPonens {
  std::size_t premise;
  std::size_t implication;
  friend bool operator==(const ModusPonens&, const ModusPonens&) = default;
};

// F_k = Ax_var F_line
struct Generalization {
  std::size_t line;
  VarIndex var;
  friend bool operator==(const Generalization&, const Generalization&) = default;
};

using Justification = std::variant<AxiomInstance, ModusPonens, Generalization>;

struct ProofLine {
  Formula formula;
  Justification justification;
};

struct Proof {
  std::vector<ProofLine> lines;
  Formula target;
};

struct Verdict {
  bool valid = false;
  std::optional<std::size_t> line;  // first failing line, when a line is at fault
  std::string reason;

  explicit operator bool() const noexcept { return valid; }
};

namespace detail {

inline std::optional<std::string> check_line(std::span<const ProofLine> lines, std::size_t k) {
  const Formula& f = lines[k].formula;
  auto earlier = [&](std::size_t i) { return i < k; };
  return std::visit(
      [&](const auto& j) -> std::optional<std::string> {
        using J = std::decay_t<decltype(j)>;
        if constexpr (std::is_same_v<J, AxiomInstance>) {
          if (j.schema < kFirstSchema || j.schema > kLastSchema)
            return "no axiom schema " + std::to_string(j.schema);
          if (!is_axiom_instance(f, j.schema)) return "not an instance of axiom schema " + std::to_string(j.schema);
          return std::nullopt;
        } else if constexpr (std::is_same_v<J, ModusPonens>) {
          if (!earlier(j.premise) || !earlier(j.implication))
            return "modus ponens cites line " + std::to_string(std::max(j.premise, j.implication)) +
                   ", which is not an earlier line";
          const Formula& imp = lines[j.implication].formula;
          if (!imp.is(Formula::Kind::imp) || imp.antecedent() != lines[j.premise].formula || imp.consequent() != f)
            return "does not follow by modus ponens from lines " + std::to_string(j.premise) + " and " +
                   std::to_string(j.implication);
          return std::nullopt;
        } else {
          if (!earlier(j.line))
            return "generalization cites line " + std::to_string(j.line) + ", which is not an earlier line";
          if (!f.is(Formula::Kind::forall) || f.index() != j.var || f.body() != lines[j.line].formula)
            return "does not follow by generalization on x" + std::to_string(j.var) + " from line " +
                   std::to_string(j.line);
          return std::nullopt;
        }
      },
      lines[k].justification);
}

}  // namespace detail

// Valid iff every line is an axiom instance or follows from strictly earlier
// lines by MP or Gen, and the last line is the target.
inline Verdict check_proof(const Proof& p) {
  if (p.lines.empty()) return {false, std::nullopt, "empty proof"};
  for (std::size_t k = 0; k < p.lines.size(); ++k)
    if (auto why = detail::check_line(p.lines, k)) return {false, k, *why};
  if (p.lines.back().formula != p.target) return {false, p.lines.size() - 1, "conclusion mismatch"};
  return {true, std::nullopt, "valid"};
}

// Finds a justification for line k of a bare formula sequence (as recovered
// from a proof code, which carries no justifications).
inline std::optional<Justification> find_justification(std::span<const Formula> lines, std::size_t k) {
  const Formula& f = lines[k];
  for (int s = kFirstSchema; s <= kLastSchema; ++s)
    if (is_axiom_instance(f, s)) return AxiomInstance{s};
  if (f.is(Formula::Kind::forall))
    for (std::size_t j = 0; j < k; ++j)
      if (lines[j] == f.body()) return Generalization{j, f.index()};
  for (std::size_t j = 0; j < k; ++j) {
    const Formula& imp = lines[j];
    if (!imp.is(Formula::Kind::imp) || imp.consequent() != f) continue;
    for (std::size_t i = 0; i < k; ++i)
      if (lines[i] == imp.antecedent()) return ModusPonens{i, j};
  }
  return std::nullopt;
}

// Proof checking by search, for proofs given as a sequence of formulas.
inline Verdict check_formula_sequence(std::span<const Formula> lines, const Formula& target) {
  if (lines.empty()) return {false, std::nullopt, "empty proof"};
  for (std::size_t k = 0; k < lines.size(); ++k)
    if (!find_justification(lines, k)) return {false, k, "neither an axiom nor a consequence of earlier lines"};
  if (lines.back() != target) return {false, lines.size() - 1, "conclusion mismatch"};
  return {true, std::nullopt, "valid"};
}

inline std::vector<Code> line_codes(const Proof& p) {
  std::vector<Code> codes;
  for (const ProofLine& l : p.lines) codes.push_back(encode_formula(l.formula));
  return codes;
}

inline Decoded<Code> encode_proof(const Proof& p, const Budget& budget = {}) {
  auto codes = line_codes(p);
  return encode_proof_codes(codes, budget);
}

inline mpz_class proof_code_bitlength(const Proof& p) {
  if (p.lines.empty()) throw Error("a proof has at least one line");
  auto codes = line_codes(p);
  return proof_code_bitlength(std::span<const Code>(codes));
}

// ---------------------------------------------------------------------------
// Building proofs

// Accumulates proof lines; appending a sub-proof shifts its line references.
class ProofBuilder {
 public:
  std::size_t axiom(Formula f, int schema) { return push(std::move(f), AxiomInstance{schema}); }

  std::size_t mp(std::size_t premise, std::size_t implication) {
    Formula b = apply_mp(lines_.at(premise).formula, lines_.at(implication).formula);
    return push(std::move(b), ModusPonens{premise, implication});
  }

  std::size_t gen(std::size_t line, VarIndex k) {
    return push(apply_gen(lines_.at(line).formula, k), Generalization{line, k});
  }

  // Appends every line of p, returning the index of its last line.
  std::size_t append(const Proof& p) {
    std::size_t offset = lines_.size();
    for (const ProofLine& l : p.lines) {
      Justification j = std::visit(
          [&](auto x) -> Justification {
            using J = decltype(x);
            if constexpr (std::is_same_v<J, ModusPonens>) {
              x.premise += offset;
              x.implication += offset;
            } else if constexpr (std::is_same_v<J, Generalization>) {
              x.line += offset;
            }
            return x;
          },
          l.justification);
      lines_.push_back({l.formula, j});
    }
    return lines_.size() - 1;
  }

  const Formula& formula(std::size_t line) const { return lines_.at(line).formula; }
  std::size_t size() const { return lines_.size(); }

  // The proof of the last line.
  Proof build() const {
    if (lines_.empty()) throw Error("empty proof");
    return Proof{lines_, lines_.back().formula};
  }

 private:
  std::size_t push(Formula f, Justification j) {
    lines_.push_back({std::move(f), j});
    return lines_.size() - 1;
  }

  std::vector<ProofLine> lines_;
};

namespace detail {

inline Formula imp(Formula a, Formula b) { return Formula::imp(std::move(a), std::move(b)); }
inline Formula neg(Formula a) { return Formula::neg(std::move(a)); }

// Emits A -> A (five lines) into b; returns its line.
inline std::size_t emit_identity(ProofBuilder& b, const Formula& a) {
  Formula aa = imp(a, a);
  std::size_t l1 = b.axiom(imp(a, imp(aa, a)), 10);
  std::size_t l2 = b.axiom(imp(imp(a, imp(aa, a)), imp(imp(a, aa), aa)), 11);
  std::size_t l3 = b.mp(l1, l2);
  std::size_t l4 = b.axiom(imp(a, aa), 10);
  return b.mp(l4, l3);
}

// From lines proving P -> Q and Q -> R, emits P -> R.
inline std::size_t emit_syllogism(ProofBuilder& b, std::size_t pq, std::size_t qr) {
  Formula p = b.formula(pq).antecedent();
  Formula q = b.formula(pq).consequent();
  Formula r = b.formula(qr).consequent();
  std::size_t l1 = b.axiom(imp(imp(q, r), imp(p, imp(q, r))), 10);
  std::size_t l2 = b.mp(qr, l1);
  std::size_t l3 = b.axiom(imp(imp(p, imp(q, r)), imp(imp(p, q), imp(p, r))), 11);
  std::size_t l4 = b.mp(l2, l3);
  return b.mp(pq, l4);
}

// Emits ~~B -> B.
inline std::size_t emit_double_neg_elim(ProofBuilder& b, const Formula& x) {
  Formula nx = neg(x), nnx = neg(nx), nnnx = neg(nnx), nnnnx = neg(nnnx);
  std::size_t l1 = b.axiom(imp(nnx, imp(nnnnx, nnx)), 10);
  std::size_t l2 = b.axiom(imp(imp(nnnnx, nnx), imp(nx, nnnx)), 12);
  std::size_t l3 = emit_syllogism(b, l1, l2);  // ~~B -> (~B -> ~~~B)
  std::size_t l4 = b.axiom(imp(imp(nx, nnnx), imp(nnx, x)), 12);
  std::size_t l5 = emit_syllogism(b, l3, l4);  // ~~B -> (~~B -> B)
  Formula goal = imp(nnx, x);
  std::size_t l6 = b.axiom(imp(imp(nnx, goal), imp(imp(nnx, nnx), goal)), 11);
  std::size_t l7 = b.mp(l5, l6);
  std::size_t l8 = emit_identity(b, nnx);
  return b.mp(l8, l7);
}

}  // namespace detail

// A proof of A -> A from schemas 10 and 11.
inline Proof tautology_identity(const Formula& a) {
  ProofBuilder b;
  detail::emit_identity(b, a);
  return b.build();
}

// From a valid proof of A, a valid proof of ~~A.
inline Proof double_neg_intro(const Proof& proof_of_a) {
  ProofBuilder b;
  std::size_t a_line = b.append(proof_of_a);
  Formula a = b.formula(a_line);
  Formula na = Formula::neg(a);
  std::size_t elim = detail::emit_double_neg_elim(b, na);  // ~~~A -> ~A
  std::size_t contra =
      b.axiom(detail::imp(b.formula(elim), detail::imp(a, Formula::neg(na))), 12);  // (~~~A -> ~A) -> (A -> ~~A)
  std::size_t intro = b.mp(elim, contra);
  b.mp(a_line, intro);
  return b.build();
}

// From a valid proof of ~A, a valid proof of A -> C. Throws Error when the
// given proof does not conclude a negation.
inline Proof ex_falso(const Proof& proof_of_not_a, const Formula& c) {
  if (proof_of_not_a.lines.empty() || !proof_of_not_a.target.is(Formula::Kind::neg))
    throw Error("ex_falso: the given proof does not conclude a negation");
  ProofBuilder b;
  std::size_t na_line = b.append(proof_of_not_a);
  Formula na = b.formula(na_line);
  Formula a = na.body();
  Formula nc = Formula::neg(c);
  std::size_t w = b.axiom(detail::imp(na, detail::imp(nc, na)), 10);
  std::size_t ncna = b.mp(na_line, w);
  std::size_t contra = b.axiom(detail::imp(detail::imp(nc, na), detail::imp(a, c)), 12);
  b.mp(ncna, contra);
  return b.build();
}

// A proof of t = t for a closed or open term t: x_0 = x_0, generalize,
// instantiate by schema 14, modus ponens.
inline Proof reflexivity(const Term& t) {
  ProofBuilder b;
  Formula refl = Formula::eq(Term::var(0), Term::var(0));
  std::size_t l0 = b.axiom(refl, 16);
  std::size_t l1 = b.gen(l0, 0);
  std::size_t l2 = b.axiom(Formula::imp(b.formula(l1), Formula::eq(t, t)), 14);
  b.mp(l1, l2);
  return b.build();
}

// ---------------------------------------------------------------------------
// Proof text format, one step per line:
//   <index> | <formula> | ax<N>
//   <index> | <formula> | mp <i> <j>
//   <index> | <formula> | gen <j> x<k>
// '#' starts a comment line. The last step's formula is the target.

inline std::string format_justification(const Justification& j) {
  return std::visit(
      [](const auto& x) -> std::string {
        using J = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<J, AxiomInstance>) {
          return "ax" + std::to_string(x.schema);
        } else if constexpr (std::is_same_v<J, ModusPonens>) {
          return "mp " + std::to_string(x.premise) + " " + std::to_string(x.implication);
        } else {
          return "gen " + std::to_string(x.line) + " x" + std::to_string(x.var);
        }
      },
      j);
}

inline std::string format_proof(const Proof& p) {
  std::string out;
  for (std::size_t k = 0; k < p.lines.size(); ++k)
    out += std::to_string(k) + " | " + print_formula(p.lines[k].formula) + " | " +
           format_justification(p.lines[k].justification) + "\n";
  return out;
}

class ProofFormatError : public Error {
 public:
  ProofFormatError(std::size_t line, const std::string& msg)
      : Error("proof file line " + std::to_string(line) + ": " + msg) {}
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::size_t parse_index(const std::string& s, std::size_t file_line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw ProofFormatError(file_line, "expected a line index, got '" + s + "'");
  return std::stoull(s);
}

inline Justification parse_justification(const std::string& text, std::size_t file_line) {
  std::istringstream in(text);
  std::string head;
  in >> head;
  if (head.size() > 2 && head.rfind("ax", 0) == 0) {
    std::string n = head.substr(2);
    return AxiomInstance{static_cast<int>(parse_index(n, file_line))};
  }
  if (head == "mp") {
    std::string i, j, extra;
    in >> i >> j;
    if (in >> extra) throw ProofFormatError(file_line, "trailing text after mp");
    return ModusPonens{parse_index(i, file_line), parse_index(j, file_line)};
  }
  if (head == "gen") {
    std::string j, v, extra;
    in >> j >> v;
    if (in >> extra) throw ProofFormatError(file_line, "trailing text after gen");
    if (v.size() < 2 || v[0] != 'x') throw ProofFormatError(file_line, "gen needs a variable x<k>");
    return Generalization{parse_index(j, file_line), static_cast<VarIndex>(parse_index(v.substr(1), file_line))};
  }
  throw ProofFormatError(file_line, "unknown justification '" + text + "'");
}

}  // namespace detail

// Throws ProofFormatError or ParseError.
inline Proof parse_proof(std::istream& in) {
  std::vector<ProofLine> lines;
  std::string raw;
  std::size_t file_line = 0;
  while (std::getline(in, raw)) {
    ++file_line;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t a = line.find('|');
    std::size_t b = a == std::string::npos ? a : line.find('|', a + 1);
    if (b == std::string::npos) throw ProofFormatError(file_line, "expected '<index> | <formula> | <rule>'");
    std::size_t index = detail::parse_index(detail::trim(line.substr(0, a)), file_line);
    if (index != lines.size())
      throw ProofFormatError(file_line, "step index " + std::to_string(index) + ", expected " +
                                            std::to_string(lines.size()));
    Formula f = [&] {
      try {
        return parse_formula(line.substr(a + 1, b - a - 1));
      } catch (const ParseError& e) {
        throw ProofFormatError(file_line, e.what());
      }
    }();
    lines.push_back({f, detail::parse_justification(detail::trim(line.substr(b + 1)), file_line)});
  }
  if (lines.empty()) throw ProofFormatError(file_line, "empty proof");
  Formula target = lines.back().formula;
  return Proof{std::move(lines), std::move(target)};
}

inline Proof parse_proof(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_proof(in);
}

}  // namespace paf
