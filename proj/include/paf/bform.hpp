// Standard-form B-formulas and the decision procedure for r(l, m, n).
//
// For a formula A with distinguished variable x, the B-formula is
//
//   ~Ax(A(x) -> ~Ay(A(y) -> ((y != x) -> (y > x))))
//
// with != and > expanded by mk_neq / mk_gt. Only this exact shape counts;
// logically equivalent variants are not B-formulas.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "paf/godel.hpp"
#include "paf/proof.hpp"
#include "paf/syntax.hpp"

namespace paf {

// The five template variables: x is the distinguished variable of A, y the
// variable of the comparison copy, u, v, w the witnesses of != and >.
struct TemplateVars {
  VarIndex x = 0;
  VarIndex y = 0;
  VarIndex u = 0;
  VarIndex v = 0;
  VarIndex w = 0;

  friend bool operator==(const TemplateVars&, const TemplateVars&) = default;
};

struct BOptions {
  Offset offset = Offset::one;
};

struct BRecognition {
  Formula body;  // A(x)
  TemplateVars vars;
};

// A(y): x renamed to y and every bound variable shifted by y - x, so that
// the copy is an alphabetic variant of A[x := y] whose variables all move
// together. Free variables other than x are left in place. Throws
// VariableCollision when a shifted binder would go negative or capture one of
// those free variables.
inline Formula comparison_copy(const Formula& a, VarIndex x, VarIndex y) {
  const std::int64_t shift = static_cast<std::int64_t>(y) - static_cast<std::int64_t>(x);
  auto moved = [&](VarIndex i) {
    std::int64_t j = static_cast<std::int64_t>(i) + shift;
    if (j < 0 || j > UINT32_MAX)
      throw VariableCollision("shifting x" + std::to_string(i) + " by " + std::to_string(shift) + " leaves the index range");
    return static_cast<VarIndex>(j);
  };

  struct Copier {
    VarIndex x, y;
    decltype(moved)& move;
    std::multiset<VarIndex> bound;

    Term term(const Term& t) {
      return rename_vars(t, [&](VarIndex i) {
        if (bound.contains(i)) return move(i);
        return i == x ? y : i;
      });
    }
    Formula formula(const Formula& f) {
      switch (f.kind()) {
        case Formula::Kind::eq: return Formula::eq(term(f.left()), term(f.right()));
        case Formula::Kind::neg: return Formula::neg(formula(f.body()));
        case Formula::Kind::imp: return Formula::imp(formula(f.antecedent()), formula(f.consequent()));
        case Formula::Kind::forall: {
          auto it = bound.insert(f.index());
          Formula body = formula(f.body());
          bound.erase(it);
          return Formula::forall(move(f.index()), std::move(body));
        }
      }
      return f;
    }
  };

  Copier copier{x, y, moved, {}};
  Formula copy = copier.formula(a);

  std::set<VarIndex> expected = free_vars(a);
  if (expected.erase(x) > 0) expected.insert(y);
  if (free_vars(copy) != expected)
    throw VariableCollision("renaming x" + std::to_string(x) + " to x" + std::to_string(y) + " captures a variable");
  return copy;
}

namespace detail {

inline void require_distinct(const TemplateVars& v) {
  VarIndex all[] = {v.x, v.y, v.u, v.v, v.w};
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (all[i] == all[j]) throw VariableCollision("template variables must be pairwise distinct");
}

// A(x) -> ~Ay(A(y) -> ((y != x) -> (y > x)))
inline Formula b_implication(const Formula& a, const TemplateVars& v, const BOptions& opts) {
  require_distinct(v);
  std::set<VarIndex> used = all_vars(a);
  for (VarIndex aux : {v.y, v.u, v.v, v.w})
    if (used.contains(aux)) throw VariableCollision("auxiliary variable x" + std::to_string(aux) + " occurs in A");
  Formula copy = comparison_copy(a, v.x, v.y);
  std::set<VarIndex> copy_vars = all_vars(copy);
  for (VarIndex aux : {v.u, v.v, v.w})
    if (copy_vars.contains(aux))
      throw VariableCollision("auxiliary variable x" + std::to_string(aux) + " occurs in A(y)");
  Term x = Term::var(v.x), y = Term::var(v.y);
  Formula compare = Formula::imp(mk_neq(y, x, v.u, v.v, opts.offset), mk_gt(y, x, v.w, opts.offset));
  return Formula::imp(a, Formula::neg(Formula::forall(v.y, Formula::imp(copy, compare))));
}

}  // namespace detail

// The B-formula ExB_A(x) for body a. With `inner`, the unquantified B_A(x)
// itself, i.e. A(x) /\ Ay(...). Throws VariableCollision.
inline Formula build_B(const Formula& a, const TemplateVars& vars, const BOptions& opts = {}, bool inner = false) {
  Formula imp = detail::b_implication(a, vars, opts);
  if (inner) return Formula::neg(imp);
  return Formula::neg(Formula::forall(vars.x, imp));
}

// Template variables for a body: x as given, the rest the next unused indices.
inline TemplateVars fresh_template_vars(const Formula& a, VarIndex x) {
  VarIndex next = std::max<VarIndex>(x, max_var(a).value_or(0)) + 1;
  return TemplateVars{x, next, next + 1, next + 2, next + 3};
}

// Succeeds exactly when f is build_B(body, vars, opts) for some body and vars.
inline std::optional<BRecognition> recognize_B(const Formula& f, const BOptions& opts = {}) {
  using K = Formula::Kind;
  if (!f.is(K::neg) || !f.body().is(K::forall)) return std::nullopt;
  Formula outer = f.body();
  Formula imp = outer.body();
  if (!imp.is(K::imp)) return std::nullopt;
  Formula rest = imp.consequent();
  if (!rest.is(K::neg) || !rest.body().is(K::forall)) return std::nullopt;
  Formula inner = rest.body();
  if (!inner.body().is(K::imp)) return std::nullopt;
  Formula compare = inner.body().consequent();
  if (!compare.is(K::imp)) return std::nullopt;
  Formula neq = compare.antecedent(), gt = compare.consequent();
  if (!neq.is(K::imp) || !neq.antecedent().is(K::forall) || !neq.consequent().is(K::neg) ||
      !neq.consequent().body().is(K::forall))
    return std::nullopt;
  if (!gt.is(K::neg) || !gt.body().is(K::forall)) return std::nullopt;

  TemplateVars vars{outer.index(), inner.index(), neq.antecedent().index(), neq.consequent().body().index(),
                    gt.body().index()};
  Formula body = imp.antecedent();
  try {
    if (build_B(body, vars, opts) != f) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return BRecognition{body, vars};
}

// The formula whose proof witnesses that n is not the least solution of A:
//   A(0^(n)) -> ~Ay(A(y) -> ((y != 0^(n)) -> (y > 0^(n))))
// i.e. ~B_A(0^(n)) with the double negation of the conjunction removed.
inline Formula build_negB_instance(const BRecognition& rec, std::size_t n, const BOptions& opts = {}) {
  Formula imp = detail::b_implication(rec.body, rec.vars, opts);
  return substitute(imp, rec.vars.x, numeral(n));
}

// ---------------------------------------------------------------------------
// r(l, m, n)

using LArgument = std::variant<Code, Formula>;
// A proof code, a justified proof (its own target is ignored), or a bare
// formula sequence.
using MArgument = std::variant<Code, Proof, std::vector<Formula>>;

struct RStep {
  int step;
  enum class Status : std::uint8_t { pass, fail, budget } status;
  std::string detail;
};

struct RTrace {
  bool verdict = false;
  bool budget_exceeded = false;
  int reached = 0;  // last step attempted (1..3)
  std::vector<RStep> steps;
};

inline const char* to_string(RStep::Status s) {
  switch (s) {
    case RStep::Status::pass: return "pass";
    case RStep::Status::fail: return "fail";
    case RStep::Status::budget: return "budget";
  }
  return "?";
}

// Line-oriented trace: one "step <i> <status>: <detail>" per step, then
// "reached: <i>" and "verdict: true|false|budget-exceeded".
inline std::string format_trace(const RTrace& t) {
  std::string out;
  for (const RStep& s : t.steps)
    out += "step " + std::to_string(s.step) + " " + to_string(s.status) + ": " + s.detail + "\n";
  out += "reached: " + std::to_string(t.reached) + "\n";
  out += std::string("verdict: ") + (t.budget_exceeded ? "budget-exceeded" : t.verdict ? "true" : "false") + "\n";
  return out;
}

// Decides r(l, m, n): (1) l is the code of a formula F, (2) F is a
// standard-form B-formula, (3) m is a proof of the instance formula for n.
inline RTrace decide_r(const LArgument& l, const MArgument& m, std::size_t n, const Budget& budget = {},
                       const BOptions& opts = {}) {
  RTrace trace;
  auto record = [&](int step, RStep::Status st, std::string detail) {
    trace.reached = step;
    trace.steps.push_back({step, st, std::move(detail)});
    if (st == RStep::Status::budget) trace.budget_exceeded = true;
  };

  // (1)
  std::optional<Formula> f;
  if (const Code* code = std::get_if<Code>(&l)) {
    auto decoded = decode_formula(*code, budget);
    if (!decoded) {
      bool over = decoded.rejection().kind == Rejection::Kind::budget_exceeded;
      record(1, over ? RStep::Status::budget : RStep::Status::fail,
             std::string(to_string(decoded.rejection().kind)) + ": " + decoded.rejection().reason);
      return trace;
    }
    f = decoded.value();
  } else {
    f = std::get<Formula>(l);
  }
  record(1, RStep::Status::pass, "l is the code of " + print_formula(*f));

  // (2)
  auto rec = recognize_B(*f, opts);
  if (!rec) {
    record(2, RStep::Status::fail, "not a standard-form B-formula");
    return trace;
  }
  record(2, RStep::Status::pass,
         "B-formula with x=x" + std::to_string(rec->vars.x) + " y=x" + std::to_string(rec->vars.y) + " u=x" +
             std::to_string(rec->vars.u) + " v=x" + std::to_string(rec->vars.v) + " w=x" +
             std::to_string(rec->vars.w));

  // (3)
  Formula instance = build_negB_instance(*rec, n, opts);
  Verdict v;
  if (const Code* code = std::get_if<Code>(&m)) {
    auto lines = decode_proof_code(*code, budget);
    if (!lines) {
      bool over = lines.rejection().kind == Rejection::Kind::budget_exceeded;
      record(3, over ? RStep::Status::budget : RStep::Status::fail,
             std::string("m: ") + to_string(lines.rejection().kind) + ": " + lines.rejection().reason);
      return trace;
    }
    v = check_formula_sequence(lines.value(), instance);
  } else if (const Proof* p = std::get_if<Proof>(&m)) {
    v = check_proof(Proof{p->lines, instance});
  } else {
    v = check_formula_sequence(std::get<std::vector<Formula>>(m), instance);
  }
  if (!v) {
    std::string where = v.line ? "line " + std::to_string(*v.line) + ": " : "";
    record(3, RStep::Status::fail, "m is not a proof of the instance for n=" + std::to_string(n) + " (" + where +
                                       v.reason + ")");
    return trace;
  }
  record(3, RStep::Status::pass, "m proves " + print_formula(instance));
  trace.verdict = true;
  return trace;
}

}  // namespace paf
