#include <gtest/gtest.h>

#include "generators.hpp"
#include "paf/bform.hpp"

using namespace paf;

namespace {

Formula P(const std::string& s) { return parse_formula(s); }
std::string X(VarIndex k) { return "x" + std::to_string(k); }

// The template written out as text, filled with printed pieces.
Formula textual_B(const Formula& a, const Formula& ay, const TemplateVars& v, const std::string& c = "0'") {
  std::string x = X(v.x), y = X(v.y);
  std::string neq = "(A" + X(v.u) + ".~(" + y + "=" + x + "+" + X(v.u) + "+" + c + "))->~A" + X(v.v) + ".~(" + x +
                    "=" + y + "+" + X(v.v) + "+" + c + ")";
  std::string gt = "~A" + X(v.w) + ".~(" + y + "=" + x + "+" + X(v.w) + "+" + c + ")";
  return P("~A" + x + ".((" + print_formula(a) + ")->~A" + y + ".((" + print_formula(ay) + ")->((" + neq + ")->" +
           gt + ")))");
}

// Proof of the step-3 instance for a = ~(x0=x0): 0^(n)=0^(n), double
// negation, ex falso.
Proof instance_proof(const BRecognition& rec, std::size_t n) {
  Proof refl = reflexivity(numeral(n));
  return ex_falso(double_neg_intro(refl), build_negB_instance(rec, n).consequent());
}

const TemplateVars kV{0, 1, 2, 3, 4};

}  // namespace

TEST(BuildB, MatchesTextTemplate) {
  Formula a = P("x0=x0+0");
  EXPECT_EQ(build_B(a, kV), textual_B(a, P("x1=x1+0"), kV));
  EXPECT_EQ(build_B(a, kV, {Offset::zero}), textual_B(a, P("x1=x1+0"), kV, "0"));
  Formula inner = build_B(a, kV, {}, true);
  EXPECT_EQ(Formula::neg(Formula::forall(0, inner.body())), build_B(a, kV));
}

TEST(BuildB, Collisions) {
  EXPECT_THROW(build_B(P("x0=x1"), kV), VariableCollision);            // y occurs in A
  EXPECT_THROW(build_B(P("x0=x0"), {0, 1, 2, 2, 4}), VariableCollision);  // not distinct
  EXPECT_THROW(build_B(P("x0=x3"), kV), VariableCollision);            // v occurs in A
}

TEST(ComparisonCopy, ShiftsBoundVariables) {
  // the bound x1 moves with x0 -> x2; the free x5 stays
  EXPECT_EQ(comparison_copy(P("Ax1.(x0=x1+x5)"), 0, 2), P("Ax3.(x2=x3+x5)"));
  EXPECT_THROW(comparison_copy(P("Ax1.(x0=x1+x3)"), 0, 2), VariableCollision);
  gen::Gen g(21);
  for (int i = 0; i < 200; ++i) {
    Term s = g.term(3), t = g.term(3);
    Formula qf = Formula::eq(s, t);
    EXPECT_EQ(comparison_copy(qf, 2, 9), substitute(qf, 2, Term::var(9)));
  }
}

TEST(Recognize, Examples) {
  Formula a = P("x0=x0+0");
  auto rec = recognize_B(build_B(a, kV));
  ASSERT_TRUE(rec);
  EXPECT_EQ(rec->body, a);
  EXPECT_EQ(rec->vars, kV);

  // the y>x and y!=x clauses swapped
  Formula neq = mk_neq(Term::var(1), Term::var(0), 2, 3), gt = mk_gt(Term::var(1), Term::var(0), 4);
  Formula swapped = Formula::neg(Formula::forall(
      0, Formula::imp(a, Formula::neg(Formula::forall(1, Formula::imp(P("x1=x1+0"), Formula::imp(gt, neq)))))));
  EXPECT_FALSE(recognize_B(swapped));
  EXPECT_FALSE(recognize_B(P("0=0")));
  // an equivalent form with an explicit conjunction is not the template either
  EXPECT_FALSE(recognize_B(Formula::neg(Formula::forall(0, Formula::neg(mk_and(a, P("0=0")))))));
  // built with one offset, read with the other
  EXPECT_FALSE(recognize_B(build_B(a, kV), {Offset::zero}));
}

TEST(Property, RecognizeInvertsBuild) {
  gen::Gen g(22);
  int recognized = 0;
  for (int i = 0; i < 300; ++i) {
    Formula a = g.formula(1 + i % 6);
    VarIndex m = max_var(a).value_or(0);
    VarIndex x = g.var();
    VarIndex top = std::max(m, x);
    VarIndex y = x + top + 1;  // shift past every index, so no capture
    TemplateVars v{x, y, 2 * top + y + 1, 2 * top + y + 2, 2 * top + y + 3};
    Formula b = build_B(a, v, {i % 2 ? Offset::one : Offset::zero});
    auto rec = recognize_B(b, {i % 2 ? Offset::one : Offset::zero});
    ASSERT_TRUE(rec) << print_formula(b);
    ASSERT_EQ(rec->body, a);
    ASSERT_EQ(rec->vars, v);
    EXPECT_EQ(b, textual_B(a, comparison_copy(a, x, y), v, i % 2 ? "0'" : "0"));
    ++recognized;
  }
  EXPECT_GE(recognized, 200);
}

TEST(Instance, Examples) {
  auto rec = recognize_B(build_B(P("~(x0=x0)"), kV));
  ASSERT_TRUE(rec);
  Formula i2 = build_negB_instance(*rec, 2);
  EXPECT_EQ(i2, P("(~(0''=0''))->~Ax1.((~(x1=x1))->(((Ax2.~(x1=0''+x2+0'))->~Ax3.~(0''=x1+x3+0'))->~Ax4.~(x1=0''+x4+0')))"));
  // equal to ~B_A(0'') once ~(P->~Q) is unfolded: B_A(n) = ~(A(n) -> ~Ay...)
  Formula inner = build_B(rec->body, rec->vars, {}, true);
  EXPECT_EQ(Formula::neg(i2), substitute(inner, 0, numeral(2)));
  Formula i0 = build_negB_instance(*rec, 0);
  EXPECT_EQ(i0.antecedent(), P("~(0=0)"));
  EXPECT_FALSE(recognize_B(i2));
}

TEST(DecideR, TrueCase) {
  Formula b = build_B(P("~(x0=x0)"), kV);
  Code l = encode_formula(b);
  auto rec = recognize_B(b);
  for (std::size_t n : {0u, 1u, 2u, 5u}) {
    Proof m = instance_proof(*rec, n);
    ASSERT_TRUE(check_proof(m));
    RTrace t = decide_r(l, m, n);
    EXPECT_TRUE(t.verdict) << format_trace(t);
    EXPECT_EQ(t.reached, 3);
    // cross-check with the components run separately
    auto decoded = decode_formula(l);
    ASSERT_TRUE(decoded);
    auto rec2 = recognize_B(decoded.value());
    ASSERT_TRUE(rec2);
    EXPECT_EQ(m.target, build_negB_instance(*rec2, n));
    // the same proof as a bare formula sequence
    std::vector<Formula> fs;
    for (const ProofLine& pl : m.lines) fs.push_back(pl.formula);
    EXPECT_TRUE(decide_r(b, fs, n).verdict);
  }
}

TEST(DecideR, Rejections) {
  Formula b = build_B(P("~(x0=x0)"), kV);
  auto rec = recognize_B(b);
  Proof m = instance_proof(*rec, 2);

  RTrace t1 = decide_r(Code(std::uint64_t{10}), m, 2);
  EXPECT_FALSE(t1.verdict);
  EXPECT_EQ(t1.reached, 1);

  RTrace t2 = decide_r(encode_formula(P("0=0")), m, 2);
  EXPECT_FALSE(t2.verdict);
  EXPECT_EQ(t2.reached, 2);

  // a valid proof, but of the instance for another n
  RTrace t3 = decide_r(encode_formula(b), m, 3);
  EXPECT_FALSE(t3.verdict);
  EXPECT_EQ(t3.reached, 3);
  EXPECT_NE(t3.steps.back().detail.find("conclusion mismatch"), std::string::npos);

  // a valid proof of a different formula altogether
  RTrace t4 = decide_r(b, reflexivity(numeral(2)), 2);
  EXPECT_FALSE(t4.verdict);
  EXPECT_EQ(t4.reached, 3);

  // m given as a code that is not a proof code
  RTrace t5 = decide_r(b, Code(std::uint64_t{10}), 2);
  EXPECT_FALSE(t5.verdict);
  EXPECT_EQ(t5.reached, 3);
  EXPECT_FALSE(t5.budget_exceeded);
}

TEST(DecideR, Budget) {
  Formula b = build_B(P("~(x0=x0)"), kV);
  RTrace t = decide_r(encode_formula(b), Code(std::uint64_t{10}), 2, Budget{64, 2000});
  EXPECT_FALSE(t.verdict);
  EXPECT_TRUE(t.budget_exceeded);
  EXPECT_EQ(t.reached, 1);
  EXPECT_NE(format_trace(t).find("verdict: budget-exceeded"), std::string::npos);
}

TEST(DecideR, Deterministic) {
  Formula b = build_B(P("~(x0=x0)"), kV);
  auto rec = recognize_B(b);
  Proof m = instance_proof(*rec, 1);
  EXPECT_EQ(format_trace(decide_r(b, m, 1)), format_trace(decide_r(encode_formula(b), m, 1)));
}
