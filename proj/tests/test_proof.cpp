#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "paf/proof.hpp"

using namespace paf;

namespace {

Formula P(const char* s) { return parse_formula(s); }

// The 4-line proof of 0''=0'' (0-based indices).
Proof succ2() {
  ProofBuilder b;
  b.axiom(P("x0=x0"), 16);
  b.gen(0, 0);
  b.axiom(P("(Ax0.(x0=x0))->(0''=0'')"), 14);
  b.mp(1, 2);
  return b.build();
}

Proof without(const Proof& p, std::size_t line) {
  Proof q = p;
  q.lines.erase(q.lines.begin() + static_cast<std::ptrdiff_t>(line));
  return q;
}

Proof swapped(const Proof& p, std::size_t i, std::size_t j) {
  Proof q = p;
  std::swap(q.lines[i], q.lines[j]);
  return q;
}

std::size_t fails_at(const Proof& p) {
  Verdict v = check_proof(p);
  EXPECT_FALSE(v.valid);
  return v.line.value_or(static_cast<std::size_t>(-1));
}

bool one_symbol_apart(const Formula& a, const Formula& b) {
  SymbolString x = flatten(a), y = flatten(b);
  if (x.size() != y.size()) return false;
  int diff = 0;
  for (std::size_t i = 0; i < x.size(); ++i) diff += x[i] == y[i] ? 0 : 1;
  return diff == 1;
}

}  // namespace

TEST(Axioms, Examples) {
  EXPECT_EQ(match_axiom(P("0!=0'")), std::vector<int>{26});
  EXPECT_EQ(match_axiom(P("(x0')! = x0' * x0!")), std::vector<int>{27});
  EXPECT_EQ(match_axiom(P("x3=x3")), std::vector<int>{16});
  EXPECT_TRUE(match_axiom(P("0=0")).empty());
}

struct SchemaCase {
  int schema;
  const char* positive;
  const char* near_miss;
};

const SchemaCase kCases[] = {
    {10, "(x2=0)->((x1=0)->(x2=0))", "(x2=0)->((x1=0)->(x3=0))"},
    {11, "((x0=0)->((x1=0)->(x2=0)))->(((x0=0)->(x1=0))->((x0=0)->(x2=0)))",
     "((x0=0)->((x1=0)->(x2=0)))->(((x0=0)->(x1=0))->((x0=0)->(x3=0)))"},
    {12, "(~(x0=0)->~(x1=0))->((x1=0)->(x0=0))", "(~(x0=0)->~(x1=0))->((x1=0)->(x2=0))"},
    {13, "(Ax1.(x0=0))->(x0=0)", "(Ax1.(x0=0))->(x2=0)"},
    {14, "(Ax0.(x0=x1))->(0''=x1)", "(Ax0.(x0=x1))->(0''=x2)"},
    {15, "(Ax1.((x0=0)->(x1=0)))->((x0=0)->Ax1.(x1=0))", "(Ax1.((x1=0)->(x1=0)))->((x0=0)->Ax1.(x1=0))"},
    {16, "x3=x3", "x3=x4"},
    {17, "(x0=x1)->(x1=x0)", "(x0=x1)->(x1=x2)"},
    {18, "(x0=x1)->((x0=x2)->(x1=x2))", "(x0=x1)->((x0=x2)->(x1=x3))"},
    {19, "(x0=x1)->(x0'=x1')", "(x0=x1)->(x0'=x2')"},
    {20, "~(x0'=0)", "~(x0'=x0)"},
    {21, "(x0'=x1')->(x0=x1)", "(x0'=x1')->(x0=x2)"},
    {22, "x0+0=x0", "x0+0=x1"},
    {23, "x0+x1'=(x0+x1)'", "x0+x1'=(x0+x2)'"},
    {24, "x0*0=0", "x0*0=x0"},
    {25, "x0*x1'=x0*x1+x0", "x0*x1'=x0*x1+x1"},
    {26, "0!=0'", "0!=0!"},
    {27, "(x0')!=x0'*x0!", "(x0')!=x0'*x1!"},
    {28, "~((0=x1)->~Ax0.((x0=x1)->(x0'=x1)))->(x0=x1)", "~((0=x1)->~Ax0.((x0=x1)->(x0'=x1)))->(x0=x2)"},
};

TEST(Axioms, PositiveAndNearMissPerSchema) {
  for (int s = kFirstSchema; s <= kLastSchema; ++s) {
    const SchemaCase& c = kCases[s - kFirstSchema];
    ASSERT_EQ(c.schema, s);
    Formula pos = P(c.positive), neg = P(c.near_miss);
    EXPECT_TRUE(is_axiom_instance(pos, s)) << s;
    EXPECT_FALSE(is_axiom_instance(neg, s)) << s;
    EXPECT_TRUE(one_symbol_apart(pos, neg)) << s;
  }
}

TEST(Axioms, Schema14CaptureRejected) {
  // t = x1 is not free for x0 in Ax1.(x0=x1)
  EXPECT_FALSE(is_axiom_instance(P("(Ax0.Ax1.(x0=x1))->(Ax1.(x1=x1))"), 14));
  EXPECT_TRUE(is_axiom_instance(P("(Ax0.Ax1.(x0=x1))->(Ax1.(x2=x1))"), 14));
  // x0 not free in the body: that is schema 13, not 14
  EXPECT_FALSE(is_axiom_instance(P("(Ax0.(0=0))->(0=0)"), 14));
  EXPECT_TRUE(is_axiom_instance(P("(Ax0.(0=0))->(0=0)"), 13));
}

TEST(Axioms, Schema15SideCondition) {
  EXPECT_FALSE(is_axiom_instance(P("(Ax1.((x1=0)->(x1=0)))->((x1=0)->Ax1.(x1=0))"), 15));
}

TEST(Property, VariableSchemasClosedUnderIndexChoice) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    VarIndex i = static_cast<VarIndex>(d(rng)), j, k;
    do j = static_cast<VarIndex>(d(rng)); while (j == i);
    do k = static_cast<VarIndex>(d(rng)); while (k == i || k == j);
    Term xi = Term::var(i), xj = Term::var(j), xk = Term::var(k), z = Term::zero();
    auto eq = Formula::eq;
    auto imp = Formula::imp;
    auto s = Term::succ;
    const std::pair<int, Formula> inst[] = {
        {16, eq(xk, xk)},
        {17, imp(eq(xi, xj), eq(xj, xi))},
        {18, imp(eq(xi, xj), imp(eq(xi, xk), eq(xj, xk)))},
        {19, imp(eq(xi, xj), eq(s(xi), s(xj)))},
        {20, Formula::neg(eq(s(xk), z))},
        {21, imp(eq(s(xi), s(xj)), eq(xi, xj))},
        {22, eq(Term::add(xk, z), xk)},
        {23, eq(Term::add(xi, s(xj)), s(Term::add(xi, xj)))},
        {24, eq(Term::mul(xk, z), z)},
        {25, eq(Term::mul(xi, s(xj)), Term::add(Term::mul(xi, xj), xi))},
        {26, eq(Term::fact(z), s(z))},
        {27, eq(Term::fact(s(xk)), Term::mul(s(xk), Term::fact(xk)))},
    };
    for (const auto& [id, f] : inst) {
      auto ids = match_axiom(f);
      EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id << " " << print_formula(f);
    }
  }
}

TEST(Rules, ModusPonens) {
  EXPECT_EQ(apply_mp(P("0=0"), P("(0=0)->(0'=0')")), P("0'=0'"));
  EXPECT_THROW(apply_mp(P("0=0"), P("0=0")), Error);
  EXPECT_THROW(apply_mp(P("0=0"), P("(0'=0')->(0=0)")), Error);
  EXPECT_EQ(apply_gen(P("x0=x0"), 0), P("Ax0.(x0=x0)"));
}

TEST(Check, FourLineProof) {
  Proof p = succ2();
  EXPECT_TRUE(check_proof(p));
  // lines 3,4 (1-based) swapped: the MP line now cites itself
  EXPECT_EQ(fails_at(swapped(p, 2, 3)), 2u);
  Proof wrong = p;
  wrong.target = P("0'=0'");
  Verdict v = check_proof(wrong);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.reason, "conclusion mismatch");
  EXPECT_FALSE(check_proof(Proof{{}, P("0=0")}));
}

// Documented failure lines for single deletions and adjacent swaps.
TEST(Check, FourLineProofMutations) {
  Proof p = succ2();
  EXPECT_EQ(fails_at(without(p, 0)), 0u);  // gen cites itself
  EXPECT_EQ(fails_at(without(p, 1)), 2u);  // mp cites itself
  EXPECT_EQ(fails_at(without(p, 2)), 2u);  // mp cites itself
  EXPECT_EQ(fails_at(without(p, 3)), 2u);  // conclusion mismatch
  EXPECT_EQ(fails_at(swapped(p, 0, 1)), 0u);
  EXPECT_EQ(fails_at(swapped(p, 1, 2)), 3u);  // gen still valid, mp premises now wrong
  EXPECT_EQ(fails_at(swapped(p, 2, 3)), 2u);
}

TEST(Macros, Identity) {
  Proof p = tautology_identity(P("0=0"));
  EXPECT_EQ(p.lines.size(), 5u);
  EXPECT_EQ(p.target, P("(0=0)->(0=0)"));
  EXPECT_TRUE(check_proof(p));
  EXPECT_EQ(fails_at(without(p, 0)), 1u);
  EXPECT_EQ(fails_at(without(p, 1)), 1u);
  EXPECT_EQ(fails_at(without(p, 2)), 3u);
  EXPECT_EQ(fails_at(without(p, 3)), 3u);
  EXPECT_EQ(fails_at(without(p, 4)), 3u);
  EXPECT_EQ(fails_at(swapped(p, 0, 1)), 2u);
  EXPECT_EQ(fails_at(swapped(p, 2, 3)), 4u);
  EXPECT_EQ(fails_at(swapped(p, 3, 4)), 3u);
}

TEST(Macros, DoubleNegation) {
  Proof p = double_neg_intro(succ2());
  EXPECT_EQ(p.target, P("~~(0''=0'')"));
  Verdict v = check_proof(p);
  EXPECT_TRUE(v) << v.reason;
  std::size_t n = p.lines.size();
  EXPECT_EQ(fails_at(without(p, n - 1)), n - 2);
  EXPECT_EQ(fails_at(swapped(p, n - 2, n - 1)), n - 2);
  EXPECT_EQ(fails_at(without(p, 0)), 0u);
}

TEST(Macros, ExFalso) {
  Proof nn = double_neg_intro(succ2());
  Formula c = P("x5=0");
  Proof p = ex_falso(nn, c);
  EXPECT_EQ(p.target, Formula::imp(P("~(0''=0'')"), c));
  EXPECT_TRUE(check_proof(p));
  std::size_t n = p.lines.size();
  EXPECT_EQ(fails_at(without(p, n - 1)), n - 2);
  EXPECT_EQ(fails_at(swapped(p, n - 2, n - 1)), n - 2);
  // the precondition: the given proof must conclude a negation
  EXPECT_THROW(ex_falso(succ2(), c), Error);
}

TEST(Macros, Reflexivity) {
  Proof p = reflexivity(P("0=(0''')!").right());
  EXPECT_TRUE(check_proof(p));
  EXPECT_EQ(p.target, P("(0''')!=(0''')!"));
}

TEST(Property, PrefixesAreProofs) {
  for (const Proof& p : {succ2(), double_neg_intro(succ2()), ex_falso(double_neg_intro(succ2()), P("0=0"))}) {
    for (std::size_t k = 1; k <= p.lines.size(); ++k) {
      Proof q{std::vector<ProofLine>(p.lines.begin(), p.lines.begin() + static_cast<std::ptrdiff_t>(k)),
              p.lines[k - 1].formula};
      ASSERT_TRUE(check_proof(q)) << k;
    }
  }
}

TEST(Sequence, SearchFindsJustifications) {
  Proof p = double_neg_intro(succ2());
  std::vector<Formula> fs;
  for (const ProofLine& l : p.lines) fs.push_back(l.formula);
  EXPECT_TRUE(check_formula_sequence(fs, p.target));
  std::vector<Formula> bad{P("0=0")};
  Verdict v = check_formula_sequence(bad, P("0=0"));
  EXPECT_FALSE(v);
  EXPECT_EQ(v.line, 0u);
}

TEST(Format, RoundTrip) {
  for (const Proof& p : {succ2(), tautology_identity(P("0=0")), ex_falso(double_neg_intro(succ2()), P("0=0"))}) {
    Proof q = parse_proof(format_proof(p));
    ASSERT_EQ(q.lines.size(), p.lines.size());
    EXPECT_EQ(q.target, p.target);
    for (std::size_t i = 0; i < p.lines.size(); ++i) {
      EXPECT_EQ(q.lines[i].formula, p.lines[i].formula);
      EXPECT_EQ(format_justification(q.lines[i].justification), format_justification(p.lines[i].justification));
    }
  }
}

TEST(Format, SampleFile) {
  std::ifstream in(PAF_SAMPLES_DIR "/succ2.proof");
  ASSERT_TRUE(in);
  Proof p = parse_proof(in);
  EXPECT_TRUE(check_proof(p));
  EXPECT_EQ(p.target, P("0''=0''"));
}

TEST(Format, Errors) {
  EXPECT_THROW(parse_proof("0 | 0=0"), ProofFormatError);
  EXPECT_THROW(parse_proof("1 | 0=0 | ax16"), ProofFormatError);
  EXPECT_THROW(parse_proof("0 | 0=0 | rule"), ProofFormatError);
  EXPECT_THROW(parse_proof("0 | 0== | ax16"), ProofFormatError);
  EXPECT_THROW(parse_proof("# nothing\n"), ProofFormatError);
}

TEST(ProofCode, BitLength) {
  Proof one{{{P("0=0"), AxiomInstance{16}}}, P("0=0")};
  EXPECT_EQ(proof_code_bitlength(one).get_str(), "1162261467000000000");
  EXPECT_FALSE(encode_proof(one));
}
