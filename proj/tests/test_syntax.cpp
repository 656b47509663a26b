#include <gtest/gtest.h>

#include <set>

#include "generators.hpp"
#include "paf/syntax.hpp"

using namespace paf;

namespace {

Term v(VarIndex k) { return Term::var(k); }

std::vector<std::uint64_t> codes(const Formula& f) {
  std::vector<std::uint64_t> out;
  for (Symbol s : flatten(f)) out.push_back(symbol_code(s));
  return out;
}

// Free variables computed by a second, independent walk (explicit scope set
// instead of the library's multiset).
void oracle_free(const Term& t, const std::set<VarIndex>& bound, std::set<VarIndex>& out) {
  switch (t.kind()) {
    case Term::Kind::zero: return;
    case Term::Kind::var:
      if (!bound.count(t.index())) out.insert(t.index());
      return;
    case Term::Kind::succ:
    case Term::Kind::fact: oracle_free(t.arg(), bound, out); return;
    default:
      oracle_free(t.lhs(), bound, out);
      oracle_free(t.rhs(), bound, out);
  }
}

void oracle_free(const Formula& f, std::set<VarIndex> bound, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case Formula::Kind::eq:
      oracle_free(f.left(), bound, out);
      oracle_free(f.right(), bound, out);
      return;
    case Formula::Kind::neg: oracle_free(f.body(), bound, out); return;
    case Formula::Kind::imp:
      oracle_free(f.antecedent(), bound, out);
      oracle_free(f.consequent(), bound, out);
      return;
    case Formula::Kind::forall:
      bound.insert(f.index());
      oracle_free(f.body(), bound, out);
  }
}

bool only_core_nodes(const Formula& f) {
  // Trivially true by construction; the check walks every node anyway so a
  // new constructor would have to be handled here.
  switch (f.kind()) {
    case Formula::Kind::eq: return true;
    case Formula::Kind::neg:
    case Formula::Kind::forall: return only_core_nodes(f.body());
    case Formula::Kind::imp: return only_core_nodes(f.antecedent()) && only_core_nodes(f.consequent());
  }
  return false;
}

}  // namespace

TEST(Symbols, FixedCodes) {
  using K = Symbol::Kind;
  const std::pair<K, std::uint64_t> table[] = {{K::lparen, 3}, {K::rparen, 5}, {K::comma, 7},  {K::zero, 9},
                                               {K::succ, 11},  {K::plus, 13},  {K::times, 15}, {K::fact, 17},
                                               {K::equals, 19}, {K::neg, 21},  {K::imp, 23},   {K::forall, 25}};
  for (auto [k, c] : table) {
    EXPECT_EQ(symbol_code(Symbol::of(k)), c);
    EXPECT_EQ(symbol_from_code(c), Symbol::of(k));
  }
  for (VarIndex k = 0; k <= 100; ++k) EXPECT_EQ(symbol_code(Symbol::variable(k)), 2u * k + 27);
  EXPECT_FALSE(symbol_from_code(1));
  EXPECT_FALSE(symbol_from_code(10));
}

TEST(Parse, Examples) {
  EXPECT_EQ(parse_formula("0=0"), Formula::eq(Term::zero(), Term::zero()));
  EXPECT_EQ(parse_formula("~Ax0.~(x0=x0)"), Formula::neg(Formula::forall(0, Formula::neg(Formula::eq(v(0), v(0))))));
  EXPECT_EQ(parse_formula("(0''')! = x2+x3+0"),
            Formula::eq(Term::fact(numeral(3)), Term::add(Term::add(v(2), v(3)), Term::zero())));
  EXPECT_EQ(dump(parse_formula("~Ax0.~(x0=x0)")), "Not(Forall(0, Not(Eq(Var(0), Var(0)))))");
}

TEST(Parse, UnicodeAliases) {
  EXPECT_EQ(parse_formula("¬∀x1(x1×0=0)→(0=0)"), parse_formula("(~Ax1.(x1*0=0))->(0=0)"));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula("0=0)"), ParseError);
  EXPECT_THROW(parse_formula("(0=0"), ParseError);
  EXPECT_THROW(parse_formula("0=y"), ParseError);
  EXPECT_THROW(parse_formula("0="), ParseError);
  EXPECT_THROW(parse_formula("0=0,0"), ParseError);
  try {
    parse_formula("0=0 & 0=0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Print, Examples) {
  Formula zz = Formula::eq(Term::zero(), Term::zero());
  EXPECT_EQ(print_formula(zz), "0=0");
  EXPECT_EQ(print_term(Term::fact(Term::succ(Term::zero()))), "(0')!");
  EXPECT_EQ(print_formula(Formula::imp(zz, zz)), "(0=0)->(0=0)");
  EXPECT_EQ(print_formula(parse_formula("(x0')! = x0' * x0!")), "(x0')!=x0'*x0!");
}

TEST(Flatten, Examples) {
  EXPECT_EQ(flatten(Formula::eq(Term::zero(), Term::zero())).size(), 3u);
  EXPECT_EQ(codes(parse_formula("0=0")), (std::vector<std::uint64_t>{9, 19, 9}));
  EXPECT_EQ(codes(parse_formula("0!=0'")), (std::vector<std::uint64_t>{9, 17, 19, 9, 11}));
}

TEST(Numeral, Examples) {
  EXPECT_EQ(numeral(0), Term::zero());
  EXPECT_EQ(numeral(3), Term::succ(Term::succ(Term::succ(Term::zero()))));
  EXPECT_EQ(print_term(numeral(5)), "0'''''");
}

TEST(Substitute, Examples) {
  EXPECT_EQ(substitute(Formula::eq(v(0), v(0)), 0, numeral(2)), Formula::eq(numeral(2), numeral(2)));
  Formula bound = Formula::forall(0, Formula::eq(v(0), v(0)));
  EXPECT_EQ(substitute(bound, 0, numeral(1)), bound);
  EXPECT_THROW(substitute(Formula::forall(1, Formula::eq(v(0), v(1))), 0, v(1)), CaptureError);
  EXPECT_FALSE(free_for(Formula::forall(1, Formula::eq(v(0), v(1))), 0, v(1)));
}

TEST(FreeVars, Examples) {
  EXPECT_EQ(free_vars(Formula::eq(v(0), Term::zero())), (std::set<VarIndex>{0}));
  EXPECT_TRUE(free_vars(Formula::forall(0, Formula::eq(v(0), Term::zero()))).empty());
  EXPECT_EQ(free_vars(Formula::imp(Formula::forall(0, Formula::eq(v(0), v(1))), Formula::eq(v(0), Term::zero()))),
            (std::set<VarIndex>{0, 1}));
}

TEST(Templates, Examples) {
  Formula zz = parse_formula("0=0");
  EXPECT_EQ(mk_and(zz, zz), parse_formula("~((0=0)->~(0=0))"));
  EXPECT_EQ(mk_exists(0, zz), parse_formula("~Ax0.~(0=0)"));
  EXPECT_EQ(mk_gt(v(1), v(0), 2), parse_formula("~Ax2.~(x1=x0+x2+0')"));
  EXPECT_EQ(mk_gt(v(1), v(0), 2, Offset::zero), parse_formula("~Ax2.~(x1=x0+x2+0)"));
  EXPECT_EQ(mk_neq(v(1), v(0), 2, 3), parse_formula("(Ax2.~(x1=x0+x2+0'))->~Ax3.~(x0=x1+x3+0')"));
  EXPECT_THROW(mk_gt(v(1), v(0), 1), VariableCollision);
  EXPECT_THROW(mk_neq(v(1), v(0), 2, 2), VariableCollision);
  EXPECT_THROW(mk_neq(v(1), v(0), 0, 3), VariableCollision);
  EXPECT_TRUE(only_core_nodes(mk_neq(v(1), v(0), 2, 3)));
}

TEST(Dump, RoundTrip) {
  gen::Gen g(7);
  for (int i = 0; i < 200; ++i) {
    Formula f = g.formula(6);
    EXPECT_EQ(read_dump(dump(f)), f);
  }
}

TEST(Property, PrintParseRoundTrip) {
  gen::Gen g(1);
  for (int i = 0; i < 1000; ++i) {
    Formula f = g.formula(1 + i % 7);
    std::string text = print_formula(f);
    ASSERT_EQ(parse_formula(text), f) << text;
    ASSERT_EQ(parse_symbols(flatten(f)), f) << text;
    ASSERT_EQ(render(flatten(f)), text);
  }
}

TEST(Property, FlattenImplicationOverhead) {
  gen::Gen g(2);
  for (int i = 0; i < 300; ++i) {
    Formula a = g.formula(4), b = g.formula(4);
    // (a)->(b): four brackets and the arrow
    EXPECT_EQ(flatten(Formula::imp(a, b)).size(), flatten(a).size() + flatten(b).size() + 5);
  }
}

TEST(Property, SubstitutionLaws) {
  gen::Gen g(3);
  for (int i = 0; i < 500; ++i) {
    Formula f = g.formula(6);
    VarIndex k = g.var();
    EXPECT_EQ(substitute(f, k, Term::var(k)), f);
    std::set<VarIndex> expected;
    oracle_free(f, {}, expected);
    EXPECT_EQ(free_vars(f), expected);
    if (expected.count(k)) {
      Formula g2 = substitute(f, k, numeral(static_cast<std::size_t>(i % 4)));
      expected.erase(k);
      EXPECT_EQ(free_vars(g2), expected);
    }
  }
}
