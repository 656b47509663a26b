// PAF syntax: terms, formulas, the symbol alphabet, canonical printing and parsing.
//
// Terms and formulas are immutable trees with shared structure, so copying is
// cheap and values may be shared freely across threads.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace paf {

using VarIndex = std::uint32_t;

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("at " + std::to_string(position) + ": " + message), position_(position) {}

  // Character offset for text input, symbol offset for symbol strings.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Substituted term would have a free variable captured by a quantifier.
class CaptureError : public Error {
 public:
  using Error::Error;
};

class VariableCollision : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  enum class Kind : std::uint8_t { zero, var, succ, add, mul, fact };

  static Term zero() {
    static const Term z{std::make_shared<const Node>(Node{Kind::zero, 0, {}, {}})};
    return z;
  }
  static Term var(VarIndex index) { return Term{std::make_shared<const Node>(Node{Kind::var, index, {}, {}})}; }
  static Term succ(Term t) { return Term{std::make_shared<const Node>(Node{Kind::succ, 0, std::move(t.node_), {}})}; }
  static Term fact(Term t) { return Term{std::make_shared<const Node>(Node{Kind::fact, 0, std::move(t.node_), {}})}; }
  static Term add(Term s, Term t) {
    return Term{std::make_shared<const Node>(Node{Kind::add, 0, std::move(s.node_), std::move(t.node_)})};
  }
  static Term mul(Term s, Term t) {
    return Term{std::make_shared<const Node>(Node{Kind::mul, 0, std::move(s.node_), std::move(t.node_)})};
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is(Kind k) const noexcept { return node_->kind == k; }
  bool is_atom() const noexcept { return is(Kind::zero) || is(Kind::var); }

  // Only meaningful for Kind::var.
  VarIndex index() const noexcept { return node_->index; }
  // Operand of succ/fact; left operand of add/mul.
  Term lhs() const { return Term{node_->a}; }
  Term arg() const { return lhs(); }
  Term rhs() const { return Term{node_->b}; }

  friend bool operator==(const Term& x, const Term& y) {
    if (x.node_ == y.node_) return true;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::zero: return true;
      case Kind::var: return x.index() == y.index();
      case Kind::succ:
      case Kind::fact: return x.arg() == y.arg();
      case Kind::add:
      case Kind::mul: return x.lhs() == y.lhs() && x.rhs() == y.rhs();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind;
    VarIndex index;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// 0 followed by n successor strokes.
inline Term numeral(std::size_t n) {
  Term t = Term::zero();
  for (std::size_t i = 0; i < n; ++i) t = Term::succ(std::move(t));
  return t;
}

// ---------------------------------------------------------------------------
// Formulas

class Formula {
 public:
  enum class Kind : std::uint8_t { eq, neg, imp, forall };

  static Formula eq(Term s, Term t) {
    return Formula{std::make_shared<const Node>(Node{Kind::eq, 0, std::move(s), std::move(t), {}, {}})};
  }
  static Formula neg(Formula a) {
    return Formula{std::make_shared<const Node>(Node{Kind::neg, 0, zero_, zero_, std::move(a.node_), {}})};
  }
  static Formula imp(Formula a, Formula b) {
    return Formula{
        std::make_shared<const Node>(Node{Kind::imp, 0, zero_, zero_, std::move(a.node_), std::move(b.node_)})};
  }
  static Formula forall(VarIndex index, Formula a) {
    return Formula{std::make_shared<const Node>(Node{Kind::forall, index, zero_, zero_, std::move(a.node_), {}})};
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is(Kind k) const noexcept { return node_->kind == k; }

  // Kind::eq
  const Term& left() const noexcept { return node_->s; }
  const Term& right() const noexcept { return node_->t; }
  // Kind::forall
  VarIndex index() const noexcept { return node_->index; }
  // Operand of neg and forall; antecedent of imp.
  Formula body() const { return Formula{node_->a}; }
  Formula antecedent() const { return Formula{node_->a}; }
  Formula consequent() const { return Formula{node_->b}; }

  friend bool operator==(const Formula& x, const Formula& y) {
    if (x.node_ == y.node_) return true;
    if (x.kind() != y.kind()) return false;
    switch (x.kind()) {
      case Kind::eq: return x.left() == y.left() && x.right() == y.right();
      case Kind::neg: return x.body() == y.body();
      case Kind::imp: return x.antecedent() == y.antecedent() && x.consequent() == y.consequent();
      case Kind::forall: return x.index() == y.index() && x.body() == y.body();
    }
    return false;
  }

 private:
  struct Node {
    Kind kind;
    VarIndex index;
    Term s;
    Term t;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static inline const Term zero_ = Term::zero();
  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Symbols

struct Symbol {
  enum class Kind : std::uint8_t {
    lparen, rparen, comma, zero, succ, plus, times, fact, equals, neg, imp, forall, var
  };

  Kind kind;
  VarIndex var = 0;  // Kind::var only

  static constexpr Symbol of(Kind k) noexcept { return Symbol{k, 0}; }
  static constexpr Symbol variable(VarIndex k) noexcept { return Symbol{Kind::var, k}; }

  friend constexpr bool operator==(const Symbol&, const Symbol&) = default;
};

using SymbolString = std::vector<Symbol>;

// The Goedel number of a single symbol: fixed symbols carry the odd codes
// 3..25 in table order, variable x_k carries 2k+27.
constexpr std::uint64_t symbol_code(Symbol s) noexcept {
  switch (s.kind) {
    case Symbol::Kind::lparen: return 3;
    case Symbol::Kind::rparen: return 5;
    case Symbol::Kind::comma: return 7;
    case Symbol::Kind::zero: return 9;
    case Symbol::Kind::succ: return 11;
    case Symbol::Kind::plus: return 13;
    case Symbol::Kind::times: return 15;
    case Symbol::Kind::fact: return 17;
    case Symbol::Kind::equals: return 19;
    case Symbol::Kind::neg: return 21;
    case Symbol::Kind::imp: return 23;
    case Symbol::Kind::forall: return 25;
    case Symbol::Kind::var: return 2 * static_cast<std::uint64_t>(s.var) + 27;
  }
  return 0;
}

// Inverse of symbol_code; nullopt for codes that name no symbol.
inline std::optional<Symbol> symbol_from_code(std::uint64_t code) noexcept {
  if (code < 3 || code % 2 == 0) return std::nullopt;
  if (code >= 27) {
    std::uint64_t k = (code - 27) / 2;
    if (k > UINT32_MAX) return std::nullopt;
    return Symbol::variable(static_cast<VarIndex>(k));
  }
  return Symbol::of(static_cast<Symbol::Kind>((code - 3) / 2));
}

// ASCII spelling of one symbol, as used by the text format.
inline std::string symbol_text(Symbol s) {
  switch (s.kind) {
    case Symbol::Kind::lparen: return "(";
    case Symbol::Kind::rparen: return ")";
    case Symbol::Kind::comma: return ",";
    case Symbol::Kind::zero: return "0";
    case Symbol::Kind::succ: return "'";
    case Symbol::Kind::plus: return "+";
    case Symbol::Kind::times: return "*";
    case Symbol::Kind::fact: return "!";
    case Symbol::Kind::equals: return "=";
    case Symbol::Kind::neg: return "~";
    case Symbol::Kind::imp: return "->";
    case Symbol::Kind::forall: return "A";
    case Symbol::Kind::var: return "x" + std::to_string(s.var);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Canonical flattening.
//
// Bracketing rules (one fixed form, so symbol counts are deterministic):
//   s'      argument bracketed unless it is 0, a variable or another successor
//   s!      argument bracketed unless it is 0 or a variable
//   s+t     left operand bare, right operand bracketed if it is a sum
//   s*t     sums bracketed on either side, products bracketed on the right
//   ~A      A bracketed unless it is a negation or a quantification
//   (A)->(B) both sides always bracketed
//   Ax_k(A) body always bracketed

namespace detail {

inline void emit(const Term& t, SymbolString& out);

inline void emit_bracketed(const Term& t, bool bracket, SymbolString& out) {
  if (bracket) out.push_back(Symbol::of(Symbol::Kind::lparen));
  emit(t, out);
  if (bracket) out.push_back(Symbol::of(Symbol::Kind::rparen));
}

inline void emit(const Term& t, SymbolString& out) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::zero: out.push_back(Symbol::of(Symbol::Kind::zero)); return;
    case K::var: out.push_back(Symbol::variable(t.index())); return;
    case K::succ: {
      Term a = t.arg();
      emit_bracketed(a, !(a.is_atom() || a.is(K::succ)), out);
      out.push_back(Symbol::of(Symbol::Kind::succ));
      return;
    }
    case K::fact: {
      Term a = t.arg();
      emit_bracketed(a, !a.is_atom(), out);
      out.push_back(Symbol::of(Symbol::Kind::fact));
      return;
    }
    case K::add: {
      emit(t.lhs(), out);
      out.push_back(Symbol::of(Symbol::Kind::plus));
      Term r = t.rhs();
      emit_bracketed(r, r.is(K::add), out);
      return;
    }
    case K::mul: {
      Term l = t.lhs(), r = t.rhs();
      emit_bracketed(l, l.is(K::add), out);
      out.push_back(Symbol::of(Symbol::Kind::times));
      emit_bracketed(r, r.is(K::add) || r.is(K::mul), out);
      return;
    }
  }
}

inline void emit(const Formula& f, SymbolString& out) {
  using K = Formula::Kind;
  auto open = [&] { out.push_back(Symbol::of(Symbol::Kind::lparen)); };
  auto close = [&] { out.push_back(Symbol::of(Symbol::Kind::rparen)); };
  switch (f.kind()) {
    case K::eq:
      emit(f.left(), out);
      out.push_back(Symbol::of(Symbol::Kind::equals));
      emit(f.right(), out);
      return;
    case K::neg: {
      out.push_back(Symbol::of(Symbol::Kind::neg));
      Formula a = f.body();
      bool bare = a.is(K::neg) || a.is(K::forall);
      if (!bare) open();
      emit(a, out);
      if (!bare) close();
      return;
    }
    case K::imp:
      open();
      emit(f.antecedent(), out);
      close();
      out.push_back(Symbol::of(Symbol::Kind::imp));
      open();
      emit(f.consequent(), out);
      close();
      return;
    case K::forall:
      out.push_back(Symbol::of(Symbol::Kind::forall));
      out.push_back(Symbol::variable(f.index()));
      open();
      emit(f.body(), out);
      close();
      return;
  }
}

}  // namespace detail

inline SymbolString flatten(const Term& t) {
  SymbolString out;
  detail::emit(t, out);
  return out;
}

inline SymbolString flatten(const Formula& f) {
  SymbolString out;
  detail::emit(f, out);
  return out;
}

// Renders a symbol string in the ASCII text format. A quantified variable is
// followed by '.', which is punctuation only and not a symbol.
inline std::string render(std::span<const Symbol> symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    out += symbol_text(symbols[i]);
    if (symbols[i].kind == Symbol::Kind::var && i > 0 && symbols[i - 1].kind == Symbol::Kind::forall) out += '.';
  }
  return out;
}

inline std::string print_formula(const Formula& f) { return render(flatten(f)); }
inline std::string print_term(const Term& t) { return render(flatten(t)); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

struct Token {
  Symbol symbol;
  std::size_t position;
};

inline std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  long depth = 0;
  auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
  auto push = [&](Symbol::Kind k, std::size_t len) {
    tokens.push_back({Symbol::of(k), i});
    i += len;
  };
  while (i < text.size()) {
    char ch = text[i];
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') {
      ++i;
      continue;
    }
    if (ch == '(') {
      ++depth;
      push(Symbol::Kind::lparen, 1);
    } else if (ch == ')') {
      if (--depth < 0) throw ParseError(i, "unbalanced brackets: unmatched ')'");
      push(Symbol::Kind::rparen, 1);
    } else if (ch == ',') {
      push(Symbol::Kind::comma, 1);
    } else if (ch == '0') {
      push(Symbol::Kind::zero, 1);
    } else if (ch == '\'') {
      push(Symbol::Kind::succ, 1);
    } else if (ch == '+') {
      push(Symbol::Kind::plus, 1);
    } else if (ch == '*') {
      push(Symbol::Kind::times, 1);
    } else if (starts("×")) {
      push(Symbol::Kind::times, 2);
    } else if (ch == '!') {
      push(Symbol::Kind::fact, 1);
    } else if (ch == '=') {
      push(Symbol::Kind::equals, 1);
    } else if (ch == '~') {
      push(Symbol::Kind::neg, 1);
    } else if (starts("¬")) {
      push(Symbol::Kind::neg, 2);
    } else if (starts("->")) {
      push(Symbol::Kind::imp, 2);
    } else if (starts("→")) {
      push(Symbol::Kind::imp, 3);
    } else if (ch == 'A' || starts("∀")) {
      push(Symbol::Kind::forall, ch == 'A' ? 1 : 3);
    } else if (ch == 'x') {
      std::size_t start = i++;
      std::size_t digits_begin = i;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
      if (i == digits_begin) throw ParseError(start, "variable 'x' without index");
      std::uint64_t k = 0;
      for (std::size_t d = digits_begin; d < i; ++d) {
        k = k * 10 + static_cast<std::uint64_t>(text[d] - '0');
        if (k > UINT32_MAX) throw ParseError(start, "variable index out of range");
      }
      tokens.push_back({Symbol::variable(static_cast<VarIndex>(k)), start});
    } else if (ch == '.') {
      // Punctuation after a quantified variable.
      bool after_binder = tokens.size() >= 2 && tokens.back().symbol.kind == Symbol::Kind::var &&
                          tokens[tokens.size() - 2].symbol.kind == Symbol::Kind::forall;
      if (!after_binder) throw ParseError(i, "'.' must follow a quantified variable");
      ++i;
    } else {
      throw ParseError(i, std::string("unknown symbol '") + ch + "'");
    }
  }
  if (depth != 0) throw ParseError(text.size(), "unbalanced brackets: missing ')'");
  return tokens;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::size_t end_position)
      : tokens_(std::move(tokens)), end_position_(end_position) {}

  Formula parse_all() {
    Formula f = formula();
    if (pos_ != tokens_.size()) fail("unexpected '" + symbol_text(tokens_[pos_].symbol) + "'");
    return f;
  }

  Term parse_term_all() {
    Term t = sum();
    if (pos_ != tokens_.size()) fail("unexpected '" + symbol_text(tokens_[pos_].symbol) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(position(), msg); }

  std::size_t position() const { return pos_ < tokens_.size() ? tokens_[pos_].position : end_position_; }
  bool at(Symbol::Kind k) const { return pos_ < tokens_.size() && tokens_[pos_].symbol.kind == k; }
  void expect(Symbol::Kind k) {
    if (!at(k)) fail("expected '" + symbol_text(Symbol::of(k)) + "'");
    ++pos_;
  }

  Formula formula() {
    Formula a = unary();
    if (at(Symbol::Kind::imp)) {
      ++pos_;
      return Formula::imp(std::move(a), formula());
    }
    return a;
  }

  Formula unary() {
    if (at(Symbol::Kind::neg)) {
      ++pos_;
      return Formula::neg(unary());
    }
    if (at(Symbol::Kind::forall)) {
      ++pos_;
      if (!at(Symbol::Kind::var)) fail("expected variable after quantifier");
      VarIndex k = tokens_[pos_++].symbol.var;
      return Formula::forall(k, unary());
    }
    if (at(Symbol::Kind::lparen)) {
      // Either a bracketed term opening an equation or a bracketed formula.
      std::size_t saved = pos_;
      try {
        return equation();
      } catch (const ParseError&) {
        pos_ = saved;
      }
      ++pos_;
      Formula f = formula();
      expect(Symbol::Kind::rparen);
      return f;
    }
    return equation();
  }

  Formula equation() {
    Term s = sum();
    expect(Symbol::Kind::equals);
    Term t = sum();
    return Formula::eq(std::move(s), std::move(t));
  }

  Term sum() {
    Term t = product();
    while (at(Symbol::Kind::plus)) {
      ++pos_;
      t = Term::add(std::move(t), product());
    }
    return t;
  }

  Term product() {
    Term t = postfix();
    while (at(Symbol::Kind::times)) {
      ++pos_;
      t = Term::mul(std::move(t), postfix());
    }
    return t;
  }

  Term postfix() {
    Term t = primary();
    for (;;) {
      if (at(Symbol::Kind::succ)) {
        t = Term::succ(std::move(t));
      } else if (at(Symbol::Kind::fact)) {
        t = Term::fact(std::move(t));
      } else {
        return t;
      }
      ++pos_;
    }
  }

  Term primary() {
    if (at(Symbol::Kind::zero)) {
      ++pos_;
      return Term::zero();
    }
    if (at(Symbol::Kind::var)) return Term::var(tokens_[pos_++].symbol.var);
    if (at(Symbol::Kind::lparen)) {
      ++pos_;
      Term t = sum();
      expect(Symbol::Kind::rparen);
      return t;
    }
    if (pos_ >= tokens_.size()) fail("unexpected end of input");
    fail("expected a term, found '" + symbol_text(tokens_[pos_].symbol) + "'");
  }

  std::vector<Token> tokens_;
  std::size_t end_position_;
  std::size_t pos_ = 0;
};

inline std::vector<Token> tokens_of(std::span<const Symbol> symbols) {
  std::vector<Token> tokens;
  tokens.reserve(symbols.size());
  long depth = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].kind == Symbol::Kind::lparen) ++depth;
    if (symbols[i].kind == Symbol::Kind::rparen && --depth < 0)
      throw ParseError(i, "unbalanced brackets: unmatched ')'");
    tokens.push_back({symbols[i], i});
  }
  if (depth != 0) throw ParseError(symbols.size(), "unbalanced brackets: missing ')'");
  return tokens;
}

}  // namespace detail

// Accepts the canonical form and any less-bracketed spelling that the
// precedence rules (postfix ' and ! > * > + > = > ~, A > ->, right-assoc ->)
// disambiguate. Throws ParseError.
inline Formula parse_formula(std::string_view text) {
  return detail::Parser(detail::lex(text), text.size()).parse_all();
}

inline Term parse_term(std::string_view text) {
  return detail::Parser(detail::lex(text), text.size()).parse_term_all();
}

// Parses a symbol string with the same grammar; positions are symbol offsets.
inline Formula parse_symbols(std::span<const Symbol> symbols) {
  return detail::Parser(detail::tokens_of(symbols), symbols.size()).parse_all();
}

// ---------------------------------------------------------------------------
// Variables and substitution

namespace detail {

inline void collect_vars(const Term& t, std::set<VarIndex>& out) {
  switch (t.kind()) {
    case Term::Kind::zero: return;
    case Term::Kind::var: out.insert(t.index()); return;
    case Term::Kind::succ:
    case Term::Kind::fact: collect_vars(t.arg(), out); return;
    case Term::Kind::add:
    case Term::Kind::mul:
      collect_vars(t.lhs(), out);
      collect_vars(t.rhs(), out);
      return;
  }
}

inline void collect_free(const Formula& f, std::multiset<VarIndex>& bound, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case Formula::Kind::eq: {
      std::set<VarIndex> vs;
      collect_vars(f.left(), vs);
      collect_vars(f.right(), vs);
      for (VarIndex v : vs)
        if (!bound.contains(v)) out.insert(v);
      return;
    }
    case Formula::Kind::neg: collect_free(f.body(), bound, out); return;
    case Formula::Kind::imp:
      collect_free(f.antecedent(), bound, out);
      collect_free(f.consequent(), bound, out);
      return;
    case Formula::Kind::forall: {
      auto it = bound.insert(f.index());
      collect_free(f.body(), bound, out);
      bound.erase(it);
      return;
    }
  }
}

inline void collect_all(const Formula& f, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case Formula::Kind::eq:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
      return;
    case Formula::Kind::neg: collect_all(f.body(), out); return;
    case Formula::Kind::imp:
      collect_all(f.antecedent(), out);
      collect_all(f.consequent(), out);
      return;
    case Formula::Kind::forall:
      out.insert(f.index());
      collect_all(f.body(), out);
      return;
  }
}

}  // namespace detail

inline std::set<VarIndex> term_vars(const Term& t) {
  std::set<VarIndex> out;
  detail::collect_vars(t, out);
  return out;
}

inline std::set<VarIndex> free_vars(const Formula& f) {
  std::multiset<VarIndex> bound;
  std::set<VarIndex> out;
  detail::collect_free(f, bound, out);
  return out;
}

// Every variable index occurring in f, free, bound or as a binder.
inline std::set<VarIndex> all_vars(const Formula& f) {
  std::set<VarIndex> out;
  detail::collect_all(f, out);
  return out;
}

inline bool occurs_free(const Formula& f, VarIndex k) { return free_vars(f).contains(k); }

inline Term substitute(const Term& t, VarIndex k, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::zero: return t;
    case Term::Kind::var: return t.index() == k ? replacement : t;
    case Term::Kind::succ: return Term::succ(substitute(t.arg(), k, replacement));
    case Term::Kind::fact: return Term::fact(substitute(t.arg(), k, replacement));
    case Term::Kind::add: return Term::add(substitute(t.lhs(), k, replacement), substitute(t.rhs(), k, replacement));
    case Term::Kind::mul: return Term::mul(substitute(t.lhs(), k, replacement), substitute(t.rhs(), k, replacement));
  }
  return t;
}

namespace detail {

inline Formula substitute(const Formula& f, VarIndex k, const Term& t, const std::set<VarIndex>& t_vars) {
  switch (f.kind()) {
    case Formula::Kind::eq: return Formula::eq(paf::substitute(f.left(), k, t), paf::substitute(f.right(), k, t));
    case Formula::Kind::neg: return Formula::neg(substitute(f.body(), k, t, t_vars));
    case Formula::Kind::imp:
      return Formula::imp(substitute(f.antecedent(), k, t, t_vars), substitute(f.consequent(), k, t, t_vars));
    case Formula::Kind::forall: {
      if (f.index() == k) return f;
      if (!occurs_free(f.body(), k)) return f;
      if (t_vars.contains(f.index()))
        throw CaptureError("term is not free for x" + std::to_string(k) + ": x" + std::to_string(f.index()) +
                           " would be captured");
      return Formula::forall(f.index(), substitute(f.body(), k, t, t_vars));
    }
  }
  return f;
}

}  // namespace detail

// Replaces every free occurrence of x_k by t. Throws CaptureError when t is
// not free for x_k in f.
inline Formula substitute(const Formula& f, VarIndex k, const Term& t) {
  return detail::substitute(f, k, t, term_vars(t));
}

// True when t is free for x_k in f.
inline bool free_for(const Formula& f, VarIndex k, const Term& t) {
  try {
    (void)substitute(f, k, t);
    return true;
  } catch (const CaptureError&) {
    return false;
  }
}

// Applies `rename` to every variable index, free or bound, including binders.
template <typename Fn>
Term rename_vars(const Term& t, Fn&& rename) {
  switch (t.kind()) {
    case Term::Kind::zero: return t;
    case Term::Kind::var: return Term::var(rename(t.index()));
    case Term::Kind::succ: return Term::succ(rename_vars(t.arg(), rename));
    case Term::Kind::fact: return Term::fact(rename_vars(t.arg(), rename));
    case Term::Kind::add: return Term::add(rename_vars(t.lhs(), rename), rename_vars(t.rhs(), rename));
    case Term::Kind::mul: return Term::mul(rename_vars(t.lhs(), rename), rename_vars(t.rhs(), rename));
  }
  return t;
}

template <typename Fn>
Formula rename_vars(const Formula& f, Fn&& rename) {
  switch (f.kind()) {
    case Formula::Kind::eq: return Formula::eq(rename_vars(f.left(), rename), rename_vars(f.right(), rename));
    case Formula::Kind::neg: return Formula::neg(rename_vars(f.body(), rename));
    case Formula::Kind::imp:
      return Formula::imp(rename_vars(f.antecedent(), rename), rename_vars(f.consequent(), rename));
    case Formula::Kind::forall: return Formula::forall(rename(f.index()), rename_vars(f.body(), rename));
  }
  return f;
}

// Largest variable index occurring anywhere in f, or nullopt for none.
inline std::optional<VarIndex> max_var(const Formula& f) {
  auto vs = all_vars(f);
  if (vs.empty()) return std::nullopt;
  return *vs.rbegin();
}

// ---------------------------------------------------------------------------
// Abbreviations. None of these are PAF symbols; each expands to Eq/Not/Imp/
// Forall only.

// A /\ B  :=  ~(A -> ~B)
inline Formula mk_and(Formula a, Formula b) { return Formula::neg(Formula::imp(std::move(a), Formula::neg(std::move(b)))); }

// Ex_k A  :=  ~Ax_k ~A
inline Formula mk_exists(VarIndex k, Formula a) { return Formula::neg(Formula::forall(k, Formula::neg(std::move(a)))); }

// Constant added in the order encodings: 0' gives strict comparisons, 0 is
// the alternative literal reading.
enum class Offset : std::uint8_t { zero, one };

inline Term offset_term(Offset o) { return o == Offset::one ? numeral(1) : Term::zero(); }

namespace detail {

inline void require_fresh(std::initializer_list<VarIndex> aux, std::initializer_list<const Term*> sides) {
  std::vector<VarIndex> seen;
  for (VarIndex a : aux) {
    if (std::find(seen.begin(), seen.end(), a) != seen.end())
      throw VariableCollision("auxiliary variable x" + std::to_string(a) + " used twice");
    seen.push_back(a);
    for (const Term* s : sides)
      if (term_vars(*s).contains(a))
        throw VariableCollision("auxiliary variable x" + std::to_string(a) + " occurs in a compared term");
  }
}

// lhs = rhs + x_w + c
inline Formula offset_eq(const Term& lhs, const Term& rhs, VarIndex w, Offset o) {
  return Formula::eq(lhs, Term::add(Term::add(rhs, Term::var(w)), offset_term(o)));
}

}  // namespace detail

// lhs > rhs  :=  ~Ax_w ~(lhs = rhs + x_w + c)
inline Formula mk_gt(const Term& lhs, const Term& rhs, VarIndex w, Offset o = Offset::one) {
  detail::require_fresh({w}, {&lhs, &rhs});
  return mk_exists(w, detail::offset_eq(lhs, rhs, w, o));
}

// lhs != rhs  :=  (Ax_u ~(lhs = rhs + x_u + c)) -> ~Ax_v ~(rhs = lhs + x_v + c)
inline Formula mk_neq(const Term& lhs, const Term& rhs, VarIndex u, VarIndex v, Offset o = Offset::one) {
  detail::require_fresh({u, v}, {&lhs, &rhs});
  return Formula::imp(Formula::forall(u, Formula::neg(detail::offset_eq(lhs, rhs, u, o))),
                      mk_exists(v, detail::offset_eq(rhs, lhs, v, o)));
}

// ---------------------------------------------------------------------------
// Structural dump, e.g. Not(Forall(0, Eq(Var(0), Zero))).

inline void dump(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::zero: os << "Zero"; return;
    case Term::Kind::var: os << "Var(" << t.index() << ')'; return;
    case Term::Kind::succ: os << "Succ("; dump(os, t.arg()); os << ')'; return;
    case Term::Kind::fact: os << "Fact("; dump(os, t.arg()); os << ')'; return;
    case Term::Kind::add:
    case Term::Kind::mul:
      os << (t.is(Term::Kind::add) ? "Add(" : "Mul(");
      dump(os, t.lhs());
      os << ", ";
      dump(os, t.rhs());
      os << ')';
      return;
  }
}

inline void dump(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::eq:
      os << "Eq(";
      dump(os, f.left());
      os << ", ";
      dump(os, f.right());
      os << ')';
      return;
    case Formula::Kind::neg: os << "Not("; dump(os, f.body()); os << ')'; return;
    case Formula::Kind::imp:
      os << "Imp(";
      dump(os, f.antecedent());
      os << ", ";
      dump(os, f.consequent());
      os << ')';
      return;
    case Formula::Kind::forall: os << "Forall(" << f.index() << ", "; dump(os, f.body()); os << ')'; return;
  }
}

inline std::string dump(const Formula& f) {
  std::ostringstream os;
  dump(os, f);
  return os.str();
}

inline std::string dump(const Term& t) {
  std::ostringstream os;
  dump(os, t);
  return os.str();
}

namespace detail {

class DumpReader {
 public:
  explicit DumpReader(std::string_view text) : text_(text) {}

  Formula read_all() {
    Formula f = formula();
    skip();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }
  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\t' || text_[pos_] == '\r'))
      ++pos_;
  }
  std::string word() {
    skip();
    std::size_t b = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (b == pos_) fail("expected constructor name");
    return std::string(text_.substr(b, pos_ - b));
  }
  void punct(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  VarIndex index() {
    skip();
    std::size_t b = pos_;
    std::uint64_t k = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      k = k * 10 + static_cast<std::uint64_t>(text_[pos_++] - '0');
      if (k > UINT32_MAX) fail("index out of range");
    }
    if (b == pos_) fail("expected index");
    return static_cast<VarIndex>(k);
  }

  Term term() {
    std::string w = word();
    if (w == "Zero") return Term::zero();
    if (w == "Var") {
      punct('(');
      VarIndex k = index();
      punct(')');
      return Term::var(k);
    }
    punct('(');
    Term a = term();
    if (w == "Succ" || w == "Fact") {
      punct(')');
      return w == "Succ" ? Term::succ(std::move(a)) : Term::fact(std::move(a));
    }
    if (w != "Add" && w != "Mul") fail("unknown term constructor '" + w + "'");
    punct(',');
    Term b = term();
    punct(')');
    return w == "Add" ? Term::add(std::move(a), std::move(b)) : Term::mul(std::move(a), std::move(b));
  }

  Formula formula() {
    std::string w = word();
    punct('(');
    if (w == "Eq") {
      Term s = term();
      punct(',');
      Term t = term();
      punct(')');
      return Formula::eq(std::move(s), std::move(t));
    }
    if (w == "Not") {
      Formula a = formula();
      punct(')');
      return Formula::neg(std::move(a));
    }
    if (w == "Imp") {
      Formula a = formula();
      punct(',');
      Formula b = formula();
      punct(')');
      return Formula::imp(std::move(a), std::move(b));
    }
    if (w == "Forall") {
      VarIndex k = index();
      punct(',');
      Formula a = formula();
      punct(')');
      return Formula::forall(k, std::move(a));
    }
    fail("unknown formula constructor '" + w + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Inverse of dump().
inline Formula read_dump(std::string_view text) { return detail::DumpReader(text).read_all(); }

}  // namespace paf
