// Goedel coding of symbols, formulas and proofs.
//
// A formula with symbol sequence a_0 a_1 ... a_n is coded as
//   p_0^#a_0 * p_1^#a_1 * ... * p_n^#a_n
// where p_i is the (i+1)-th prime. A proof F_0 ... F_n is coded the same way
// with the formula codes #F_i as exponents.

#pragma once

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "paf/real.hpp"
#include "paf/syntax.hpp"

namespace paf {

// An arbitrary-precision natural number holding a Goedel code.
class Code {
 public:
  Code() = default;
  explicit Code(mpz_class value) : value_(std::move(value)) {}
  explicit Code(std::uint64_t value) : value_(static_cast<unsigned long>(value)) {}

  // Throws Error unless `text` is a non-empty string of decimal digits.
  static Code from_decimal(std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '\n' && c != '\r' && c != '\t') s += c;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw Error("not a decimal natural number: '" + std::string(text) + "'");
    return Code(mpz_class(s, 10));
  }

  const mpz_class& value() const noexcept { return value_; }
  std::string to_decimal() const { return value_.get_str(10); }
  std::size_t bit_length() const { return value_ == 0 ? 0 : mpz_sizeinbase(value_.get_mpz_t(), 2); }

  friend bool operator==(const Code& a, const Code& b) { return a.value_ == b.value_; }
  friend bool operator<(const Code& a, const Code& b) { return a.value_ < b.value_; }

 private:
  mpz_class value_;
};

// Materialization limits. Codes larger than max_bits, or needing primes past
// index max_primes, are reported as over budget instead of processed.
struct Budget {
  std::size_t max_bits = 1'000'000;
  std::size_t max_primes = 2000;
};

// ---------------------------------------------------------------------------
// Primes

// Memoized ascending primes 2, 3, 5, ... Safe for concurrent use; every
// reader sees a prefix of the same sequence.
class PrimeSeq {
 public:
  static PrimeSeq& instance() {
    static PrimeSeq seq;
    return seq;
  }

  std::uint64_t nth(std::size_t n) {
    std::lock_guard lock(mutex_);
    extend(n + 1);
    return primes_[n];
  }

  // The first `count` primes.
  std::vector<std::uint64_t> prefix(std::size_t count) {
    std::lock_guard lock(mutex_);
    extend(count);
    return {primes_.begin(), primes_.begin() + static_cast<std::ptrdiff_t>(count)};
  }

 private:
  PrimeSeq() = default;

  void extend(std::size_t count) {
    if (primes_.size() >= count) return;
    // Rosser's bound p_n < n(ln n + ln ln n) for n >= 6.
    double n = static_cast<double>(count);
    auto limit = static_cast<std::uint64_t>(count < 6 ? 15.0 : n * (std::log(n) + std::log(std::log(n))) + 10);
    while (primes_.size() < count) {
      sieve(limit);
      limit *= 2;
    }
  }

  void sieve(std::uint64_t limit) {
    std::vector<bool> composite(limit + 1, false);
    primes_.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes_.push_back(i);
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
  }

  std::mutex mutex_;
  std::vector<std::uint64_t> primes_;
};

// p_n, zero-based: nth_prime(0) == 2.
inline std::uint64_t nth_prime(std::size_t n) { return PrimeSeq::instance().nth(n); }

// p_n < 2^(2^(n+1)), decided as bit_length(p_n) <= 2^(n+1).
inline bool check_lemma2(std::size_t n) {
  std::uint64_t p = nth_prime(n);
  auto bits = static_cast<std::uint64_t>(std::bit_width(p));
  if (n + 1 >= 63) return true;
  return bits <= (std::uint64_t{1} << (n + 1));
}

// ---------------------------------------------------------------------------
// Encoding

// Raised when a caller requests a stop during a long encoding.
class Cancelled : public Error {
 public:
  Cancelled() : Error("cancelled") {}
};

namespace detail {

inline mpz_class product_tree(std::vector<mpz_class>& factors, std::size_t lo, std::size_t hi,
                              const std::stop_token& stop = {}) {
  if (stop.stop_requested()) throw Cancelled();
  if (hi - lo == 0) return 1;
  if (hi - lo == 1) return factors[lo];
  std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(factors, lo, mid, stop) * product_tree(factors, mid, hi, stop);
}

}  // namespace detail

// Exact code of a symbol string. Throws Cancelled if `stop` is requested.
inline Code encode_symbols(std::span<const Symbol> symbols, const std::stop_token& stop = {}) {
  auto primes = PrimeSeq::instance().prefix(symbols.size());
  std::vector<mpz_class> factors(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i)
    mpz_ui_pow_ui(factors[i].get_mpz_t(), static_cast<unsigned long>(primes[i]),
                  static_cast<unsigned long>(symbol_code(symbols[i])));
  return Code(detail::product_tree(factors, 0, factors.size(), stop));
}

inline Code encode_formula(const Formula& f, const std::stop_token& stop = {}) {
  return encode_symbols(flatten(f), stop);
}

// Upper bound on log2 of a code from its exponents alone:
// sum over i of code_i * log2(p_i), used for size checks without materializing.
inline double estimated_log2(std::span<const Symbol> symbols) {
  auto primes = PrimeSeq::instance().prefix(symbols.size());
  double total = 0;
  for (std::size_t i = 0; i < symbols.size(); ++i)
    total += static_cast<double>(symbol_code(symbols[i])) * std::log2(static_cast<double>(primes[i]));
  return total;
}

// ---------------------------------------------------------------------------
// Decoding

struct Rejection {
  enum class Kind : std::uint8_t { not_a_code, not_a_formula, budget_exceeded };
  Kind kind;
  std::string reason;
};

inline const char* to_string(Rejection::Kind k) {
  switch (k) {
    case Rejection::Kind::not_a_code: return "not-a-code";
    case Rejection::Kind::not_a_formula: return "not-a-formula";
    case Rejection::Kind::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

template <typename T>
class Decoded {
 public:
  Decoded(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Decoded(Rejection r) : state_(std::move(r)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const noexcept { return std::holds_alternative<T>(state_); }
  explicit operator bool() const noexcept { return ok(); }
  const T& value() const { return std::get<T>(state_); }
  const Rejection& rejection() const { return std::get<Rejection>(state_); }

 private:
  std::variant<T, Rejection> state_;
};

// Splits c into exponents over contiguous primes p_0, p_1, ... . Rejects a gap
// in the prime support. `check` sees each exponent as soon as it is found and
// may reject it, so the first offending prime is the one reported.
template <typename Check>
Decoded<std::vector<mpz_class>> prime_exponents(const Code& c, const Budget& budget, Check&& check) {
  if (c.value() <= 1) return Rejection{Rejection::Kind::not_a_code, "code must be greater than 1"};
  if (c.bit_length() > budget.max_bits)
    return Rejection{Rejection::Kind::budget_exceeded,
                     "code has " + std::to_string(c.bit_length()) + " bits, budget is " +
                         std::to_string(budget.max_bits)};
  mpz_class rest = c.value();
  std::vector<mpz_class> exponents;
  for (std::size_t i = 0; rest != 1; ++i) {
    if (i >= budget.max_primes)
      return Rejection{Rejection::Kind::budget_exceeded,
                       "factorization needs more than " + std::to_string(budget.max_primes) + " primes"};
    mpz_class p = static_cast<unsigned long>(nth_prime(i));
    mp_bitcnt_t e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t());
    if (e == 0)
      return Rejection{Rejection::Kind::not_a_code,
                       "prime support is not contiguous: p_" + std::to_string(i) + " = " + p.get_str() +
                           " does not divide the code"};
    mpz_class exponent = static_cast<unsigned long>(e);
    if (std::optional<Rejection> r = check(i, exponent)) return *r;
    exponents.push_back(std::move(exponent));
  }
  return exponents;
}

// Code -> symbol string, without checking grammar.
inline Decoded<SymbolString> decode_symbols(const Code& c, const Budget& budget = {}) {
  SymbolString out;
  auto exps = prime_exponents(c, budget, [&](std::size_t i, const mpz_class& e) -> std::optional<Rejection> {
    std::optional<Symbol> s;
    if (e.fits_ulong_p()) s = symbol_from_code(e.get_ui());
    if (!s)
      return Rejection{Rejection::Kind::not_a_code,
                       "exponent " + e.get_str() + " is not a symbol code (at p_" + std::to_string(i) + ")"};
    out.push_back(*s);
    return std::nullopt;
  });
  if (!exps) return exps.rejection();
  return out;
}

// Code -> formula. Only canonical symbol strings are formulas here: a string
// that parses but differs from the canonical flattening of its parse is
// rejected, which keeps decode the exact inverse of encode.
inline Decoded<Formula> decode_formula(const Code& c, const Budget& budget = {}) {
  auto symbols = decode_symbols(c, budget);
  if (!symbols) return symbols.rejection();
  try {
    Formula f = parse_symbols(symbols.value());
    if (flatten(f) != symbols.value())
      return Rejection{Rejection::Kind::not_a_formula,
                       "symbol string '" + render(symbols.value()) + "' is not in canonical form"};
    return f;
  } catch (const ParseError& e) {
    return Rejection{Rejection::Kind::not_a_formula,
                     "symbol string '" + render(symbols.value()) + "' is not a formula (" + e.what() + ")"};
  }
}

// ---------------------------------------------------------------------------
// Proof codes

// Exact proof code from the line codes, or a budget rejection when
// sum #F_k * log2(p_k) exceeds budget.max_bits.
inline Decoded<Code> encode_proof_codes(std::span<const Code> line_codes, const Budget& budget = {}) {
  if (line_codes.empty()) return Rejection{Rejection::Kind::not_a_code, "a proof has at least one line"};
  auto primes = PrimeSeq::instance().prefix(line_codes.size());
  double bits = 0;
  for (std::size_t i = 0; i < line_codes.size(); ++i)
    bits += line_codes[i].value().get_d() * std::log2(static_cast<double>(primes[i]));
  if (!(bits <= static_cast<double>(budget.max_bits)))
    return Rejection{Rejection::Kind::budget_exceeded,
                     "proof code needs about " + std::to_string(bits) + " bits, budget is " +
                         std::to_string(budget.max_bits)};
  std::vector<mpz_class> factors(line_codes.size());
  for (std::size_t i = 0; i < line_codes.size(); ++i)
    mpz_ui_pow_ui(factors[i].get_mpz_t(), static_cast<unsigned long>(primes[i]), line_codes[i].value().get_ui());
  return Code(detail::product_tree(factors, 0, factors.size()));
}

// ceil(log2 of the proof code) = ceil(sum #F_k * log2(p_k)), computed with
// outward-rounded interval arithmetic, refining precision until both ends of
// the enclosure have the same ceiling.
inline mpz_class proof_code_bitlength(std::span<const Code> line_codes) {
  if (line_codes.empty()) throw Error("a proof has at least one line");
  auto primes = PrimeSeq::instance().prefix(line_codes.size());
  std::size_t widest = 0;
  for (const Code& c : line_codes) widest = std::max(widest, c.bit_length());
  auto precision = static_cast<mpfr_prec_t>(widest + 64 + std::bit_width(line_codes.size()));
  for (;; precision *= 2) {
    Real lo(precision), hi(precision), term(precision), lg(precision);
    for (std::size_t i = 0; i < line_codes.size(); ++i) {
      const mpz_srcptr z = line_codes[i].value().get_mpz_t();
      mpfr_set_ui(lg.get(), static_cast<unsigned long>(primes[i]), MPFR_RNDD);
      mpfr_log2(lg.get(), lg.get(), MPFR_RNDD);
      mpfr_mul_z(term.get(), lg.get(), z, MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), term.get(), MPFR_RNDD);
      mpfr_set_ui(lg.get(), static_cast<unsigned long>(primes[i]), MPFR_RNDU);
      mpfr_log2(lg.get(), lg.get(), MPFR_RNDU);
      mpfr_mul_z(term.get(), lg.get(), z, MPFR_RNDU);
      mpfr_add(hi.get(), hi.get(), term.get(), MPFR_RNDU);
    }
    mpz_class clo, chi;
    mpfr_get_z(clo.get_mpz_t(), lo.get(), MPFR_RNDU);
    mpfr_get_z(chi.get_mpz_t(), hi.get(), MPFR_RNDU);
    if (clo == chi) return clo;
    if (precision > static_cast<mpfr_prec_t>(1) << 24) throw Error("proof_code_bitlength failed to converge");
  }
}

// Proof code -> list of formulas, one per prime exponent.
inline Decoded<std::vector<Formula>> decode_proof_code(const Code& m, const Budget& budget = {}) {
  std::vector<Formula> lines;
  auto exps = prime_exponents(m, budget, [&](std::size_t i, const mpz_class& e) -> std::optional<Rejection> {
    auto f = e > 1 ? decode_formula(Code(e), budget)
                   : Decoded<Formula>(Rejection{Rejection::Kind::not_a_code, "exponent " + e.get_str() +
                                                                               " is not a formula code"});
    if (!f) {
      Rejection r = f.rejection();
      r.reason = "line " + std::to_string(i) + ": " + r.reason;
      return r;
    }
    lines.push_back(f.value());
    return std::nullopt;
  });
  if (!exps) return exps.rejection();
  return lines;
}

}  // namespace paf
