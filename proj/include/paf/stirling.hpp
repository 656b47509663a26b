// Rigorous bounds on ln(z!) and on the factorial tower 3, 3!, (3!)!, ...
//
// Stirling: ln z! = z ln(z/e) + ln(2 pi z)/2 + theta/(12 z), 0 < theta < 1.
// Every elementary operation below is rounded toward the side that keeps the
// enclosure valid.

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paf/real.hpp"
#include "paf/syntax.hpp"

namespace paf {

// Upper bound on hi - lo - 1/(12z) from rounding, for |ln z!| below 2^60.
inline double stirling_rounding_slack(mpfr_prec_t precision = 128) {
  return std::ldexp(1.0, static_cast<int>(-(precision - 70)));
}

namespace detail {

inline void stirling_bound(Real& out, const mpz_class& z, mpfr_rnd_t rnd, bool add_theta) {
  const mpfr_prec_t p = out.precision();
  Real zr(p), t(p), s(p);
  mpfr_set_z(zr.get(), z.get_mpz_t(), rnd);  // exact when p exceeds the bit length of z
  // z * (ln z - 1)
  mpfr_log(t.get(), zr.get(), rnd);
  mpfr_sub_ui(t.get(), t.get(), 1, rnd);
  mpfr_mul(t.get(), t.get(), zr.get(), rnd);
  // ln(2 pi z) / 2
  mpfr_const_pi(s.get(), rnd);
  mpfr_mul(s.get(), s.get(), zr.get(), rnd);
  mpfr_mul_ui(s.get(), s.get(), 2, rnd);
  mpfr_log(s.get(), s.get(), rnd);
  mpfr_div_ui(s.get(), s.get(), 2, rnd);
  mpfr_add(out.get(), t.get(), s.get(), rnd);
  if (add_theta) {
    // + 1/(12 z)
    mpfr_ui_div(t.get(), 1, zr.get(), rnd);
    mpfr_div_ui(t.get(), t.get(), 12, rnd);
    mpfr_add(out.get(), out.get(), t.get(), rnd);
  }
}

}  // namespace detail

// Enclosure of ln(z!) for z >= 1, taking theta -> 0 for the lower end and
// theta -> 1 for the upper end.
inline Interval stirling_ln_factorial(const mpz_class& z, mpfr_prec_t precision = 128) {
  if (z < 1) throw Error("stirling_ln_factorial needs z >= 1");
  auto p = std::max<mpfr_prec_t>(precision, static_cast<mpfr_prec_t>(mpz_sizeinbase(z.get_mpz_t(), 2)) + 64);
  Interval out{Real(p), Real(p)};
  detail::stirling_bound(out.lo, z, MPFR_RNDD, false);
  detail::stirling_bound(out.hi, z, MPFR_RNDU, true);
  return out;
}

inline Interval stirling_ln_factorial(std::uint64_t z, mpfr_prec_t precision = 128) {
  return stirling_ln_factorial(mpz_class(static_cast<unsigned long>(z)), precision);
}

// ---------------------------------------------------------------------------
// Factorial tower: tower(0) = 3, tower(n) = tower(n-1)!.

// Exact value where it can be materialized (n <= 3; tower(3) = 720!).
inline std::optional<mpz_class> tower_exact(std::size_t n) {
  if (n > 3) return std::nullopt;
  mpz_class t = 3;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), t.get_ui());
    t = f;
  }
  return t;
}

// The term (...((0''')!)...)! with `factorials` applications of '!'.
inline Term tower_term(std::size_t factorials) {
  Term t = numeral(3);
  for (std::size_t i = 0; i < factorials; ++i) t = Term::fact(std::move(t));
  return t;
}

// value >= exp^levels(base); levels = 0 means value >= base.
struct LowerBound {
  unsigned levels = 0;
  Real base;

  std::string str() const {
    std::string b = base.str(6, MPFR_RNDD);
    if (levels == 0) return b;
    return "exp^" + std::to_string(levels) + "(" + b + ")";
  }
};

// Rigorously decides exp^levels(base) >= t (false may mean "not shown").
inline bool at_least(const LowerBound& b, const Real& t) {
  Real s = t;
  for (unsigned i = 0; i < b.levels; ++i) {
    if (mpfr_sgn(s.get()) <= 0) return true;  // exp(anything) > 0 >= s
    mpfr_log(s.get(), s.get(), MPFR_RNDU);
  }
  return s <= b.base;
}

inline bool at_least(const LowerBound& b, std::uint64_t t) { return at_least(b, real_from(t, MPFR_RNDU)); }

// ln(z!) > z holds for every integer z >= 6: the Stirling lower end exceeds
// 6 at z = 6, and ln((z+1)!) - (z+1) - (ln z! - z) = ln(z+1) - 1 > 0.
inline bool ln_factorial_exceeds_argument_from_6() {
  Interval at6 = stirling_ln_factorial(std::uint64_t{6});
  return mpfr_cmp_ui(at6.lo.get(), 6) > 0;
}

struct TowerFloor {
  std::size_t n = 0;
  LowerBound floor;                 // ln ln tower(n) >= floor
  std::vector<std::string> steps;   // derivation, one inequality per entry
};

// Lower bound on ln ln tower(n), n >= 2. For n = 2 evaluated directly; for
// n >= 3 by the chain ln tower(n) > tower(n-1), ln tower(n-1) > tower(n-2),
// each step an instance of ln(z!) > z with z >= 6.
inline TowerFloor tower_lnln_floor(std::size_t n) {
  if (n < 2) throw Error("tower_lnln_floor needs N >= 2");
  TowerFloor out;
  out.n = n;
  if (n == 2) {
    Real v(128);
    mpfr_set_ui(v.get(), 720, MPFR_RNDD);
    mpfr_log(v.get(), v.get(), MPFR_RNDD);
    mpfr_log(v.get(), v.get(), MPFR_RNDD);
    out.floor = LowerBound{0, v};
    out.steps.push_back("ln ln 720 >= " + v.str(8, MPFR_RNDD));
    return out;
  }
  if (!ln_factorial_exceeds_argument_from_6()) throw Error("Stirling enclosure failed to show ln 6! > 6");
  // tower(n-1) and tower(n-2) are both >= tower(1) = 6.
  out.steps.push_back("ln tower(" + std::to_string(n) + ") > tower(" + std::to_string(n - 1) +
                      ") since tower(" + std::to_string(n - 1) + ") >= 6");
  out.steps.push_back("ln tower(" + std::to_string(n - 1) + ") > tower(" + std::to_string(n - 2) +
                      ") since tower(" + std::to_string(n - 2) + ") >= 6");
  std::size_t m = n - 2;
  if (auto exact = tower_exact(m)) {
    auto p = static_cast<mpfr_prec_t>(std::max<std::size_t>(128, mpz_sizeinbase(exact->get_mpz_t(), 2)));
    out.floor = LowerBound{0, real_from(*exact, MPFR_RNDD, p)};
    out.steps.push_back("tower(" + std::to_string(m) + ") = " +
                        (m <= 2 ? exact->get_str() : "720! (" + std::to_string(exact->get_str().size()) + " digits)"));
  } else {
    // tower(j) > exp(tower(j-1)) for j >= 2, down to tower(3) = 720!.
    auto t3 = *tower_exact(3);
    auto p = static_cast<mpfr_prec_t>(mpz_sizeinbase(t3.get_mpz_t(), 2));
    out.floor = LowerBound{static_cast<unsigned>(m - 3), real_from(t3, MPFR_RNDD, p)};
    out.steps.push_back("tower(" + std::to_string(m) + ") > exp^" + std::to_string(m - 3) + "(720!)");
  }
  return out;
}

struct Lemma4Check {
  TowerFloor floor;
  bool side_claim = false;  // tower(N-2) > 8N
  bool holds = false;       // ln ln tower(N) > 8N
};

// a = tower(N) > e^(e^(8N)) for N >= 4. Throws Error for N < 4.
inline Lemma4Check check_lemma4(std::size_t n) {
  if (n < 4) throw Error("the tower bound is only claimed for N >= 4");
  Lemma4Check out{tower_lnln_floor(n)};
  // tower(N-2) is an integer, so tower(N-2) > 8N iff it is at least 8N + 1;
  // then ln ln tower(N) > tower(N-2) > 8N.
  out.side_claim = at_least(out.floor.floor, static_cast<std::uint64_t>(8 * n + 1));
  out.holds = out.side_claim;
  return out;
}

}  // namespace paf
