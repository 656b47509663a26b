// Thin RAII wrapper over MPFR for directed-rounding arithmetic.

#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

namespace paf {

class Real {
 public:
  explicit Real(mpfr_prec_t precision = 128) { mpfr_init2(value_, precision); mpfr_set_zero(value_, 1); }
  Real(const Real& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
      mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
  }
  ~Real() { mpfr_clear(value_); }

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(value_, rnd); }

  // Scientific rendering with `digits` significant digits, rounded toward rnd.
  std::string str(int digits = 12, mpfr_rnd_t rnd = MPFR_RNDN) const {
    if (mpfr_nan_p(value_)) return "nan";
    if (mpfr_inf_p(value_)) return mpfr_sgn(value_) > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(digits) + "R" + rounding_char(rnd) + "g";
    mpfr_asprintf(&buf, fmt.c_str(), value_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.value_, b.value_); }
  friend bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }

 private:
  static const char* rounding_char(mpfr_rnd_t rnd) {
    switch (rnd) {
      case MPFR_RNDD: return "D";
      case MPFR_RNDU: return "U";
      case MPFR_RNDZ: return "Z";
      default: return "N";
    }
  }

  mpfr_t value_;
};

inline Real real_from(const mpz_class& z, mpfr_rnd_t rnd, mpfr_prec_t precision = 128) {
  Real r(precision);
  mpfr_set_z(r.get(), z.get_mpz_t(), rnd);
  return r;
}

inline Real real_from(std::uint64_t n, mpfr_rnd_t rnd, mpfr_prec_t precision = 128) {
  Real r(precision);
  mpfr_set_ui(r.get(), static_cast<unsigned long>(n), rnd);
  return r;
}

// A closed interval [lo, hi] with lo <= hi guaranteed by directed rounding.
struct Interval {
  Real lo;
  Real hi;

  bool contains(const Real& x) const { return lo <= x && x <= hi; }
};

}  // namespace paf
