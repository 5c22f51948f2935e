#pragma once

#include <mpfr.h>

#include <string>
#include <string_view>
#include <utility>

#include "hzone/errors.hpp"

namespace hzone {

class BigReal;

// Working precision of a computation job: D reported decimal digits plus g
// guard digits. All arithmetic inside the job rounds at D+g digits; results
// quoted outside are truncated back to D. Immutable; shared read-only
// between workers.
class PrecisionContext {
  public:
    explicit PrecisionContext(int digits, int guard = 30);

    int digits() const noexcept { return digits_; }
    int guard() const noexcept { return guard_; }
    // mpfr working precision in bits, covering D+g decimal digits.
    mpfr_prec_t bits() const noexcept { return bits_; }

    BigReal make_real(long value = 0) const;
    BigReal pi() const;
    // 10^e at context precision (e may be negative).
    BigReal pow10(long e) const;
    // Job tolerances used across modules.
    BigReal degeneracy_tol() const;  // 10^{-D/2}
    BigReal rounding_floor() const;  // 10^{-(D+g-2)}

  private:
    int digits_;
    int guard_;
    mpfr_prec_t bits_;
};

// Arbitrary-precision real number (sign/magnitude binary significand via
// mpfr, precision fixed per value). Binary operations round at the larger
// of the two operand precisions, so values originating from one
// PrecisionContext stay at that context's precision. Immutable in spirit:
// the library never mutates shared values after construction.
class BigReal {
  public:
    BigReal() { mpfr_init2(v_, kMinBits); mpfr_set_zero(v_, +1); }
    explicit BigReal(long value, mpfr_prec_t bits) {
        mpfr_init2(v_, bits);
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    BigReal(long value, const PrecisionContext& ctx) : BigReal(value, ctx.bits()) {}

    BigReal(const BigReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& o) noexcept {
        mpfr_init2(v_, kMinBits);
        mpfr_swap(v_, o.v_);
    }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    mpfr_prec_t prec() const noexcept { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const noexcept { return v_; }
    mpfr_ptr raw() noexcept { return v_; }

    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    // -1, 0, +1
    int sign() const noexcept { return mpfr_sgn(v_); }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }

    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    // log10|x| as a double; -inf for zero. Used for magnitude audits only.
    double log10_magnitude() const;

    BigReal& operator+=(const BigReal& o);
    BigReal& operator-=(const BigReal& o);
    BigReal& operator*=(const BigReal& o);
    BigReal& operator/=(const BigReal& o);

    BigReal operator-() const;

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);

    friend BigReal operator+(const BigReal& a, long b);
    friend BigReal operator-(const BigReal& a, long b);
    friend BigReal operator*(const BigReal& a, long b);
    friend BigReal operator/(const BigReal& a, long b);
    friend BigReal operator+(long a, const BigReal& b) { return b + a; }
    friend BigReal operator*(long a, const BigReal& b) { return b * a; }
    friend BigReal operator-(long a, const BigReal& b);
    friend BigReal operator/(long a, const BigReal& b);

    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const BigReal& a, const BigReal& b) { return !(a == b); }
    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator<(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }
    friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }

    static constexpr mpfr_prec_t kMinBits = 24;

  private:
    mpfr_t v_;
};

// Elementary functions. Accuracy: mpfr correct rounding at the result
// precision, well inside the guard-digit contract.
BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);   // throws DomainError for x < 0
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);    // throws DomainError for x <= 0
BigReal log10(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal pow_int(const BigReal& x, long n);
// x^y for x > 0.
BigReal pow(const BigReal& x, const BigReal& y);
BigReal min(const BigReal& a, const BigReal& b);
BigReal max(const BigReal& a, const BigReal& b);
BigReal pi(mpfr_prec_t bits);

// Decimal wire format: optional sign, mantissa with optional '.', optional
// 'e'/'E' exponent. No locale separators.
//
// parse_decimal rounds to context precision and is exact whenever the text
// carries at most D+g significant digits of a binary-representable scaling;
// format_decimal emits the shortest mantissa that parses back to the exact
// same value at the same precision, so parse(format(x)) == x always, and
// short inputs round-trip verbatim.
BigReal parse_decimal(std::string_view text, const PrecisionContext& ctx);
BigReal parse_decimal(std::string_view text, mpfr_prec_t bits);
std::string format_decimal(const BigReal& x);
// Fixed-digit variant used where a stable column width matters.
std::string format_decimal(const BigReal& x, int significant_digits);

} // namespace hzone
