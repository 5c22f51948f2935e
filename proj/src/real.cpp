#include "hzone/real.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace hzone {

namespace {

mpfr_prec_t bits_for_digits(int decimal_digits) {
    // 10^d needs d*log2(10) bits; a few spare bits absorb double rounding
    // in the decimal<->binary conversions.
    return static_cast<mpfr_prec_t>(std::ceil(decimal_digits * 3.3219280948873623)) + 8;
}

mpfr_prec_t join(const BigReal& a, const BigReal& b) {
    return std::max(a.prec(), b.prec());
}

} // namespace

PrecisionContext::PrecisionContext(int digits, int guard) : digits_(digits), guard_(guard) {
    if (digits < 30) throw DomainError("PrecisionContext: digits must be >= 30");
    if (guard < 10) throw DomainError("PrecisionContext: guard must be >= 10");
    bits_ = bits_for_digits(digits_ + guard_);
}

BigReal PrecisionContext::make_real(long value) const { return BigReal(value, bits_); }

BigReal PrecisionContext::pi() const { return hzone::pi(bits_); }

BigReal PrecisionContext::pow10(long e) const {
    BigReal r = make_real(0);
    mpfr_ui_pow_ui(r.raw(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
    if (e < 0) mpfr_si_div(r.raw(), 1, r.raw(), MPFR_RNDN);
    return r;
}

BigReal PrecisionContext::degeneracy_tol() const { return pow10(-(digits_ / 2)); }

BigReal PrecisionContext::rounding_floor() const { return pow10(-(digits_ + guard_ - 2)); }

double BigReal::log10_magnitude() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    // exponent in base 2 gives the magnitude; the mantissa correction is
    // taken from a double approximation of the significand.
    long e2 = mpfr_get_exp(v_);
    mpfr_t m;
    mpfr_init2(m, 64);
    mpfr_abs(m, v_, MPFR_RNDN);
    mpfr_set_exp(m, 0);
    double frac = mpfr_get_d(m, MPFR_RNDN); // in [0.5, 1)
    mpfr_clear(m);
    return (static_cast<double>(e2) + std::log2(frac)) * 0.30102999566398120;
}

BigReal& BigReal::operator+=(const BigReal& o) {
    if (prec() < o.prec()) { BigReal t(*this); mpfr_set_prec(v_, o.prec()); mpfr_add(v_, t.raw(), o.v_, MPFR_RNDN); }
    else mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigReal& BigReal::operator-=(const BigReal& o) {
    if (prec() < o.prec()) { BigReal t(*this); mpfr_set_prec(v_, o.prec()); mpfr_sub(v_, t.raw(), o.v_, MPFR_RNDN); }
    else mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigReal& BigReal::operator*=(const BigReal& o) {
    if (prec() < o.prec()) { BigReal t(*this); mpfr_set_prec(v_, o.prec()); mpfr_mul(v_, t.raw(), o.v_, MPFR_RNDN); }
    else mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
BigReal& BigReal::operator/=(const BigReal& o) {
    if (o.is_zero()) throw DomainError("BigReal: division by zero");
    if (prec() < o.prec()) { BigReal t(*this); mpfr_set_prec(v_, o.prec()); mpfr_div(v_, t.raw(), o.v_, MPFR_RNDN); }
    else mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal BigReal::operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(0, join(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(0, join(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(0, join(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.is_zero()) throw DomainError("BigReal: division by zero");
    BigReal r(0, join(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator+(const BigReal& a, long b) {
    BigReal r(0, a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
BigReal operator-(const BigReal& a, long b) {
    BigReal r(0, a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
BigReal operator*(const BigReal& a, long b) {
    BigReal r(0, a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
BigReal operator/(const BigReal& a, long b) {
    if (b == 0) throw DomainError("BigReal: division by zero");
    BigReal r(0, a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}
BigReal operator-(long a, const BigReal& b) {
    BigReal r(0, b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator/(long a, const BigReal& b) {
    if (b.is_zero()) throw DomainError("BigReal: division by zero");
    BigReal r(0, b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

BigReal abs(const BigReal& x) {
    BigReal r(x);
    mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}
BigReal sqrt(const BigReal& x) {
    if (x.sign() < 0) throw DomainError("sqrt: negative argument");
    BigReal r(0, x.prec());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal exp(const BigReal& x) {
    BigReal r(0, x.prec());
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal log(const BigReal& x) {
    if (x.sign() <= 0) throw DomainError("log: nonpositive argument");
    BigReal r(0, x.prec());
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal log10(const BigReal& x) {
    if (x.sign() <= 0) throw DomainError("log10: nonpositive argument");
    BigReal r(0, x.prec());
    mpfr_log10(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal sin(const BigReal& x) {
    BigReal r(0, x.prec());
    mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal cos(const BigReal& x) {
    BigReal r(0, x.prec());
    mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal atan2(const BigReal& y, const BigReal& x) {
    if (x.is_zero() && y.is_zero()) throw DomainError("atan2: both arguments zero");
    BigReal r(0, join(x, y));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal pow_int(const BigReal& x, long n) {
    BigReal r(0, x.prec());
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}
BigReal pow(const BigReal& x, const BigReal& y) {
    if (x.sign() <= 0) throw DomainError("pow: base must be positive");
    BigReal r(0, join(x, y));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
BigReal min(const BigReal& a, const BigReal& b) { return a <= b ? a : b; }
BigReal max(const BigReal& a, const BigReal& b) { return a >= b ? a : b; }

BigReal pi(mpfr_prec_t bits) {
    BigReal r(0, bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

namespace {

bool valid_decimal(std::string_view s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t mant_digits = 0;
    bool dot = false;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) { ++mant_digits; continue; }
        if (s[i] == '.' && !dot) { dot = true; continue; }
        break;
    }
    if (mant_digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != 'e' && s[i] != 'E') return false;
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    size_t exp_digits = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        ++exp_digits;
    }
    return exp_digits > 0;
}

} // namespace

BigReal parse_decimal(std::string_view text, mpfr_prec_t bits) {
    if (!valid_decimal(text)) throw ParseError("parse_decimal: malformed decimal: '" + std::string(text) + "'");
    BigReal r(0, bits);
    std::string buf(text);
    char* end = nullptr;
    mpfr_strtofr(r.raw(), buf.c_str(), &end, 10, MPFR_RNDN);
    if (end != buf.c_str() + buf.size())
        throw ParseError("parse_decimal: trailing characters in '" + buf + "'");
    if (r.is_zero()) mpfr_set_zero(r.raw(), +1); // zero carries positive sign
    return r;
}

BigReal parse_decimal(std::string_view text, const PrecisionContext& ctx) {
    return parse_decimal(text, ctx.bits());
}

namespace {

// Render with a fixed number of significant digits; mantissa trailing zeros
// kept. exp10 receives the decimal exponent of the leading digit.
std::string digits_of(const BigReal& x, int ndigits, long& exp10) {
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(ndigits), x.raw(), MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);
    exp10 = static_cast<long>(e) - 1; // mpfr convention: 0.DDD * 10^e
    return digits;
}

std::string assemble(const std::string& digits_in, long exp10) {
    std::string digits = digits_in;
    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    // strip trailing zeros (keep at least one digit)
    size_t last = digits.find_last_not_of('0');
    digits.erase(last == std::string::npos ? 1 : last + 1);

    std::string out;
    long n = static_cast<long>(digits.size());
    if (exp10 >= 0 && exp10 <= 5) {
        // positional: digits before point = exp10+1
        if (exp10 + 1 >= n) {
            out = digits + std::string(exp10 + 1 - n, '0');
        } else {
            out = digits.substr(0, exp10 + 1) + "." + digits.substr(exp10 + 1);
        }
    } else if (exp10 < 0 && exp10 >= -4) {
        out = "0." + std::string(-exp10 - 1, '0') + digits;
    } else {
        out = digits.substr(0, 1);
        if (n > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(exp10);
    }
    return neg ? "-" + out : out;
}

} // namespace

std::string format_decimal(const BigReal& x, int significant_digits) {
    if (!x.is_finite()) throw DomainError("format_decimal: non-finite value");
    if (x.is_zero()) return "0";
    long e = 0;
    std::string d = digits_of(x, significant_digits, e);
    return assemble(d, e);
}

std::string format_decimal(const BigReal& x) {
    if (!x.is_finite()) throw DomainError("format_decimal: non-finite value");
    if (x.is_zero()) return "0";
    // Shortest mantissa that reads back to the identical value at the same
    // precision. Binary search over digit counts; round-trip re-checked at
    // the end, falling back to the maximal length.
    const int max_digits = static_cast<int>(std::ceil(static_cast<double>(x.prec()) * 0.30102999566398120)) + 2;
    int lo = 1, hi = max_digits;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        long e = 0;
        std::string d = digits_of(x, mid, e);
        BigReal back = parse_decimal(assemble(d, e), x.prec());
        if (back == x) hi = mid;
        else lo = mid + 1;
    }
    long e = 0;
    std::string d = digits_of(x, lo, e);
    std::string out = assemble(d, e);
    if (!(parse_decimal(out, x.prec()) == x)) {
        d = digits_of(x, max_digits, e);
        out = assemble(d, e);
    }
    return out;
}

} // namespace hzone
