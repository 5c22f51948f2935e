#include "hzone/complex.hpp"

namespace hzone {

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigReal d = norm2(b);
    if (d.is_zero()) throw DomainError("BigComplex: division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigReal norm2(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

BigReal abs(const BigComplex& z) {
    BigReal r(0, std::max(z.re.prec(), z.im.prec()));
    mpfr_hypot(r.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    return r;
}

BigReal arg(const BigComplex& z) { return atan2(z.im, z.re); }

BigComplex exp(const BigComplex& z) {
    BigReal m = exp(z.re);
    if (z.im.is_zero()) return {m, BigReal(0, m.prec())};
    return {m * cos(z.im), m * sin(z.im)};
}

BigComplex log_principal(const BigComplex& z) {
    if (z.is_zero()) throw DomainError("log_principal: zero argument");
    if (z.im.is_zero() && z.re.sign() < 0)
        throw DomainError("log_principal: argument on the negative real axis");
    return {log(abs(z)), arg(z)};
}

BigComplex complex_power(const BigComplex& z, const BigReal& c) {
    if (z.is_zero()) throw DomainError("complex_power: zero base");
    if (z.im.is_zero()) {
        if (z.re.sign() < 0) throw DomainError("complex_power: base on the negative real axis");
        return {pow(z.re, c), BigReal(0, z.re.prec())};
    }
    return exp(log_principal(z) * c);
}

BigComplex real_pow_complex(const BigReal& base, const BigComplex& t) {
    if (base.sign() <= 0) throw DomainError("real_pow_complex: base must be positive");
    if (t.im.is_zero()) return {pow(base, t.re), BigReal(0, std::max(base.prec(), t.re.prec()))};
    return exp(t * log(base));
}

} // namespace hzone
