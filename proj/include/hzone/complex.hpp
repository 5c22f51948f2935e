#pragma once

#include "hzone/real.hpp"

namespace hzone {

// Complex value over BigReal. Hosts the analytic continuation of the
// splitting determinant to the strip |Im t| < rho; powers use the principal
// branch, with orbits kept off the negative real axis by construction.
struct BigComplex {
    BigReal re, im;

    BigComplex() = default;
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    explicit BigComplex(const BigReal& r) : re(r), im(0, r.prec()) {}
    BigComplex(long r, const PrecisionContext& ctx) : re(r, ctx), im(0, ctx) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    BigComplex operator-() const { return {-re, -im}; }

    BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator*(const BigComplex& a, const BigReal& s) { return {a.re * s, a.im * s}; }
    friend BigComplex operator*(const BigReal& s, const BigComplex& a) { return a * s; }
    friend BigComplex operator+(const BigComplex& a, const BigReal& s) { return {a.re + s, a.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigReal& s) { return {a.re - s, a.im}; }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigReal& s) { return {a.re / s, a.im / s}; }

    friend BigComplex operator+(const BigComplex& a, long b) { return {a.re + b, a.im}; }
    friend BigComplex operator-(const BigComplex& a, long b) { return {a.re - b, a.im}; }
    friend BigComplex operator*(const BigComplex& a, long b) { return {a.re * b, a.im * b}; }
    friend BigComplex operator+(long a, const BigComplex& b) { return b + a; }
    friend BigComplex operator*(long a, const BigComplex& b) { return b * a; }
    friend BigComplex operator-(long a, const BigComplex& b) { return {a - b.re, -b.im}; }

    friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re == b.re && a.im == b.im; }
};

inline BigReal unit_like(const BigReal& x) { return BigReal(1, x.prec()); }
inline BigReal zero_like(const BigReal& x) { return BigReal(0, x.prec()); }
inline BigComplex unit_like(const BigComplex& z) {
    return {BigReal(1, z.re.prec()), BigReal(0, z.re.prec())};
}
inline BigComplex zero_like(const BigComplex& z) {
    return {BigReal(0, z.re.prec()), BigReal(0, z.re.prec())};
}

BigComplex conj(const BigComplex& z);
BigReal abs(const BigComplex& z);
// Squared modulus (no square root).
BigReal norm2(const BigComplex& z);
// Principal argument, in (-pi, pi]. Throws DomainError at z = 0.
BigReal arg(const BigComplex& z);
BigComplex exp(const BigComplex& z);
// Principal logarithm; domain excludes the closed negative real axis.
BigComplex log_principal(const BigComplex& z);

// Principal-branch power z^c for real exponent c, z off the closed negative
// real axis.
BigComplex complex_power(const BigComplex& z, const BigReal& c);

// b^t for real b > 0 and complex t: exp(t * log b). The workhorse behind
// lambda^t reparameterizations.
BigComplex real_pow_complex(const BigReal& base, const BigComplex& t);

} // namespace hzone
