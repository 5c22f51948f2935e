#pragma once

#include <concepts>

#include "hzone/complex.hpp"

namespace hzone {

// Planar points / vectors over BigReal or BigComplex.
template <class S>
struct TVec2 {
    S x, y;

    TVec2() = default;
    TVec2(S xx, S yy) : x(std::move(xx)), y(std::move(yy)) {}

    TVec2& operator+=(const TVec2& o) { x += o.x; y += o.y; return *this; }
    TVec2& operator-=(const TVec2& o) { x -= o.x; y -= o.y; return *this; }

    friend TVec2 operator+(const TVec2& a, const TVec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend TVec2 operator-(const TVec2& a, const TVec2& b) { return {a.x - b.x, a.y - b.y}; }
    TVec2 operator-() const { return {-x, -y}; }
};

using Vec2 = TVec2<BigReal>;
using CVec2 = TVec2<BigComplex>;

template <class S>
TVec2<S> operator*(const TVec2<S>& a, const BigReal& s) { return {a.x * s, a.y * s}; }
template <class S>
TVec2<S> operator*(const BigReal& s, const TVec2<S>& a) { return a * s; }
template <class S>
TVec2<S> operator*(const TVec2<S>& a, long s) { return {a.x * s, a.y * s}; }
inline CVec2 operator*(const CVec2& a, const BigComplex& s) { return {a.x * s, a.y * s}; }
inline CVec2 operator*(const BigComplex& s, const CVec2& a) { return a * s; }

inline CVec2 to_complex(const Vec2& v) { return {BigComplex(v.x), BigComplex(v.y)}; }
inline Vec2 real_part(const CVec2& v) { return {v.x.re, v.y.re}; }

// Promote a real point to the scalar kind of a witness value.
inline const Vec2& to_like(const Vec2& v, const BigReal&) { return v; }
inline CVec2 to_like(const Vec2& v, const BigComplex&) { return to_complex(v); }

// Determinant of the 2x2 matrix with columns a, b.
template <class S>
S cross(const TVec2<S>& a, const TVec2<S>& b) { return a.x * b.y - a.y * b.x; }

inline BigReal norm_inf(const Vec2& v) { return max(abs(v.x), abs(v.y)); }
inline BigReal norm_inf(const CVec2& v) { return max(abs(v.x), abs(v.y)); }
inline BigReal norm2sq(const Vec2& v) { return v.x * v.x + v.y * v.y; }

// 2x2 matrix, column-action on TVec2.
template <class S>
struct TMat2 {
    S a11, a12, a21, a22;

    template <class V>
    auto operator*(const TVec2<V>& v) const {
        using R = decltype(a11 * v.x + a12 * v.y);
        return TVec2<R>{a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
    S det() const { return a11 * a22 - a12 * a21; }
    S trace() const { return a11 + a22; }
};

using Mat2 = TMat2<BigReal>;
using CMat2 = TMat2<BigComplex>;

} // namespace hzone
