#pragma once

#include <cmath>
#include <vector>

#include "hzone/vec2.hpp"

namespace hzone {

// Horner evaluation of sum_{k>=0} c[k] z^k for real coefficients at a real
// or complex point.
inline BigReal horner(const std::vector<BigReal>& c, const BigReal& z) {
    BigReal acc(0, z.prec());
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

inline BigComplex horner(const std::vector<BigReal>& c, const BigComplex& z) {
    BigReal zero(0, z.re.prec());
    BigComplex acc(zero, zero);
    for (size_t k = c.size(); k-- > 0;) {
        acc = acc * z;
        acc.re += c[k];
    }
    return acc;
}

// Least-squares slope of y against x (double precision; used on log-scale
// diagnostics where a percent-level slope is all that matters).
inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double d = n * sxx - sx * sx;
    return (n * sxy - sx * sy) / d;
}

inline double correlation(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double cxy = 0, cxx = 0, cyy = 0;
    for (size_t i = 0; i < n; ++i) {
        cxy += (x[i] - mx) * (y[i] - my);
        cxx += (x[i] - mx) * (x[i] - mx);
        cyy += (y[i] - my) * (y[i] - my);
    }
    return cxy / std::sqrt(cxx * cyy);
}

} // namespace hzone
