#include "hzone/variational.hpp"

#include <ostream>

#include "hzone/series.hpp"

namespace hzone {

JacobianSeries jacobian_along_stable(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& stable) {
    if (stable.branch != Branch::stable)
        throw DomainError("jacobian_along_stable: series must be the stable branch");
    BigReal d0, dx, dy;
    map.det_affine(p, d0, dx, dy);

    JacobianSeries j;
    j.coeff.reserve(stable.order() + 1);
    j.coeff.push_back(d0 + dx * stable.base.x + dy * stable.base.y);
    for (int k = 1; k <= stable.order(); ++k)
        j.coeff.push_back(dx * stable.coeff[k - 1].x + dy * stable.coeff[k - 1].y);
    return j;
}

WronskianSeries wronskian_series(const JacobianSeries& jac, const BigReal& lambda_stable,
                                 const PrecisionContext& ctx) {
    if (jac.coeff.empty()) throw DomainError("wronskian_series: empty Jacobian series");
    const BigReal& j0 = jac.coeff[0];
    if (j0.sign() <= 0) throw DomainError("wronskian_series: J_0 must be positive");

    WronskianSeries w;
    w.lambda = lambda_stable;
    w.exponent = log(j0) / log(lambda_stable);
    w.coeff.reserve(jac.coeff.size());
    w.coeff.push_back(ctx.make_real(1));

    BigReal guard = ctx.degeneracy_tol();
    BigReal lam_n = ctx.make_real(1);
    for (size_t n = 1; n < jac.coeff.size(); ++n) {
        lam_n *= lambda_stable;
        BigReal denom = j0 * (lam_n - 1);
        if (abs(lam_n - 1) < guard)
            throw DegenerateSaddleError("wronskian_series: near-resonant divisor lambda1^n - 1");
        BigReal acc = ctx.make_real(0);
        for (size_t jdx = 0; jdx < n; ++jdx) acc += w.coeff[jdx] * jac.coeff[n - jdx];
        w.coeff.push_back(acc / denom);
    }
    return w;
}

BigReal eval_wronskian(const WronskianSeries& w, const BigReal& z) {
    if (z.sign() <= 0) throw DomainError("eval_wronskian: real z must be positive");
    return pow(z, w.exponent) * horner(w.coeff, z);
}

BigComplex eval_wronskian(const WronskianSeries& w, const BigComplex& z) {
    return complex_power(z, w.exponent) * horner(w.coeff, z);
}

void dump_coefficients(const WronskianSeries& w, std::ostream& out) {
    out << "# order,value (prefactor exponent " << format_decimal(w.exponent) << ")\n";
    for (size_t k = 0; k < w.coeff.size(); ++k) out << k << "," << format_decimal(w.coeff[k]) << "\n";
}

} // namespace hzone
