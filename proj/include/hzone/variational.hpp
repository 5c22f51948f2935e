#pragma once

#include "hzone/manifold.hpp"

namespace hzone {

// Coefficients of J(z) = det dF(Phi_s(z)), the map's Jacobian determinant
// along the stable manifold. coeff[0] equals lambda1*lambda2.
struct JacobianSeries {
    std::vector<BigReal> coeff;
};

// Solution of the transport equation Omega(lambda1 z) = J(z) Omega(z) of the
// form z^c (1 + sum_{k>=1} coeff[k] z^k) with c = log J_0 / log lambda1 and
// coeff[0] = 1. Normalizes the splitting determinant.
struct WronskianSeries {
    BigReal exponent;
    BigReal lambda;
    std::vector<BigReal> coeff;
};

// det dF is affine in the phase point for these families, so the composition
// with Phi_s is a per-order linear combination of the manifold coefficients.
JacobianSeries jacobian_along_stable(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& stable);

// Matching powers in Omega(lambda1 z) = J(z) Omega(z) gives, at order n,
//   J_0 lambda1^n Omega_n = sum_{j=0}^{n} Omega_j J_{n-j},
// hence Omega_n = (sum_{j<n} Omega_j J_{n-j}) / (J_0 (lambda1^n - 1)).
// The divisor is guarded against |lambda1^n - 1| collapsing.
WronskianSeries wronskian_series(const JacobianSeries& jac, const BigReal& lambda_stable,
                                 const PrecisionContext& ctx);

// z^c times the truncated series; principal branch, so z must stay off the
// closed negative real axis.
BigReal eval_wronskian(const WronskianSeries& w, const BigReal& z);
BigComplex eval_wronskian(const WronskianSeries& w, const BigComplex& z);

void dump_coefficients(const WronskianSeries& w, std::ostream& out);

} // namespace hzone
