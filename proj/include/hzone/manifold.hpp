#pragma once

#include <iosfwd>
#include <vector>

#include "hzone/maps.hpp"

namespace hzone {

enum class Branch { stable, unstable };

// Truncated power-series parameterization of one saddle-manifold branch:
//   Phi(z) = base + sum_{k>=1} coeff[k-1] z^k,  Phi(lambda z) = F(Phi(z)).
// The order-1 coefficient is the eigenvector oriented into the half-plane
// x < saddle_x, which is where all three families develop their homoclinic
// loop; with that choice the homoclinic branch is z > 0 and the Wronskian
// prefactor z^c stays on its principal branch.
struct ManifoldSeries {
    Branch branch;
    BigReal multiplier; // lambda1 (stable) or lambda2 (unstable)
    Vec2 base;          // saddle location
    std::vector<Vec2> coeff;
    BigReal radius;     // validated evaluation radius (delta)

    int order() const { return static_cast<int>(coeff.size()); }
};

// Evaluation domains and continuation budget for one parameter job.
struct DomainPlan {
    BigReal delta_stable;
    BigReal delta_unstable;
    int min_iterations;  // m_0: iterations bridging delta_u to the outer bound
    BigReal outer_bound; // z_0
    BigReal box_radius;  // escape guard for global continuation
    int order;           // N_max in force
};

struct PlannedManifolds {
    ManifoldSeries stable;
    ManifoldSeries unstable;
    DomainPlan plan;
};

template <class S>
struct Jet2 {
    TVec2<S> point;
    TVec2<S> derivative; // d/dz
};

// Solves the conjugacy Phi(lambda z) = F(Phi(z)) order by order. The order-k
// coefficient solves (lambda^k I - A) c_k = r_k with A the saddle Jacobian
// and r_k the order-k part of the quadratic terms; the determinant
// (lambda^k - lambda1)(lambda^k - lambda2) is nonzero by hyperbolicity and
// guarded against near-resonance.
ManifoldSeries compute_series(const MapFamily& map, const ParamPoint& p, Branch branch, int order,
                              const PrecisionContext& ctx);
// Same with the order-1 coefficient rescaled by `scale` (coefficient k picks
// up scale^k; the manifold set is unchanged under z -> z/scale).
ManifoldSeries compute_series_scaled(const MapFamily& map, const ParamPoint& p, Branch branch, int order,
                                     const PrecisionContext& ctx, const BigReal& scale);

Vec2 eval_local(const ManifoldSeries& s, const BigReal& z);
CVec2 eval_local(const ManifoldSeries& s, const BigComplex& z);
Jet2<BigReal> eval_local_jet(const ManifoldSeries& s, const BigReal& z);
Jet2<BigComplex> eval_local_jet(const ManifoldSeries& s, const BigComplex& z);

// F^m(Phi_u(lambda2^{-m} z)) with m the smallest iteration count bringing z
// inside delta_u. Throws DivergenceError if the orbit leaves the plan's box.
Vec2 eval_global_unstable(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                          const DomainPlan& plan, const BigReal& z);
CVec2 eval_global_unstable(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                           const DomainPlan& plan, const BigComplex& z);
Jet2<BigReal> eval_global_unstable_jet(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                                       const DomainPlan& plan, const BigReal& z);
Jet2<BigComplex> eval_global_unstable_jet(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                                          const DomainPlan& plan, const BigComplex& z);

// ||Phi(lambda z) - F(Phi(z))||_inf, the defect of the truncated conjugacy.
BigReal conjugacy_residual(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s, const BigReal& z);

// Chooses series order and evaluation radii so the conjugacy defect at the
// domain edges stays at or below target_residual, then traces one unstable
// excursion to size the global-continuation budget.
PlannedManifolds plan_domains(const MapFamily& map, const ParamPoint& p, const BigReal& target_residual,
                              const PrecisionContext& ctx, int order_cap = 800);

// Audit dump: one `order,cx,cy` row per coefficient.
void dump_coefficients(const ManifoldSeries& s, std::ostream& out);

} // namespace hzone
