#include "hzone/manifold.hpp"

#include <cmath>
#include <ostream>

#include "hzone/series.hpp"

namespace hzone {

namespace {

// (lambda^k I - A)^{-1} r by Cramer's rule; det = (lambda^k - l1)(lambda^k - l2).
Vec2 solve_order(const Mat2& a, const BigReal& lk, const Vec2& r, const BigReal& guard) {
    BigReal m11 = lk - a.a11, m22 = lk - a.a22;
    BigReal det = m11 * m22 - a.a12 * a.a21;
    if (abs(det) < guard)
        throw DegenerateSaddleError("compute_series: near-resonant denominator at order solve");
    return {(m22 * r.x + a.a12 * r.y) / det, (a.a21 * r.x + m11 * r.y) / det};
}

} // namespace

ManifoldSeries compute_series_scaled(const MapFamily& map, const ParamPoint& p, Branch branch, int order,
                                     const PrecisionContext& ctx, const BigReal& scale) {
    if (order < 2) throw DomainError("compute_series: order must be >= 2");
    SaddleData sad = map.saddle(p, ctx);
    const bool stable = branch == Branch::stable;
    const BigReal lambda = stable ? sad.lambda_stable : sad.lambda_unstable;
    const Vec2 eig = stable ? sad.eig_stable : sad.eig_unstable;
    Mat2 a = map.jacobian_matrix(p, sad.point);

    ManifoldSeries s;
    s.branch = branch;
    s.multiplier = lambda;
    s.base = sad.point;
    s.coeff.reserve(order);
    // Orient the branch into the homoclinic half-plane x < saddle_x.
    s.coeff.push_back(Vec2{-eig.x * scale, -eig.y * scale});

    BigReal guard = ctx.degeneracy_tol();
    BigReal lk = lambda;
    for (int k = 2; k <= order; ++k) {
        lk *= lambda;
        Vec2 r{ctx.make_real(0), ctx.make_real(0)};
        for (int j = 1; 2 * j < k; ++j) {
            Vec2 q = map.quadratic_part(p, s.coeff[j - 1], s.coeff[k - j - 1]);
            r += q + q;
        }
        if (k % 2 == 0) r += map.quadratic_part(p, s.coeff[k / 2 - 1], s.coeff[k / 2 - 1]);
        s.coeff.push_back(solve_order(a, lk, r, guard));
    }

    // Preliminary evaluation radius; plan_domains validates and refines it.
    // Stable branch: half the Cauchy-Hadamard estimate from the last 20% of
    // coefficients. Unstable branch (entire): radius at which the last
    // coefficient's term reaches the rounding floor.
    int tail = std::max(2, order / 5);
    BigReal inv_rho = ctx.make_real(0);
    for (int k = order - tail + 1; k <= order; ++k) {
        BigReal mag = norm_inf(s.coeff[k - 1]);
        if (mag.is_zero()) continue;
        BigReal r = exp(log(mag) / k);
        inv_rho = max(inv_rho, r);
    }
    if (inv_rho.is_zero()) throw CapacityError("compute_series: cannot estimate radius (zero tail)");
    if (stable) {
        s.radius = 1 / (2 * inv_rho);
    } else {
        BigReal tail_mag = norm_inf(s.coeff[order - 1]);
        BigReal target = ctx.rounding_floor();
        s.radius = tail_mag.is_zero() ? 1 / inv_rho : exp((log(target) - log(tail_mag)) / order);
    }
    return s;
}

ManifoldSeries compute_series(const MapFamily& map, const ParamPoint& p, Branch branch, int order,
                              const PrecisionContext& ctx) {
    return compute_series_scaled(map, p, branch, order, ctx, ctx.make_real(1));
}

namespace {

template <class S>
TVec2<S> eval_local_impl(const ManifoldSeries& s, const S& z) {
    // one-ulp slack: z often arrives as (delta/lambda)*lambda
    if (abs(z) > s.radius + s.radius / 1048576)
        throw DomainError("eval_local: |z| exceeds the validated radius");
    S zero = zero_like(z);
    TVec2<S> acc{zero, zero};
    for (size_t k = s.coeff.size(); k-- > 0;) {
        acc.x = acc.x * z + s.coeff[k].x;
        acc.y = acc.y * z + s.coeff[k].y;
    }
    acc.x = acc.x * z + s.base.x;
    acc.y = acc.y * z + s.base.y;
    return acc;
}

template <class S>
Jet2<S> eval_local_jet_impl(const ManifoldSeries& s, const S& z) {
    if (abs(z) > s.radius + s.radius / 1048576)
        throw DomainError("eval_local_jet: |z| exceeds the validated radius");
    S zero = zero_like(z);
    TVec2<S> acc{zero, zero}, dacc{zero, zero};
    for (size_t k = s.coeff.size(); k-- > 0;) {
        dacc.x = dacc.x * z + s.coeff[k].x * static_cast<long>(k + 1);
        dacc.y = dacc.y * z + s.coeff[k].y * static_cast<long>(k + 1);
    }
    for (size_t k = s.coeff.size(); k-- > 0;) {
        acc.x = acc.x * z + s.coeff[k].x;
        acc.y = acc.y * z + s.coeff[k].y;
    }
    acc.x = acc.x * z + s.base.x;
    acc.y = acc.y * z + s.base.y;
    return {acc, dacc};
}

int continuation_steps(const ManifoldSeries& s, const BigReal& mag)
{
    if (mag <= s.radius) return 0;
    double over = mag.log10_magnitude() - s.radius.log10_magnitude();
    double per = std::log10(s.multiplier.to_double());
    return static_cast<int>(std::ceil(over / per)) + 1;
}

template <class S>
TVec2<S> eval_global_impl(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                          const DomainPlan& plan, const S& z) {
    int m = continuation_steps(s, abs(z));
    S zin = z;
    for (int i = 0; i < m; ++i) zin = zin / s.multiplier;
    while (abs(zin) > s.radius) { zin = zin / s.multiplier; ++m; }
    TVec2<S> pt = eval_local_impl(s, zin);
    for (int i = 0; i < m; ++i) {
        pt = map.apply(p, pt);
        if (norm_inf(pt - to_like(s.base, z)) > plan.box_radius)
            throw DivergenceError("eval_global_unstable: orbit left the bounding box");
    }
    return pt;
}

template <class S>
Jet2<S> eval_global_jet_impl(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                             const DomainPlan& plan, const S& z) {
    int m = continuation_steps(s, abs(z));
    S zin = z;
    BigReal scale = unit_like(abs(z));
    for (int i = 0; i < m; ++i) {
        zin = zin / s.multiplier;
        scale /= s.multiplier;
    }
    while (abs(zin) > s.radius) {
        zin = zin / s.multiplier;
        scale /= s.multiplier;
        ++m;
    }
    Jet2<S> jet = eval_local_jet_impl(s, zin);
    jet.derivative = jet.derivative * scale; // chain rule through z -> lambda^{-m} z
    for (int i = 0; i < m; ++i) {
        jet.derivative = map.jacobian_matrix(p, jet.point) * jet.derivative;
        jet.point = map.apply(p, jet.point);
        if (norm_inf(jet.point - to_like(s.base, z)) > plan.box_radius)
            throw DivergenceError("eval_global_unstable: orbit left the bounding box");
    }
    return jet;
}

} // namespace

Vec2 eval_local(const ManifoldSeries& s, const BigReal& z) { return eval_local_impl(s, z); }
CVec2 eval_local(const ManifoldSeries& s, const BigComplex& z) { return eval_local_impl(s, z); }
Jet2<BigReal> eval_local_jet(const ManifoldSeries& s, const BigReal& z) { return eval_local_jet_impl(s, z); }
Jet2<BigComplex> eval_local_jet(const ManifoldSeries& s, const BigComplex& z) { return eval_local_jet_impl(s, z); }

Vec2 eval_global_unstable(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                          const DomainPlan& plan, const BigReal& z) {
    return eval_global_impl(map, p, s, plan, z);
}
CVec2 eval_global_unstable(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                           const DomainPlan& plan, const BigComplex& z) {
    return eval_global_impl(map, p, s, plan, z);
}
Jet2<BigReal> eval_global_unstable_jet(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                                       const DomainPlan& plan, const BigReal& z) {
    return eval_global_jet_impl(map, p, s, plan, z);
}
Jet2<BigComplex> eval_global_unstable_jet(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s,
                                          const DomainPlan& plan, const BigComplex& z) {
    return eval_global_jet_impl(map, p, s, plan, z);
}

BigReal conjugacy_residual(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s, const BigReal& z) {
    Vec2 lhs = eval_local(s, z * s.multiplier);
    Vec2 rhs = map.apply(p, eval_local(s, z));
    return norm_inf(lhs - rhs);
}

PlannedManifolds plan_domains(const MapFamily& map, const ParamPoint& p, const BigReal& target_residual,
                              const PrecisionContext& ctx, int order_cap) {
    if (target_residual.sign() <= 0) throw DomainError("plan_domains: target residual must be positive");

    double digits = -target_residual.log10_magnitude();
    int order = std::max(16, static_cast<int>(std::ceil(digits / std::log10(8.0))) + 16);

    for (;;) {
        if (order > order_cap)
            throw CapacityError("plan_domains: target residual unreachable within the order cap");
        order = std::min(order, order_cap);

        PlannedManifolds out{compute_series(map, p, Branch::stable, order, ctx),
                             compute_series(map, p, Branch::unstable, order, ctx),
                             DomainPlan{}};

        // The local domains must stay well inside the homoclinic loop so the
        // section anchored at delta_s/2 lies between the saddle and the
        // companion point.
        BigReal loop_cap = norm_inf(out.stable.base - map.companion_point(p)) / 4;

        // Validate each radius empirically; shrink until the defect at the
        // edge meets the target. Too much shrinking means the order is too
        // low for this target.
        bool ok = true;
        for (ManifoldSeries* s : {&out.stable, &out.unstable}) {
            BigReal delta = min(s->radius, loop_cap);
            if (s->branch == Branch::stable) delta = min(s->radius / 4, loop_cap); // start at rho-hat/8
            int shrinks = 0;
            for (;;) {
                s->radius = delta; // eval_local checks against it
                // The defect evaluates Phi at both z and lambda*z, so the
                // unstable edge is probed from delta/lambda2 upward.
                BigReal zedge = s->branch == Branch::stable ? delta : delta / s->multiplier;
                BigReal r = max(conjugacy_residual(map, p, *s, zedge),
                                conjugacy_residual(map, p, *s, zedge * 7 / 10));
                if (r <= target_residual) break;
                delta = delta * 3 / 4;
                if (++shrinks > 120) { ok = false; break; }
            }
            if (!ok) break;
        }
        if (!ok) { order += order / 2; continue; }

        // Global-continuation budget from one traced excursion.
        Vec2 comp = map.companion_point(p);
        SaddleData sad = map.saddle(p, ctx);
        BigReal loop_scale = norm_inf(sad.point - comp);
        BigReal box = 16 * loop_scale;
        // One excursion = iterations until the distance to the saddle passes
        // its first local minimum after departure. This is robust whether
        // the branch returns along the stable manifold or spirals inward
        // off the homoclinic parameter.
        BigReal z_start = out.unstable.radius * 9 / 10;
        Vec2 pt = eval_local(out.unstable, z_start);
        bool left = false, dipped = false;
        int m_return = -1;
        BigReal d_prev = norm_inf(pt - sad.point);
        const int step_cap = 200000;
        for (int m = 1; m <= step_cap; ++m) {
            pt = map.apply(p, pt);
            BigReal d = norm_inf(pt - sad.point);
            if (d > box) throw DivergenceError("plan_domains: excursion left the bounding box");
            if (!left && d > loop_scale / 2) left = true;
            if (left) {
                if (d < d_prev) dipped = true;
                else if (dipped) { m_return = m; break; }
            }
            d_prev = d;
        }
        if (m_return < 0)
            throw DivergenceError("plan_domains: unstable excursion did not turn back within the step cap");

        out.plan.delta_stable = out.stable.radius;
        out.plan.delta_unstable = out.unstable.radius;
        out.plan.min_iterations = m_return + 8;
        out.plan.outer_bound = out.unstable.radius * pow_int(sad.lambda_unstable, out.plan.min_iterations);
        out.plan.box_radius = box;
        out.plan.order = order;
        return out;
    }
}

void dump_coefficients(const ManifoldSeries& s, std::ostream& out) {
    out << "# order,cx,cy\n";
    for (int k = 1; k <= s.order(); ++k)
        out << k << "," << format_decimal(s.coeff[k - 1].x) << "," << format_decimal(s.coeff[k - 1].y) << "\n";
}

} // namespace hzone
