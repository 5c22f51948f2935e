#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hzone/manifold.hpp"
#include "hzone/series.hpp"

using namespace hzone;

namespace {

// Fitted slope of log10(residual) against log10(z) over n log-spaced points
// in [zmax/span, zmax].
double residual_slope(const MapFamily& map, const ParamPoint& p, const ManifoldSeries& s, const BigReal& zmax,
                      double span, int n) {
    std::vector<double> lx, ly;
    BigReal z = zmax;
    BigReal ratio = exp(log(BigReal(static_cast<long>(span), z.prec())) / (n - 1));
    for (int i = 0; i < n; ++i) {
        BigReal r = conjugacy_residual(map, p, s, z);
        REQUIRE(r.sign() > 0);
        lx.push_back(z.log10_magnitude());
        ly.push_back(r.log10_magnitude());
        z /= ratio;
    }
    return lsq_slope(lx, ly);
}

} // namespace

TEST_CASE("order-1 coefficient solves the eigen-problem") {
    PrecisionContext ctx(50);
    auto quad = MapFamily::quadratic(ctx.make_real(0));
    ParamPoint p{parse_decimal("0.01", ctx), ctx.make_real(0)};
    ManifoldSeries s = compute_series(quad, p, Branch::stable, 8, ctx);

    // first component of the conjugacy at order 1: c1.x + c1.y = lambda1 c1.x
    CHECK(abs(s.coeff[0].x + s.coeff[0].y - s.multiplier * s.coeff[0].x) < ctx.rounding_floor() * 10);
    // oriented into the homoclinic half-plane
    CHECK(s.coeff[0].x.sign() < 0);

    ManifoldSeries u = compute_series(quad, p, Branch::unstable, 8, ctx);
    CHECK(abs(u.coeff[0].x + u.coeff[0].y - u.multiplier * u.coeff[0].x) < ctx.rounding_floor() * 10);

    CHECK_THROWS_AS(compute_series(quad, p, Branch::stable, 1, ctx), DomainError);
}

TEST_CASE("base point and real/conjugate symmetry") {
    PrecisionContext ctx(50);
    auto bog = MapFamily::bogdanov(ctx.make_real(3));
    ParamPoint p{parse_decimal("0.05", ctx), parse_decimal("0.02", ctx)};
    ManifoldSeries s = compute_series(bog, p, Branch::stable, 12, ctx);

    Vec2 at0 = eval_local(s, ctx.make_real(0));
    CHECK(norm_inf(at0 - s.base).is_zero());

    // real z gives real points; conj(z) gives conj values
    BigReal z = s.radius / 3;
    CVec2 up = eval_local(s, BigComplex(z, z / 7));
    CVec2 dn = eval_local(s, BigComplex(z, -(z / 7)));
    CHECK(abs(up.x - conj(dn.x)).is_zero());
    CHECK(abs(up.y - conj(dn.y)).is_zero());

    CHECK_THROWS_AS(eval_local(s, s.radius * 2), DomainError);
}

TEST_CASE("conjugacy residual slope meets the order") {
    PrecisionContext ctx(60);
    auto quad = MapFamily::quadratic(parse_decimal("-3", ctx));
    ParamPoint p{parse_decimal("0.01", ctx), parse_decimal("-0.035", ctx)};
    const int order = 12;

    ManifoldSeries s = compute_series(quad, p, Branch::stable, order, ctx);
    double slope_s = residual_slope(quad, p, s, s.radius, 8.0, 8);
    CHECK(slope_s >= order - 1);

    ManifoldSeries u = compute_series(quad, p, Branch::unstable, order, ctx);
    // Probe where truncation dominates rounding: radius at which the last
    // term is ~1e-28.
    BigReal tail = norm_inf(u.coeff[order - 1]);
    u.radius = exp((log(ctx.pow10(-28)) - log(tail)) / order);
    double slope_u = residual_slope(quad, p, u, u.radius / u.multiplier, 8.0, 8);
    CHECK(slope_u >= order - 1);
}

TEST_CASE("stable image lands forward along the branch") {
    PrecisionContext ctx(50);
    auto quad = MapFamily::quadratic(ctx.make_real(0));
    ParamPoint p{parse_decimal("0.01", ctx), ctx.make_real(0)};
    const int order = 14;
    ManifoldSeries s = compute_series(quad, p, Branch::stable, order, ctx);

    BigReal ds = s.radius;
    Vec2 fwd = quad.apply(p, eval_local(s, ds));
    Vec2 expect = eval_local(s, s.multiplier * ds);
    // O(delta^order) agreement, measured against the actual edge defect
    BigReal defect = conjugacy_residual(quad, p, s, ds);
    CHECK(norm_inf(fwd - expect) <= defect + ctx.rounding_floor());
    CHECK(defect < pow_int(ds / (2 * ds), order - 2)); // sanity scale
}

TEST_CASE("parameterization covariance under rescaling") {
    PrecisionContext ctx(50);
    auto bog = MapFamily::bogdanov(ctx.make_real(3));
    ParamPoint p{parse_decimal("0.05", ctx), parse_decimal("0.02", ctx)};
    const int order = 10;
    BigReal scale = parse_decimal("0.37", ctx);

    ManifoldSeries a = compute_series(bog, p, Branch::unstable, order, ctx);
    ManifoldSeries b = compute_series_scaled(bog, p, Branch::unstable, order, ctx, scale);

    BigReal sk = scale;
    for (int k = 1; k <= order; ++k) {
        CHECK(norm_inf(b.coeff[k - 1] - Vec2{a.coeff[k - 1].x * sk, a.coeff[k - 1].y * sk})
              < ctx.rounding_floor() * max(ctx.make_real(1), norm_inf(a.coeff[k - 1])) * 100);
        sk *= scale;
    }

    // evaluated set unchanged under z -> z/scale
    BigReal z = min(a.radius, b.radius) / 2;
    Vec2 va = eval_local(a, z * scale);
    Vec2 vb = eval_local(b, z);
    CHECK(norm_inf(va - vb) < ctx.rounding_floor() * 100);
}

TEST_CASE("unstable coefficients decay like an entire function") {
    PrecisionContext ctx(60);
    auto quad = MapFamily::quadratic(ctx.make_real(0));
    ParamPoint p{parse_decimal("0.04", ctx), ctx.make_real(0)};
    const int order = 40;
    ManifoldSeries u = compute_series(quad, p, Branch::unstable, order, ctx);

    // |coef_k|^{1/k} trends down over the back half
    std::vector<double> roots;
    for (int k = order / 2; k <= order; ++k) {
        BigReal m = norm_inf(u.coeff[k - 1]);
        roots.push_back(m.log10_magnitude() / k);
    }
    for (size_t i = 1; i < roots.size(); ++i) CHECK(roots[i] < roots[i - 1] + 1e-12);
}

TEST_CASE("global evaluation agrees with local inside the disk") {
    PrecisionContext ctx(60);
    auto bog = MapFamily::bogdanov(ctx.make_real(3));
    ParamPoint p{parse_decimal("0.05", ctx), parse_decimal("0.1286", ctx)};
    PlannedManifolds pm = plan_domains(bog, p, ctx.pow10(-45), ctx);

    BigReal z = pm.plan.delta_unstable / 2;
    Vec2 loc = eval_local(pm.unstable, z);
    Vec2 glob = eval_global_unstable(bog, p, pm.unstable, pm.plan, z);
    CHECK(norm_inf(loc - glob).is_zero()); // m = 0 path is the same code

    // self-consistency at two continuation depths: F(P(z)) = P(lambda2 z)
    BigReal zbig = pm.plan.delta_unstable * 40;
    Vec2 a = bog.apply(p, eval_global_unstable(bog, p, pm.unstable, pm.plan, zbig));
    Vec2 b = eval_global_unstable(bog, p, pm.unstable, pm.plan, zbig * pm.unstable.multiplier);
    CHECK(norm_inf(a - b) < ctx.pow10(-40));

    // jet derivative against a central difference
    BigReal h = zbig * ctx.pow10(-20);
    Jet2<BigReal> jet = eval_global_unstable_jet(bog, p, pm.unstable, pm.plan, zbig);
    Vec2 plus = eval_global_unstable(bog, p, pm.unstable, pm.plan, zbig + h);
    Vec2 minus = eval_global_unstable(bog, p, pm.unstable, pm.plan, zbig - h);
    Vec2 fd{(plus.x - minus.x) / (2 * h), (plus.y - minus.y) / (2 * h)};
    CHECK(norm_inf(fd - jet.derivative) / norm_inf(jet.derivative) < ctx.pow10(-15));
}

TEST_CASE("unstable branch makes a homoclinic excursion") {
    PrecisionContext ctx(60);
    auto bog = MapFamily::bogdanov(ctx.make_real(3));
    BigReal a = parse_decimal("0.01", ctx);
    ParamPoint p{a, bog.predicted_homoclinic_slave(a)};
    PlannedManifolds pm = plan_domains(bog, p, ctx.pow10(-40), ctx);

    // The traced excursion returned near the saddle, so the plan's outer
    // bound reaches the return region.
    CHECK(pm.plan.min_iterations > 10);
    SaddleData sad = bog.saddle(p, ctx);

    // March to the outer bound and record the closest return to the local
    // stable manifold's anchor scale.
    Vec2 pt = eval_global_unstable(bog, p, pm.unstable, pm.plan, pm.plan.outer_bound);
    BigReal dist = norm_inf(pt - sad.point);
    CHECK(dist < 8 * norm_inf(pm.unstable.base - bog.companion_point(p))); // still inside the loop region
}

TEST_CASE("plan_domains meets its residual target") {
    PrecisionContext ctx(60);
    auto quad = MapFamily::quadratic(parse_decimal("-3", ctx));
    BigReal mu = parse_decimal("4e-3", ctx);
    ParamPoint p{mu, quad.predicted_homoclinic_slave(mu)};
    BigReal target = ctx.pow10(-50);
    PlannedManifolds pm = plan_domains(quad, p, target, ctx);

    CHECK(conjugacy_residual(quad, p, pm.stable, pm.plan.delta_stable) <= target);
    BigReal zu = pm.plan.delta_unstable / pm.unstable.multiplier;
    CHECK(conjugacy_residual(quad, p, pm.unstable, zu) <= target);
    CHECK(pm.plan.delta_stable.sign() > 0);
    CHECK(pm.plan.min_iterations >= 1);
    CHECK(pm.plan.outer_bound > pm.plan.delta_unstable);

    CHECK_THROWS_AS(plan_domains(quad, p, ctx.make_real(0), ctx), DomainError);
    CHECK_THROWS_AS(plan_domains(quad, p, ctx.pow10(-200), ctx, 40), CapacityError);
}

TEST_CASE("coefficient dump is audit-ready csv") {
    PrecisionContext ctx(50);
    auto quad = MapFamily::quadratic(ctx.make_real(0));
    ParamPoint p{parse_decimal("0.01", ctx), ctx.make_real(0)};
    ManifoldSeries s = compute_series(quad, p, Branch::stable, 6, ctx);
    std::ostringstream out;
    dump_coefficients(s, out);
    std::istringstream in(out.str());
    std::string header, row1;
    std::getline(in, header);
    std::getline(in, row1);
    CHECK(header == "# order,cx,cy");
    CHECK(row1.substr(0, 2) == "1,");
    // every coefficient row parses back exactly
    std::string x = row1.substr(2, row1.find(',', 2) - 2);
    CHECK(parse_decimal(x, ctx) == s.coeff[0].x);
}

TEST_CASE("doubling the order never hurts the edge residual") {
    PrecisionContext ctx(60);
    auto bog = MapFamily::bogdanov(ctx.make_real(3));
    ParamPoint p{parse_decimal("0.05", ctx), parse_decimal("0.1286", ctx)};

    ManifoldSeries s1 = compute_series(bog, p, Branch::stable, 12, ctx);
    ManifoldSeries s2 = compute_series(bog, p, Branch::stable, 24, ctx);
    s2.radius = s1.radius; // compare at the same edge
    BigReal z = s1.radius / 2;
    CHECK(conjugacy_residual(bog, p, s2, z) <= conjugacy_residual(bog, p, s1, z));
}
