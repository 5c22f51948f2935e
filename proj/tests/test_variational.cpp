#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hzone/series.hpp"
#include "hzone/variational.hpp"

using namespace hzone;

namespace {

struct Setup {
    PrecisionContext ctx{60};
    MapFamily map = MapFamily::quadratic(BigReal());
    ParamPoint p{BigReal(), BigReal()};
    ManifoldSeries stable;

    Setup(MapFamily m, ParamPoint pp, int order) : map(std::move(m)), p(std::move(pp)) {
        stable = compute_series(map, p, Branch::stable, order, ctx);
    }
};

} // namespace

TEST_CASE("quadratic jacobian series has the affine coefficients") {
    PrecisionContext ctx(60);
    BigReal gamma = parse_decimal("-3", ctx);
    auto quad = MapFamily::quadratic(gamma);
    ParamPoint p{parse_decimal("0.01", ctx), parse_decimal("-0.035", ctx)};
    ManifoldSeries s = compute_series(quad, p, Branch::stable, 16, ctx);
    JacobianSeries j = jacobian_along_stable(quad, p, s);

    // J_0 = 1 + nu + (gamma-2) sqrt(mu)
    BigReal j0 = 1 + p.slave + (gamma - 2) * sqrt(p.main);
    CHECK(abs(j.coeff[0] - j0) < ctx.rounding_floor());
    // J_k = (gamma-2) phi_k - gamma psi_k
    for (int k = 1; k <= 16; ++k) {
        BigReal jk = (gamma - 2) * s.coeff[k - 1].x - gamma * s.coeff[k - 1].y;
        CHECK(abs(j.coeff[k] - jk) < ctx.rounding_floor() * max(ctx.make_real(1), abs(jk)));
    }

    // J_0 equals lambda1*lambda2 = det at the saddle
    SaddleData sad = quad.saddle(p, ctx);
    CHECK(abs(j.coeff[0] - sad.lambda_stable * sad.lambda_unstable) < ctx.pow10(-(ctx.digits() - 5)));
}

TEST_CASE("jacobian series matches pointwise determinants") {
    PrecisionContext ctx(60);
    auto bog = MapFamily::bogdanov(parse_decimal("3", ctx));
    ParamPoint p{parse_decimal("0.05", ctx), parse_decimal("0.1286", ctx)};
    ManifoldSeries s = compute_series(bog, p, Branch::stable, 24, ctx);
    JacobianSeries j = jacobian_along_stable(bog, p, s);

    for (int i = 1; i <= 5; ++i) {
        BigReal z = s.radius * i / 5;
        BigReal series_val = horner(j.coeff, z);
        BigReal det_val = bog.jacobian_matrix(p, eval_local(s, z)).det();
        CHECK(abs(series_val - det_val) < ctx.pow10(-(ctx.digits() - 5)));
    }
}

TEST_CASE("henon jacobian series is constant") {
    PrecisionContext ctx(60);
    auto hen = MapFamily::henon();
    ParamPoint p{parse_decimal("0.998", ctx), parse_decimal("1.0005", ctx)};
    ManifoldSeries s = compute_series(hen, p, Branch::stable, 12, ctx);
    JacobianSeries j = jacobian_along_stable(hen, p, s);
    CHECK(j.coeff[0] == p.slave);
    for (size_t k = 1; k < j.coeff.size(); ++k) CHECK(j.coeff[k].is_zero());

    // separable solution: Omega(z) = z^{log b~ / log lambda1}, no series part
    SaddleData sad = hen.saddle(p, ctx);
    WronskianSeries w = wronskian_series(j, sad.lambda_stable, ctx);
    CHECK(abs(w.exponent - log(p.slave) / log(sad.lambda_stable)) < ctx.rounding_floor() * 10);
    for (size_t k = 1; k < w.coeff.size(); ++k) CHECK(w.coeff[k].is_zero());

    BigReal z = parse_decimal("0.37", ctx);
    CHECK(abs(eval_wronskian(w, z) - pow(z, w.exponent)).is_zero());
}

TEST_CASE("order-1 wronskian coefficient from the functional equation") {
    PrecisionContext ctx(60);
    auto quad = MapFamily::quadratic(parse_decimal("-3", ctx));
    ParamPoint p{parse_decimal("0.01", ctx), parse_decimal("-0.035", ctx)};
    ManifoldSeries s = compute_series(quad, p, Branch::stable, 12, ctx);
    JacobianSeries j = jacobian_along_stable(quad, p, s);
    SaddleData sad = quad.saddle(p, ctx);
    WronskianSeries w = wronskian_series(j, sad.lambda_stable, ctx);

    // hand expansion at order 1: Omega_1 = J_1 / (J_0 (lambda1 - 1))
    BigReal expect = j.coeff[1] / (j.coeff[0] * (sad.lambda_stable - 1));
    CHECK(abs(w.coeff[1] - expect) < ctx.rounding_floor() * max(ctx.make_real(1), abs(expect)) * 10);
    CHECK(w.coeff[0] == ctx.make_real(1));
}

TEST_CASE("functional equation residual drops at series order") {
    PrecisionContext ctx(60);
    auto quad = MapFamily::quadratic(parse_decimal("-3", ctx));
    ParamPoint p{parse_decimal("0.01", ctx), parse_decimal("-0.035", ctx)};
    const int order = 12;
    ManifoldSeries s = compute_series(quad, p, Branch::stable, order, ctx);
    JacobianSeries j = jacobian_along_stable(quad, p, s);
    SaddleData sad = quad.saddle(p, ctx);
    WronskianSeries w = wronskian_series(j, sad.lambda_stable, ctx);

    // |Omega(lambda1 z) - J(z) Omega(z)| ~ z^{order}: slope fit on log-log
    std::vector<double> lx, ly;
    BigReal z = s.radius / 2;
    for (int i = 0; i < 8; ++i) {
        BigReal lhs = eval_wronskian(w, sad.lambda_stable * z);
        BigReal rhs = horner(j.coeff, z) * eval_wronskian(w, z);
        BigReal r = abs(lhs - rhs);
        REQUIRE(r.sign() > 0);
        lx.push_back(z.log10_magnitude());
        ly.push_back(r.log10_magnitude());
        z = z * 3 / 4;
    }
    double slope = lsq_slope(lx, ly);
    CHECK(slope >= order - 1);

    // relative residual within the invariant's envelope at fixed points
    BigReal zs = s.radius / 2;
    BigReal lhs = eval_wronskian(w, sad.lambda_stable * zs);
    BigReal rhs = horner(j.coeff, zs) * eval_wronskian(w, zs);
    BigReal tail = abs(w.coeff[order]) * pow_int(s.radius, order);
    CHECK(abs(lhs - rhs) / abs(eval_wronskian(w, zs)) < 10 * tail);
}

TEST_CASE("wronskian ratio reproduces the jacobian") {
    PrecisionContext ctx(60);
    auto bog = MapFamily::bogdanov(parse_decimal("3", ctx));
    ParamPoint p{parse_decimal("0.05", ctx), parse_decimal("0.1286", ctx)};
    const int order = 20;
    ManifoldSeries s = compute_series(bog, p, Branch::stable, order, ctx);
    JacobianSeries j = jacobian_along_stable(bog, p, s);
    SaddleData sad = bog.saddle(p, ctx);
    WronskianSeries w = wronskian_series(j, sad.lambda_stable, ctx);

    for (int i = 1; i <= 5; ++i) {
        BigReal z = s.radius * i / 8;
        BigReal ratio = eval_wronskian(w, sad.lambda_stable * z) / eval_wronskian(w, z);
        BigReal jz = horner(j.coeff, z);
        CHECK(abs(ratio - jz) / jz < pow_int(z / s.radius, order - 2));
    }
}

TEST_CASE("complex wronskian evaluation") {
    PrecisionContext ctx(60);
    auto quad = MapFamily::quadratic(parse_decimal("-3", ctx));
    ParamPoint p{parse_decimal("0.01", ctx), parse_decimal("-0.035", ctx)};
    ManifoldSeries s = compute_series(quad, p, Branch::stable, 12, ctx);
    JacobianSeries j = jacobian_along_stable(quad, p, s);
    SaddleData sad = quad.saddle(p, ctx);
    WronskianSeries w = wronskian_series(j, sad.lambda_stable, ctx);

    // prefactor is 1 at z = 1; the value is 1 + sum of coefficients
    BigReal sum = ctx.make_real(0);
    for (auto& c : w.coeff) sum += c;
    WronskianSeries wide = w;
    CHECK(abs(eval_wronskian(wide, ctx.make_real(1)) - sum) < ctx.rounding_floor() * max(abs(sum), ctx.make_real(1)) * 10);

    // conjugate symmetry off the axis
    BigComplex z(parse_decimal("0.002", ctx), parse_decimal("0.0005", ctx));
    BigComplex up = eval_wronskian(w, z);
    BigComplex dn = eval_wronskian(w, conj(z));
    CHECK(abs(up - conj(dn)).is_zero());

    // branch cut rejected
    CHECK_THROWS_AS(eval_wronskian(w, BigComplex(-1, ctx)), DomainError);
    CHECK_THROWS_AS(eval_wronskian(w, ctx.make_real(0)), DomainError);
}

TEST_CASE("wronskian coefficient dump round-trips") {
    PrecisionContext ctx(50);
    auto hen = MapFamily::henon();
    ParamPoint p{parse_decimal("0.995", ctx), parse_decimal("1.0002", ctx)};
    ManifoldSeries s = compute_series(hen, p, Branch::stable, 6, ctx);
    WronskianSeries w = wronskian_series(jacobian_along_stable(hen, p, s), hen.saddle(p, ctx).lambda_stable, ctx);
    std::ostringstream out;
    dump_coefficients(w, out);
    std::istringstream in(out.str());
    std::string header, row0;
    std::getline(in, header);
    std::getline(in, row0);
    CHECK(header.find("exponent") != std::string::npos);
    CHECK(row0 == "0,1");
}

TEST_CASE("determinant transport links the modules") {
    // det dF at Phi_s(z) from the maps module equals J(z) evaluated from the
    // variational series, tying the three modules together.
    PrecisionContext ctx(60);
    auto hen = MapFamily::henon();
    ParamPoint p{parse_decimal("0.995", ctx), parse_decimal("1.0002", ctx)};
    ManifoldSeries s = compute_series(hen, p, Branch::stable, 10, ctx);
    JacobianSeries j = jacobian_along_stable(hen, p, s);
    BigReal z = s.radius / 3;
    CHECK(abs(horner(j.coeff, z) - hen.jacobian_matrix(p, eval_local(s, z)).det()) < ctx.pow10(-(ctx.digits() - 5)));
}
