#include "hzone/maps.hpp"

#include <cmath>

namespace hzone {

MapFamily MapFamily::from_name(std::string_view name, std::string_view gamma_text, const PrecisionContext& ctx) {
    if (name == "quadratic") return quadratic(parse_decimal(gamma_text, ctx));
    if (name == "bogdanov") return bogdanov(parse_decimal(gamma_text, ctx));
    if (name == "henon") return henon();
    throw ParseError("unknown family '" + std::string(name) + "' (expected quadratic|bogdanov|henon)");
}

std::string MapFamily::name() const {
    switch (family_) {
        case Family::quadratic: return "quadratic";
        case Family::bogdanov: return "bogdanov";
        case Family::henon: return "henon";
    }
    return "?";
}

bool MapFamily::main_admissible(const BigReal& main) const {
    // Quadratic/Bogdanov: saddle exists for main > 0. Henon: the saddle and
    // its homoclinic zone live at a~ < 1 (where the unfolding scale 1 - a~
    // is positive).
    if (family_ == Family::henon) return main < 1;
    return main.sign() > 0;
}

namespace {

Vec2 unit_positive_x(Vec2 v) {
    BigReal n = sqrt(norm2sq(v));
    v.x /= n;
    v.y /= n;
    if (v.x.sign() < 0) { v.x = -v.x; v.y = -v.y; }
    return v;
}

} // namespace

SaddleData MapFamily::saddle(const ParamPoint& p, const PrecisionContext& ctx) const {
    if (!main_admissible(p.main)) throw DomainError("saddle: main parameter outside admissible range");

    SaddleData s;
    BigReal half = ctx.make_real(1) / 2;
    switch (family_) {
        case Family::quadratic: {
            // S = (sqrt(mu), 0); multipliers from the explicit formula
            // lambda = (2 + nu + gamma sqrt(mu) -+ sqrt((gamma sqrt(mu)+nu)^2 + 8 sqrt(mu)))/2.
            BigReal rmu = sqrt(p.main);
            s.point = {rmu, ctx.make_real(0)};
            BigReal b = shape_ * rmu + p.slave;
            BigReal disc = sqrt(b * b + 8 * rmu);
            s.lambda_stable = (b + 2 - disc) * half;
            s.lambda_unstable = (b + 2 + disc) * half;
            break;
        }
        case Family::bogdanov: {
            // S = (0,0); trace 2+a+b, determinant 1+b.
            s.point = {ctx.make_real(0), ctx.make_real(0)};
            BigReal sum = p.main + p.slave;
            BigReal disc = sqrt(sum * sum + 4 * p.main);
            s.lambda_stable = (sum + 2 - disc) * half;
            s.lambda_unstable = (sum + 2 + disc) * half;
            break;
        }
        case Family::henon: {
            // Fixed points solve a~ v^2 - (1 + b~) v + 1 = 0 on the diagonal
            // u = v; the larger root carries trace 2 a~ v > 2 and is the
            // saddle.
            BigReal bp1 = p.slave + 1;
            BigReal disc2 = bp1 * bp1 - 4 * p.main;
            if (disc2.sign() <= 0) throw DomainError("saddle: Henon fixed points are complex here");
            BigReal v = (bp1 + sqrt(disc2)) / (2 * p.main);
            s.point = {v, v};
            BigReal av = p.main * v;
            BigReal disc = sqrt(av * av - p.slave);
            s.lambda_stable = av - disc;
            s.lambda_unstable = av + disc;
            break;
        }
    }

    BigReal tol = ctx.degeneracy_tol();
    if (abs(s.lambda_stable - 1) < tol || abs(s.lambda_unstable - 1) < tol)
        throw DegenerateSaddleError("saddle: multiplier within tolerance of 1");
    if (!(s.lambda_stable < 1 && s.lambda_unstable > 1))
        throw DegenerateSaddleError("saddle: multipliers are not split around 1");

    Mat2 a = jacobian_matrix(p, s.point);
    // First-row equation of (A - lambda I) v = 0; a12 is 1 or 1+b here, so
    // this row is well conditioned for all three families.
    auto eigvec = [&](const BigReal& lambda) {
        return unit_positive_x(Vec2{-a.a12, a.a11 - lambda});
    };
    s.eig_stable = eigvec(s.lambda_stable);
    s.eig_unstable = eigvec(s.lambda_unstable);
    return s;
}

Vec2 MapFamily::companion_point(const ParamPoint& p) const {
    switch (family_) {
        case Family::quadratic: {
            BigReal rmu = sqrt(p.main);
            return {-rmu, zero_like(rmu)};
        }
        case Family::bogdanov:
            return {-p.main, zero_like(p.main)};
        case Family::henon: {
            BigReal bp1 = p.slave + 1;
            BigReal v = (bp1 - sqrt(bp1 * bp1 - 4 * p.main)) / (2 * p.main);
            return {v, v};
        }
    }
    throw Error("unreachable family");
}

BigReal MapFamily::unfolding_scale(const BigReal& main) const {
    switch (family_) {
        case Family::quadratic: return main;
        case Family::bogdanov: return main * main / 4;
        case Family::henon: return abs(1 - main);
    }
    throw Error("unreachable family");
}

BigReal MapFamily::shape_effective(mpfr_prec_t bits) const {
    switch (family_) {
        case Family::quadratic: return shape_ - 2;
        case Family::bogdanov: return shape_;
        case Family::henon: return BigReal(0, bits);
    }
    throw Error("unreachable family");
}

BigReal MapFamily::leading_width(const BigReal& main) const {
    BigReal mu = unfolding_scale(main);
    if (mu.sign() <= 0) throw DomainError("leading_width: unfolding scale must be positive");
    mpfr_prec_t bits = mu.prec();
    BigReal g = shape_effective(bits);
    BigReal pi2 = pi(bits) * pi(bits);
    BigReal root2 = sqrt(BigReal(2, bits));
    BigReal q = sqrt(sqrt(mu)); // mu^{1/4}
    BigReal prefactor = BigReal(5, bits) / (6 * root2 * (mu * q));
    return prefactor * exp(-(root2 * pi2) / q) * exp(-(6 * pi2 * g) / 7);
}

double MapFamily::leading_width_log10(double main) const {
    double mu = 0, g = 0;
    switch (family_) {
        case Family::quadratic: mu = main; g = shape_.to_double() - 2; break;
        case Family::bogdanov: mu = main * main / 4; g = shape_.to_double(); break;
        case Family::henon: mu = std::fabs(1 - main); g = 0; break;
    }
    if (mu <= 0) throw DomainError("leading_width_log10: unfolding scale must be positive");
    const double pi2 = 9.869604401089358;
    const double ln10 = 2.302585092994046;
    double q = std::pow(mu, 0.25);
    return std::log10(5.0 / (6.0 * std::sqrt(2.0))) - 1.25 * std::log10(mu)
         - (std::sqrt(2.0) * pi2 / q + 6.0 * pi2 * g / 7.0) / ln10;
}

BigReal MapFamily::predicted_homoclinic_slave(const BigReal& main) const {
    switch (family_) {
        case Family::quadratic: return (shape_ - 2) * sqrt(main) * 5 / 7;
        case Family::bogdanov: return shape_ * main * 6 / 7;
        case Family::henon: return BigReal(1, main.prec());
    }
    throw Error("unreachable family");
}

NormalFormParams MapFamily::to_normal_form(const ParamPoint& p) const {
    switch (family_) {
        case Family::quadratic:
            return {p.main, p.slave, shape_};
        case Family::bogdanov: {
            BigReal gamma = shape_ + 2;
            return {p.main * p.main / 4, p.main + p.slave - gamma * p.main / 2, gamma};
        }
        case Family::henon: {
            BigReal nu = p.slave - 1;
            BigReal half_nu = nu / 2;
            return {(half_nu + 1) * (half_nu + 1) - p.main, nu, BigReal(2, p.main.prec())};
        }
    }
    throw Error("unreachable family");
}

void MapFamily::det_affine(const ParamPoint& p, BigReal& d0, BigReal& dx, BigReal& dy) const {
    mpfr_prec_t bits = p.main.prec();
    switch (family_) {
        case Family::quadratic:
            d0 = p.slave + 1;
            dx = shape_ - 2;
            dy = -shape_;
            return;
        case Family::bogdanov:
            d0 = p.slave + 1;
            dx = shape_;
            dy = BigReal(0, bits);
            return;
        case Family::henon:
            d0 = p.slave;
            dx = BigReal(0, bits);
            dy = BigReal(0, bits);
            return;
    }
    throw Error("unreachable family");
}

Vec2 MapFamily::quadratic_part(const ParamPoint& p, const Vec2& u, const Vec2& v) const {
    switch (family_) {
        case Family::quadratic: {
            BigReal q = u.x * v.x + shape_ * (u.x * v.y + u.y * v.x) / 2;
            return {zero_like(q), q};
        }
        case Family::bogdanov: {
            BigReal q = u.x * v.x + shape_ * (u.x * v.y + u.y * v.x) / 2;
            return {q, q};
        }
        case Family::henon: {
            BigReal q = p.main * u.y * v.y;
            return {zero_like(q), q};
        }
    }
    throw Error("unreachable family");
}

} // namespace hzone
