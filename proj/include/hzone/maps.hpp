#pragma once

#include <string>
#include <string_view>

#include "hzone/vec2.hpp"

namespace hzone {

enum class Family { quadratic, bogdanov, henon };

// Parameter pair of a family: the scanned main parameter (mu, a, a-tilde)
// and the slave parameter adjusted to hit tangencies (nu, b, b-tilde).
struct ParamPoint {
    BigReal main, slave;
};

struct SaddleData {
    Vec2 point;
    BigReal lambda_stable;    // lambda1 < 1
    BigReal lambda_unstable;  // lambda2 > 1
    Vec2 eig_stable;          // unit length, positive first component
    Vec2 eig_unstable;
};

// Parameters of the canonical unfolding (x,y) -> (x+y, y + f_{mu,nu}(x,y)).
struct NormalFormParams {
    BigReal mu, nu, gamma;
};

// One of the three planar families studied here:
//   quadratic(gamma):   (x,y) -> (x+y, y + x^2 - mu + gamma*x*y + nu*y)
//   bogdanov(gamma~):   (x,y) -> (x+y+g, y+g),  g = x^2 + gamma~*x*y + a*x + b*y
//   henon:              (u,v) -> (v, a~*v^2 - b~*u + 1)
class MapFamily {
  public:
    static MapFamily quadratic(BigReal gamma) { return MapFamily(Family::quadratic, std::move(gamma)); }
    static MapFamily bogdanov(BigReal gamma_tilde) { return MapFamily(Family::bogdanov, std::move(gamma_tilde)); }
    static MapFamily henon() { return MapFamily(Family::henon, BigReal()); }
    // Family selected by name string plus shape parameter as decimal text.
    static MapFamily from_name(std::string_view name, std::string_view gamma_text, const PrecisionContext& ctx);

    Family family() const { return family_; }
    // gamma (quadratic) or gamma-tilde (bogdanov); zero for henon.
    const BigReal& shape() const { return shape_; }
    std::string name() const;

    template <class S>
    TVec2<S> apply(const ParamPoint& p, const TVec2<S>& pt) const;

    template <class S>
    TMat2<S> jacobian_matrix(const ParamPoint& p, const TVec2<S>& pt) const;

    bool main_admissible(const BigReal& main) const;

    SaddleData saddle(const ParamPoint& p, const PrecisionContext& ctx) const;
    // The other fixed point (focus side); the homoclinic loop encircles it.
    Vec2 companion_point(const ParamPoint& p) const;

    // Exponentially small leading width K(mu_eff, gamma_eff) =
    //   5/(6 sqrt(2) mu^{5/4}) * exp(-sqrt(2) pi^2 / mu^{1/4}) * exp(-6 pi^2 gamma_eff / 7)
    // with the family-specific argument (mu, a^2/4, |1 - a~|).
    BigReal leading_width(const BigReal& main) const;
    // log10 K in double precision, for precision planning only.
    double leading_width_log10(double main) const;
    // Argument mu_eff fed to K.
    BigReal unfolding_scale(const BigReal& main) const;
    // gamma_eff: gamma-2, gamma~, 0.
    BigReal shape_effective(mpfr_prec_t bits) const;

    // Leading-order slave value of the homoclinic line, used to seed the
    // search: (5/7)(gamma-2) sqrt(mu), (6/7) a gamma~, and 1 respectively.
    BigReal predicted_homoclinic_slave(const BigReal& main) const;

    NormalFormParams to_normal_form(const ParamPoint& p) const;

    // det dF(x,y) is affine in the phase point for all three families:
    // d0 + dx*x + dy*y.
    void det_affine(const ParamPoint& p, BigReal& d0, BigReal& dx, BigReal& dy) const;

    // Symmetric bilinear form of the quadratic part of the map (the families
    // are exactly quadratic, so F(s+w) = F(s) + dF(s)w + q(w,w)).
    Vec2 quadratic_part(const ParamPoint& p, const Vec2& u, const Vec2& v) const;

  private:
    MapFamily(Family f, BigReal shape) : family_(f), shape_(std::move(shape)) {}

    Family family_;
    BigReal shape_;
};

template <class S>
TVec2<S> MapFamily::apply(const ParamPoint& p, const TVec2<S>& pt) const {
    switch (family_) {
        case Family::quadratic: {
            S g = pt.x * pt.x - p.main + shape_ * pt.x * pt.y + p.slave * pt.y;
            return {pt.x + pt.y, pt.y + g};
        }
        case Family::bogdanov: {
            S g = pt.x * pt.x + shape_ * pt.x * pt.y + p.main * pt.x + p.slave * pt.y;
            return {pt.x + pt.y + g, pt.y + g};
        }
        case Family::henon:
            return {pt.y, p.main * pt.y * pt.y - p.slave * pt.x + 1};
    }
    throw Error("unreachable family");
}

template <class S>
TMat2<S> MapFamily::jacobian_matrix(const ParamPoint& p, const TVec2<S>& pt) const {
    const S one = unit_like(pt.x);
    switch (family_) {
        case Family::quadratic: {
            S gx = pt.x * 2 + shape_ * pt.y;
            S gy = shape_ * pt.x + p.slave;
            return {one, one, gx, gy + 1};
        }
        case Family::bogdanov: {
            S gx = pt.x * 2 + shape_ * pt.y + p.main;
            S gy = shape_ * pt.x + p.slave;
            return {gx + 1, gy + 1, gx, gy + 1};
        }
        case Family::henon:
            return {zero_like(pt.x), one, -(one * p.slave), pt.y * p.main * 2};
    }
    throw Error("unreachable family");
}

} // namespace hzone
