#pragma once

#include <optional>
#include <string>

#include "hzone/variational.hpp"

namespace hzone {

struct SplitOptions {
    // rho = (1 - strip_margin) * pi / |log lambda1|
    double strip_margin = 0.1;
    // complex-strip offset delta = delta_ratio * rho (Case 1 for ratio > 1/3)
    double delta_ratio = 0.5;
    // section anchor z_s = section_fraction * delta_s
    double section_fraction = 0.5;
    // |y| <= section_scale * anchor offset defines the section extent
    double section_scale = 10.0;
    // frame tolerances, in units of the leading width K:
    // tight: sup|Theta| <= tight_factor * K; relaxed: <= 0.25 * K * e^{2 pi delta}
    double tight_factor = 1.0;
    int max_secant_iterations = 80;
    int max_walk_probes = 60;
    int order_cap = 800;
    // absolute lower guard for the finite-difference denominator (0 = auto)
    double denominator_guard = 0.0;
    // when set, the job appends a diagnostic trace (secant iterates,
    // harmonics, width estimates) as decimal CSV to this file
    std::string trace_path;
};

// Everything needed to evaluate the splitting determinant at one (main,
// slave) pair: manifold series, transport data, and the section anchored on
// the stable branch.
struct SlaveState {
    ParamPoint params;
    SaddleData saddle;
    ManifoldSeries stable;
    ManifoldSeries unstable;
    DomainPlan plan;
    JacobianSeries jac;
    WronskianSeries wron;
    BigReal z_section;          // z_s
    Vec2 anchor;                // p_nu = Phi_s(z_s)
    BigReal section_halfwidth;  // y_0
};

struct SectionCrossing {
    BigReal z_unstable; // z at the first returning intersection with Sigma
    BigReal gap;        // signed vertical offset from the anchor
    int iterations;     // map applications consumed by the march
};

struct HomoclinicFrame {
    SlaveState state;
    BigReal slave;       // located slave value (nu-bar or nu_0)
    BigReal z_unstable;  // z_u with Phi_u(z_u) ~ Phi_s(z_s)
    BigReal gap;         // residual |y| at acceptance
    BigReal theta_scale; // |Theta~(0)| at acceptance
    bool relaxed = false;
    int secant_iterations = 0;
};

enum class WidthMethod { real, complex_strip };

struct WidthEstimate {
    BigReal value;
    WidthMethod method;
    BigReal slave_anchor;
    BigReal first_harmonic_abs; // |R_-1| or |C_-1|
    double error_exponent10;    // log10 of the method's relative error bound
    double strip_offset = 0.0;  // delta (complex method)
    double log10_e2pid = 0.0;   // log10 e^{2 pi delta} (complex method)
    bool slope_stable = true;   // 10% denominator cross-check over t
    int secant_iterations = 0;
};

// Per-(family, main-parameter) computation job. States at different slave
// values are rebuilt from scratch; domain plan and series order are fixed
// once at the seed.
class HomoclinicJob {
  public:
    HomoclinicJob(MapFamily map, BigReal main, PrecisionContext ctx, SplitOptions opt = {});

    SlaveState state_at(const BigReal& slave) const;
    // First intersection of the global unstable branch with the section:
    // smallest t > 0 where Gamma_u crosses the vertical section line with
    // increasing x. nullopt when the excursion turns back short of the
    // section (off-zone slave values) or escapes.
    std::optional<SectionCrossing> section_gap(const SlaveState& st) const;

    const MapFamily& map() const { return map_; }
    const BigReal& main() const { return main_; }
    const PrecisionContext& ctx() const { return ctx_; }
    const SplitOptions& options() const { return opt_; }
    const BigReal& leading_width() const { return k_scale_; }
    // delta_s * section_fraction from the job-level plan; sizing hint for
    // slave-space walks.
    BigReal section_scale_hint() const;

    // Analyticity strip half-width rho of t -> Theta~(t).
    BigReal strip_halfwidth(const SlaveState& st) const;

  private:
    MapFamily map_;
    BigReal main_;
    PrecisionContext ctx_;
    SplitOptions opt_;
    BigReal k_scale_;
    BigReal seed_slave_;
    DomainPlan plan_;
};

// Local stable / global unstable orbits through the section frame:
// Gamma_s(t) = Phi_s(z_s lambda1^t), Gamma_u(t) = Phi_u(z_u lambda2^t).
// t -> t+1 is one application of the map; complex t must stay inside the
// analyticity strip.
Vec2 gamma_stable(const HomoclinicJob& job, const SlaveState& st, const BigReal& t);
CVec2 gamma_stable(const HomoclinicJob& job, const SlaveState& st, const BigComplex& t);
Vec2 gamma_unstable(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigReal& t);
CVec2 gamma_unstable(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigComplex& t);

// Splitting determinant Theta~(t) = det[dGamma_s/dt, Gamma_u - Gamma_s] /
// Omega(z_s lambda1^t) with Gamma_s(t) = Phi_s(z_s lambda1^t) and
// Gamma_u(t) = Phi_u(z_u lambda2^t).
BigReal splitting_determinant(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigReal& t);
BigComplex splitting_determinant(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u,
                                 const BigComplex& t);

// Locates a slave value with a primary homoclinic intersection: secant on
// the signed section gap, seeded by the family's homoclinic-line prediction
// and protected by a crossing-existence walk/bisection. Tight frames stop at
// sup|Theta| ~ K, relaxed frames at ~K e^{2 pi delta}.
HomoclinicFrame find_primary_homoclinic(const HomoclinicJob& job, const BigReal& seed_slave, bool relaxed = false);

struct Harmonics {
    BigReal mean;        // R_0
    BigComplex minus_one; // R_-1
    BigComplex plus_one;  // R_+1 = conj(R_-1) exactly
};

// Four-point estimates R_0 = (T(0)+T(1/2))/2,
// R_-+1 = (T(0)-T(1/2) +- i(T(1/4)-T(-1/4)))/4 from real samples.
Harmonics harmonics_real(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u);

// First harmonic from samples on the shifted line [i delta, i delta + 1]:
// two-point rule for delta > rho/3, four-point rule otherwise. force_case
// (1 or 2) overrides the selection for boundary comparisons.
BigComplex harmonic_complex(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigReal& delta,
                            int force_case = 0);

WidthEstimate width_real(const HomoclinicJob& job);
WidthEstimate width_complex(const HomoclinicJob& job);
// One secant pass serving both estimators (the relaxed frame is an early
// iterate of the tight search).
std::pair<WidthEstimate, WidthEstimate> width_both(const HomoclinicJob& job);

// First/last tangency slave values: scalar solves of R_0 = -+ 2|R_-1|.
std::pair<BigReal, BigReal> tangency_parameters(const HomoclinicJob& job);

} // namespace hzone
