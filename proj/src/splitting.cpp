#include "hzone/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <type_traits>

#include "hzone/series.hpp"

namespace hzone {

namespace {

BigReal two_pi(mpfr_prec_t bits) { return 2 * pi(bits); }

void trace_line(const SplitOptions& opt, const std::string& line) {
    if (opt.trace_path.empty()) return;
    std::ofstream out(opt.trace_path, std::ios::app);
    out << line << "\n";
}

} // namespace

HomoclinicJob::HomoclinicJob(MapFamily map, BigReal main, PrecisionContext ctx, SplitOptions opt)
    : map_(std::move(map)), main_(std::move(main)), ctx_(ctx), opt_(opt) {
    if (!map_.main_admissible(main_))
        throw DomainError("HomoclinicJob: main parameter outside the admissible range");
    k_scale_ = map_.leading_width(main_);
    seed_slave_ = map_.predicted_homoclinic_slave(main_);
    BigReal target = ctx_.pow10(-(ctx_.digits() + ctx_.guard() - 8));
    PlannedManifolds pm = plan_domains(map_, ParamPoint{main_, seed_slave_}, target, ctx_, opt_.order_cap);
    plan_ = pm.plan;
}

BigReal HomoclinicJob::section_scale_hint() const {
    BigReal frac = parse_decimal(std::to_string(opt_.section_fraction), ctx_);
    return plan_.delta_stable * frac;
}

SlaveState HomoclinicJob::state_at(const BigReal& slave) const {
    SlaveState st;
    st.params = ParamPoint{main_, slave};
    st.saddle = map_.saddle(st.params, ctx_);
    st.stable = compute_series(map_, st.params, Branch::stable, plan_.order, ctx_);
    st.unstable = compute_series(map_, st.params, Branch::unstable, plan_.order, ctx_);
    st.plan = plan_;
    st.stable.radius = plan_.delta_stable;
    st.unstable.radius = plan_.delta_unstable;

    // The plan was built at the seed slave; re-check its radii here and fall
    // back to a local re-plan if the defect grew past the slack.
    BigReal target = ctx_.pow10(-(ctx_.digits() + ctx_.guard() - 10));
    if (conjugacy_residual(map_, st.params, st.stable, plan_.delta_stable) > target ||
        conjugacy_residual(map_, st.params, st.unstable, plan_.delta_unstable / st.unstable.multiplier) > target) {
        PlannedManifolds pm = plan_domains(map_, st.params, ctx_.pow10(-(ctx_.digits() + ctx_.guard() - 8)), ctx_,
                                           opt_.order_cap);
        st.stable = std::move(pm.stable);
        st.unstable = std::move(pm.unstable);
        st.plan = pm.plan;
    }

    st.jac = jacobian_along_stable(map_, st.params, st.stable);
    st.wron = wronskian_series(st.jac, st.saddle.lambda_stable, ctx_);

    BigReal frac = parse_decimal(std::to_string(opt_.section_fraction), ctx_);
    st.z_section = st.plan.delta_stable * frac;
    st.anchor = eval_local(st.stable, st.z_section);
    BigReal scale = parse_decimal(std::to_string(opt_.section_scale), ctx_);
    st.section_halfwidth = scale * norm_inf(st.anchor - st.saddle.point);
    return st;
}

std::optional<SectionCrossing> HomoclinicJob::section_gap(const SlaveState& st) const {
    const BigReal& px = st.anchor.x;
    const BigReal lambda2 = st.unstable.multiplier;
    BigReal z1 = st.plan.delta_unstable * 9 / 10;
    Vec2 prev = eval_local(st.unstable, z1);
    const int m_max = st.plan.min_iterations + 96;

    for (int m = 1; m <= m_max; ++m) {
        Vec2 cur = map_.apply(st.params, prev);
        if (norm_inf(cur - st.saddle.point) > st.plan.box_radius) return std::nullopt;
        if (m >= 2 && prev.x < px && cur.x >= px) {
            // bracketed upward crossing in t in [m-1, m]; guarded Newton on
            // g(tau) = X(z_b lambda2^tau) - px
            BigReal z_lo = z1 * pow_int(lambda2, m - 1);
            BigReal lo = ctx_.make_real(0), hi = ctx_.make_real(1);
            BigReal tau = (lo + hi) / 2;
            BigReal log_l2 = log(lambda2);
            BigReal gtol = ctx_.pow10(-(ctx_.digits() + ctx_.guard() - 8)) * max(ctx_.make_real(1), abs(px));
            BigReal z_cross = z_lo;
            for (int it = 0; it < 90; ++it) {
                z_cross = z_lo * exp(tau * log_l2);
                Jet2<BigReal> jet = eval_global_unstable_jet(map_, st.params, st.unstable, st.plan, z_cross);
                BigReal g = jet.point.x - px;
                if (abs(g) <= gtol) break;
                if (g.sign() < 0) lo = tau; else hi = tau;
                BigReal gp = jet.derivative.x * z_cross * log_l2;
                BigReal next = gp.is_zero() ? (lo + hi) / 2 : tau - g / gp;
                tau = (next > lo && next < hi) ? next : (lo + hi) / 2;
            }
            Vec2 hit = eval_global_unstable(map_, st.params, st.unstable, st.plan, z_cross);
            return SectionCrossing{z_cross, hit.y - st.anchor.y, m};
        }
        prev = cur;
    }
    return std::nullopt;
}

BigReal HomoclinicJob::strip_halfwidth(const SlaveState& st) const {
    // Both parameterizations rotate with Im t: the stable one by
    // Im t * |log lambda1|, the unstable one by Im t * log lambda2. Either
    // hitting pi leaves the principal sheet, so the tighter bound rules.
    // Near the BT limit lambda2 ~ 1/lambda1 and the two coincide.
    BigReal margin = parse_decimal(std::to_string(opt_.strip_margin), ctx_);
    BigReal rate = max(abs(log(st.saddle.lambda_stable)), log(st.saddle.lambda_unstable));
    return (1 - margin) * pi(ctx_.bits()) / rate;
}

namespace {

template <class S>
S theta_impl(const MapFamily& map, const SlaveState& st, const BigReal& z_u, const S& t) {
    BigReal log_l1 = log(st.stable.multiplier);
    BigReal log_l2 = log(st.unstable.multiplier);
    S z_t = exp(t * log_l1) * st.z_section;
    Jet2<S> jet = eval_local_jet(st.stable, z_t);
    TVec2<S> tangent = jet.derivative * (z_t * log_l1);
    S zu_t = exp(t * log_l2) * z_u;
    TVec2<S> gu = eval_global_unstable(map, st.params, st.unstable, st.plan, zu_t);
    TVec2<S> gap{gu.x - jet.point.x, gu.y - jet.point.y};
    S omega = eval_wronskian(st.wron, z_t);
    return cross(tangent, gap) / omega;
}

// Specialization shims: exp(t * log_l1) for real t through mpfr pow.
BigReal theta_real_path(const MapFamily& map, const SlaveState& st, const BigReal& z_u, const BigReal& t) {
    return theta_impl<BigReal>(map, st, z_u, t);
}

} // namespace

namespace {

template <class S>
void check_strip(const HomoclinicJob& job, const SlaveState& st, const S& t) {
    if constexpr (std::is_same_v<S, BigComplex>) {
        if (!(abs(t.im) < job.strip_halfwidth(st)))
            throw DomainError("gamma: t outside the analyticity strip");
    } else {
        (void)job;
        (void)st;
        (void)t;
    }
}

template <class S>
TVec2<S> gamma_stable_impl(const HomoclinicJob& job, const SlaveState& st, const S& t) {
    check_strip(job, st, t);
    S z_t = exp(t * log(st.stable.multiplier)) * st.z_section;
    return eval_local(st.stable, z_t);
}

template <class S>
TVec2<S> gamma_unstable_impl(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const S& t) {
    check_strip(job, st, t);
    S zu_t = exp(t * log(st.unstable.multiplier)) * z_u;
    return eval_global_unstable(job.map(), st.params, st.unstable, st.plan, zu_t);
}

} // namespace

Vec2 gamma_stable(const HomoclinicJob& job, const SlaveState& st, const BigReal& t) {
    return gamma_stable_impl(job, st, t);
}
CVec2 gamma_stable(const HomoclinicJob& job, const SlaveState& st, const BigComplex& t) {
    return gamma_stable_impl(job, st, t);
}
Vec2 gamma_unstable(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigReal& t) {
    return gamma_unstable_impl(job, st, z_u, t);
}
CVec2 gamma_unstable(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigComplex& t) {
    return gamma_unstable_impl(job, st, z_u, t);
}

BigReal splitting_determinant(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigReal& t) {
    return theta_real_path(job.map(), st, z_u, t);
}

BigComplex splitting_determinant(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u,
                                 const BigComplex& t) {
    BigReal rho = job.strip_halfwidth(st);
    if (!(abs(t.im) < rho))
        throw DomainError("splitting_determinant: t outside the analyticity strip");
    return theta_impl<BigComplex>(job.map(), st, z_u, t);
}

namespace {

struct GapSample {
    SlaveState state;
    SectionCrossing crossing;
    BigReal slave;
};

// |Theta~(0)| per unit gap at the section: |T_x| / Omega(z_s).
BigReal gap_to_theta(const SlaveState& st) {
    Jet2<BigReal> jet = eval_local_jet(st.stable, st.z_section);
    BigReal tx = abs(jet.derivative.x * st.z_section * log(st.stable.multiplier));
    return tx / eval_wronskian(st.wron, st.z_section);
}

std::optional<GapSample> try_gap(const HomoclinicJob& job, const BigReal& slave) {
    try {
        SlaveState st = job.state_at(slave);
        auto cr = job.section_gap(st);
        if (!cr) return std::nullopt;
        return GapSample{std::move(st), std::move(*cr), slave};
    } catch (const DomainError&) {
        return std::nullopt;
    } catch (const DegenerateSaddleError&) {
        return std::nullopt;
    } catch (const DivergenceError&) {
        return std::nullopt;
    }
}

struct FrameSearch {
    std::optional<HomoclinicFrame> tight;
    std::optional<HomoclinicFrame> relaxed;
};

HomoclinicFrame make_frame(GapSample&& g, const BigReal& theta0, bool relaxed, int iterations) {
    HomoclinicFrame f;
    f.state = std::move(g.state);
    f.slave = std::move(g.slave);
    f.z_unstable = std::move(g.crossing.z_unstable);
    f.gap = abs(g.crossing.gap);
    f.theta_scale = theta0;
    f.relaxed = relaxed;
    f.secant_iterations = iterations;
    return f;
}

FrameSearch search_frames(const HomoclinicJob& job, const BigReal& seed, bool want_tight, bool want_relaxed) {
    const PrecisionContext& ctx = job.ctx();
    const SplitOptions& opt = job.options();

    // Phase 1: find a slave value whose excursion actually reaches the
    // section. The prediction lands inside for small main parameters; for
    // larger ones walk outward with growing steps on the section scale.
    std::optional<GapSample> cur = try_gap(job, seed);
    if (!cur) {
        BigReal h = max(job.section_scale_hint() / 8, abs(seed) / 1024);
        bool found = false;
        for (int k = 1; k <= opt.max_walk_probes && !found; ++k) {
            for (int sgn : {+1, -1}) {
                auto g = try_gap(job, seed + (sgn > 0 ? h : -h));
                if (g) {
                    cur = std::move(g);
                    found = true;
                    break;
                }
            }
            h = h * 8 / 5;
        }
        if (!cur)
            throw ConvergenceError("find_primary_homoclinic: no section crossing near the predicted slave value");
    }

    // Tolerances in Theta units.
    BigReal kappa = gap_to_theta(cur->state);
    BigReal tf = parse_decimal(std::to_string(opt.tight_factor), ctx);
    BigReal tol_tight = job.leading_width() * tf;
    BigReal rho = job.strip_halfwidth(cur->state);
    BigReal delta = rho * parse_decimal(std::to_string(opt.delta_ratio), ctx);
    BigReal tol_relaxed = job.leading_width() * exp(two_pi(ctx.bits()) * delta) / 4;

    FrameSearch out;
    auto consider = [&](const GapSample& g, int iter) {
        BigReal theta0 = kappa * abs(g.crossing.gap);
        if (want_relaxed && !out.relaxed && theta0 <= tol_relaxed)
            out.relaxed = make_frame(GapSample(g), theta0, true, iter);
        if (want_tight && !out.tight && theta0 <= tol_tight)
            out.tight = make_frame(GapSample(g), theta0, false, iter);
    };
    auto done = [&] {
        return (!want_tight || out.tight) && (!want_relaxed || out.relaxed);
    };

    trace_line(opt, "secant,0," + format_decimal(cur->slave) + "," + format_decimal(cur->crossing.gap, 8));
    consider(*cur, 0);
    if (done()) return out;

    // Phase 2: finite-difference Newton on the signed gap, with step
    // halving whenever a candidate falls off the crossing region.
    BigReal scale = max(abs(cur->slave), cur->state.z_section);
    BigReal fd_step = ctx.pow10(-(ctx.digits() / 3)) * scale;
    for (int iter = 1; iter <= opt.max_secant_iterations; ++iter) {
        auto side = try_gap(job, cur->slave + fd_step);
        if (!side) {
            fd_step = -fd_step;
            side = try_gap(job, cur->slave + fd_step);
            if (!side) throw ConvergenceError("find_primary_homoclinic: lost the crossing while differencing");
        }
        BigReal dy = side->crossing.gap - cur->crossing.gap;
        if (dy.is_zero())
            throw ConditioningError("find_primary_homoclinic: flat finite difference in the secant");
        BigReal step = -cur->crossing.gap * fd_step / dy;
        std::optional<GapSample> next;
        for (int half = 0; half < 40; ++half) {
            next = try_gap(job, cur->slave + step);
            if (next) break;
            step = step / 2;
        }
        if (!next) throw ConvergenceError("find_primary_homoclinic: secant step left the crossing region");
        cur = std::move(next);
        trace_line(opt, "secant," + std::to_string(iter) + "," + format_decimal(cur->slave) + "," +
                            format_decimal(cur->crossing.gap, 8));
        consider(*cur, iter);
        if (done()) return out;
    }
    if ((want_tight && !out.tight) || (want_relaxed && !out.relaxed))
        throw ConvergenceError("find_primary_homoclinic: secant exhausted its iteration budget");
    return out;
}

} // namespace

HomoclinicFrame find_primary_homoclinic(const HomoclinicJob& job, const BigReal& seed_slave, bool relaxed) {
    FrameSearch fs = search_frames(job, seed_slave, !relaxed, relaxed);
    return relaxed ? std::move(*fs.relaxed) : std::move(*fs.tight);
}

Harmonics harmonics_real(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u) {
    const PrecisionContext& ctx = job.ctx();
    BigReal quarter = ctx.make_real(1) / 4;
    BigReal t0 = splitting_determinant(job, st, z_u, ctx.make_real(0));
    BigReal th = splitting_determinant(job, st, z_u, ctx.make_real(1) / 2);
    BigReal tq = splitting_determinant(job, st, z_u, quarter);
    BigReal tmq = splitting_determinant(job, st, z_u, -quarter);

    Harmonics h;
    h.mean = (t0 + th) / 2;
    BigReal re = (t0 - th) / 4;
    BigReal im = (tq - tmq) / 4;
    h.minus_one = BigComplex(re, im);
    h.plus_one = BigComplex(re, -im);
    return h;
}

BigComplex harmonic_complex(const HomoclinicJob& job, const SlaveState& st, const BigReal& z_u, const BigReal& delta,
                            int force_case) {
    const PrecisionContext& ctx = job.ctx();
    BigReal rho = job.strip_halfwidth(st);
    if (!(delta < rho)) throw DomainError("harmonic_complex: delta must stay below the strip half-width");
    if (delta.sign() <= 0) throw DomainError("harmonic_complex: delta must be positive");

    int which = force_case != 0 ? force_case : (delta > rho / 3 ? 1 : 2);
    BigReal damping = exp(-(two_pi(ctx.bits()) * delta));
    BigComplex base(ctx.make_real(0), delta);

    auto theta = [&](long num, long den) {
        BigComplex t = base + BigReal(num, ctx.bits()) / BigReal(den, ctx.bits());
        return splitting_determinant(job, st, z_u, t);
    };

    if (which == 1) {
        BigComplex diff = theta(0, 2) - theta(1, 2);
        return diff * (damping / 2);
    }
    // four-point rule: (1/4) sum_j i^j Theta(i delta + j/4)
    BigComplex s0 = theta(0, 4), s1 = theta(1, 4), s2 = theta(2, 4), s3 = theta(3, 4);
    BigComplex re_part = s0 - s2;
    BigComplex im_part = s1 - s3;
    BigComplex acc(re_part.re - im_part.im, re_part.im + im_part.re); // (s0-s2) + i(s1-s3)
    return acc * (damping / 4);
}

namespace {

struct SlopeProbe {
    BigReal denom;       // Theta(nu3) - Theta(nu4) at t = 0
    BigReal step;        // nu3 - nu4
    bool stable = true;  // cross-t consistency within 10%
};

SlopeProbe slave_slope(const HomoclinicJob& job, const BigReal& anchor, const BigReal& h) {
    const PrecisionContext& ctx = job.ctx();
    auto g3 = try_gap(job, anchor + h);
    auto g4 = try_gap(job, anchor - h);
    if (!g3 || !g4) throw ConvergenceError("width estimate: finite-difference slave lost the crossing");

    SlopeProbe out;
    out.step = 2 * h;
    std::vector<BigReal> slopes;
    for (long num : {0L, 1L, 2L}) {
        BigReal t = BigReal(num, ctx.bits()) / 4;
        BigReal d = splitting_determinant(job, g3->state, g3->crossing.z_unstable, t)
                  - splitting_determinant(job, g4->state, g4->crossing.z_unstable, t);
        slopes.push_back(d);
        if (num == 0) out.denom = d;
    }
    // empirical denominator-speed assumption: variation across t below 10%
    BigReal lo = min(min(abs(slopes[0]), abs(slopes[1])), abs(slopes[2]));
    BigReal hi = max(max(abs(slopes[0]), abs(slopes[1])), abs(slopes[2]));
    if (lo.is_zero() || (hi - lo) / hi > parse_decimal("0.1", ctx)) out.stable = false;

    const SplitOptions& opt = job.options();
    if (opt.denominator_guard > 0) {
        BigReal v0 = parse_decimal(std::to_string(opt.denominator_guard), ctx);
        if (abs(out.denom) / out.step < v0)
            throw ConditioningError("width estimate: finite-difference denominator under the configured guard");
    }
    if (out.denom.is_zero()) throw ConditioningError("width estimate: vanishing finite-difference denominator");
    return out;
}

WidthEstimate width_from_frame(const HomoclinicJob& job, const HomoclinicFrame& frame, WidthMethod method,
                               const BigReal& delta) {
    const PrecisionContext& ctx = job.ctx();

    BigReal amp;
    if (method == WidthMethod::real) {
        amp = abs(harmonics_real(job, frame.state, frame.z_unstable).minus_one);
    } else {
        amp = abs(harmonic_complex(job, frame.state, frame.z_unstable, delta));
    }

    // nu_{3,4} = anchor +- h with h = max(10^{-D/4}, 10^3 * width estimate);
    // the second pass enforces the step policy once a first estimate exists.
    BigReal h = ctx.pow10(-(ctx.digits() / 4));
    SlopeProbe probe = slave_slope(job, frame.slave, h);
    BigReal width = abs(4 * amp * probe.step / probe.denom);
    BigReal h2 = max(h, 1000 * width);
    if (h2 > h * 3 / 2) {
        probe = slave_slope(job, frame.slave, h2);
        width = abs(4 * amp * probe.step / probe.denom);
    }

    WidthEstimate est;
    est.value = width;
    est.method = method;
    est.slave_anchor = frame.slave;
    est.first_harmonic_abs = amp;
    est.slope_stable = probe.stable;
    est.secant_iterations = frame.secant_iterations;
    trace_line(job.options(), std::string("harmonic,") + (method == WidthMethod::real ? "real" : "complex") + "," +
                                  format_decimal(amp, 12));
    if (method == WidthMethod::real) {
        est.error_exponent10 = width.log10_magnitude();
    } else {
        double l10e2pid = 2 * 3.14159265358979324 * delta.to_double() * 0.43429448190325176;
        est.strip_offset = delta.to_double();
        est.log10_e2pid = l10e2pid;
        est.error_exponent10 = width.log10_magnitude() + l10e2pid;
    }
    trace_line(job.options(), std::string("width,") + (method == WidthMethod::real ? "real" : "complex") + "," +
                                  format_decimal(width, 12) + "," + std::to_string(est.error_exponent10) +
                                  (probe.stable ? "" : ",slope-unstable"));
    return est;
}

BigReal default_delta(const HomoclinicJob& job, const SlaveState& st) {
    BigReal rho = job.strip_halfwidth(st);
    return rho * parse_decimal(std::to_string(job.options().delta_ratio), job.ctx());
}

} // namespace

WidthEstimate width_real(const HomoclinicJob& job) {
    HomoclinicFrame frame = find_primary_homoclinic(job, job.map().predicted_homoclinic_slave(job.main()), false);
    return width_from_frame(job, frame, WidthMethod::real, job.ctx().make_real(0));
}

WidthEstimate width_complex(const HomoclinicJob& job) {
    HomoclinicFrame frame = find_primary_homoclinic(job, job.map().predicted_homoclinic_slave(job.main()), true);
    return width_from_frame(job, frame, WidthMethod::complex_strip, default_delta(job, frame.state));
}

std::pair<WidthEstimate, WidthEstimate> width_both(const HomoclinicJob& job) {
    FrameSearch fs = search_frames(job, job.map().predicted_homoclinic_slave(job.main()), true, true);
    WidthEstimate wr = width_from_frame(job, *fs.tight, WidthMethod::real, job.ctx().make_real(0));
    WidthEstimate wc = width_from_frame(job, *fs.relaxed, WidthMethod::complex_strip,
                                        default_delta(job, fs.relaxed->state));
    return {std::move(wr), std::move(wc)};
}

std::pair<BigReal, BigReal> tangency_parameters(const HomoclinicJob& job) {
    const PrecisionContext& ctx = job.ctx();
    HomoclinicFrame frame = find_primary_homoclinic(job, job.map().predicted_homoclinic_slave(job.main()), false);

    Harmonics base = harmonics_real(job, frame.state, frame.z_unstable);
    BigReal amp = abs(base.minus_one);
    BigReal h = ctx.pow10(-(ctx.digits() / 4));
    SlopeProbe probe = slave_slope(job, frame.slave, h);
    BigReal slope = probe.denom / probe.step;
    BigReal width_est = abs(4 * amp / slope);

    // Monotonicity bookkeeping for R_0 over every evaluated slave value.
    std::vector<std::pair<BigReal, BigReal>> r0_samples;
    auto f_of = [&](const BigReal& slave, int sign) {
        auto g = try_gap(job, slave);
        if (!g) throw ConvergenceError("tangency_parameters: slave iterate lost the crossing");
        Harmonics hh = harmonics_real(job, g->state, g->crossing.z_unstable);
        r0_samples.emplace_back(slave, hh.mean);
        return hh.mean + 2 * sign * abs(hh.minus_one);
    };

    BigReal tol = max(amp * width_est / 1000, amp * ctx.pow10(-(ctx.digits() / 2)));
    auto solve_side = [&](int sign) {
        // sign = -1: R_0 - 2|R_-1| = 0 (last tangency side, nu~+)
        BigReal x0 = frame.slave;
        BigReal f0 = f_of(x0, sign);
        BigReal x1 = frame.slave - f0 / slope; // Newton-style first hop
        BigReal f1 = f_of(x1, sign);
        for (int it = 0; it < 60; ++it) {
            if (abs(f1) <= tol) break;
            BigReal df = f1 - f0;
            if (df.is_zero()) throw ConditioningError("tangency_parameters: flat secant difference");
            BigReal x2 = x1 - f1 * (x1 - x0) / df;
            x0 = x1; f0 = f1;
            x1 = x2; f1 = f_of(x1, sign);
        }
        if (abs(f1) > tol * 100)
            throw ConvergenceError("tangency_parameters: scalar solve exhausted its budget");
        return x1;
    };

    BigReal upper = solve_side(-1);
    BigReal lower = solve_side(+1);

    // R_0 must be monotone across the evaluated points.
    std::sort(r0_samples.begin(), r0_samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int dir = 0;
    for (size_t i = 1; i < r0_samples.size(); ++i) {
        BigReal d = r0_samples[i].second - r0_samples[i - 1].second;
        if (d.is_zero()) continue;
        int s = d.sign();
        if (dir == 0) dir = s;
        else if (s != dir)
            throw BracketingError("tangency_parameters: R_0 is not monotone over the bracket");
    }

    if (!(upper > lower)) std::swap(upper, lower);
    if (!(frame.slave >= lower && frame.slave <= upper)) {
        // anchor must sit inside the zone
        throw BracketingError("tangency_parameters: primary anchor fell outside the tangency interval");
    }
    return {upper, lower};
}

} // namespace hzone
