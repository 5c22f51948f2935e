#include "hzone/asymptotics.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "hzone/series.hpp"

namespace hzone {

AsymptoticSequence AsymptoticSequence::for_family(Family f) {
    switch (f) {
        case Family::quadratic: return dulac(4);
        case Family::bogdanov: return dulac(2);
        case Family::henon: return polynomial(4);
    }
    throw Error("unreachable family");
}

BigReal AsymptoticSequence::basis(int i, const BigReal& x) const {
    if (x.sign() <= 0) throw DomainError("basis: x must be positive");
    if (kind == Kind::polynomial) return pow_int(x, i);
    BigReal p = pow_int(x, power_of_x(i));
    if (!has_log(i)) return p;
    return p * log(x) * root_power; // log(main) = root_power * log(x)
}

int AsymptoticSequence::power_of_x(int i) const {
    if (kind == Kind::polynomial) return i;
    int n = i / 3, r = i % 3;
    if (r == 0) return 2 * n;
    if (r == 1) return 2 * n + 1;
    return 2 * n + 2;
}

bool AsymptoticSequence::has_log(int i) const { return kind == Kind::dulac && i % 3 == 2; }

std::string AsymptoticSequence::label(int i, std::string_view main_symbol) const {
    int px = power_of_x(i);
    if (px == 0) return "1";
    int num = px, den = root_power;
    int g = std::gcd(num, den);
    num /= g;
    den /= g;
    std::string sym(main_symbol);
    std::string out = sym;
    if (den == 1) {
        if (num != 1) out += "^{" + std::to_string(num) + "}";
    } else {
        out += "^{" + std::to_string(num) + "/" + std::to_string(den) + "}";
    }
    if (has_log(i)) out += "*log(" + sym + ")";
    return out;
}

Matrix build_matrix(const AsymptoticSequence& seq, const std::vector<BigReal>& xs) {
    for (size_t j = 1; j < xs.size(); ++j)
        if (!(xs[j] > xs[j - 1])) throw DomainError("build_matrix: nodes must be strictly increasing");
    Matrix m(xs.size());
    for (size_t j = 0; j < xs.size(); ++j) {
        m[j].reserve(xs.size());
        for (size_t i = 0; i < xs.size(); ++i) m[j].push_back(seq.basis(static_cast<int>(i), xs[j]));
    }
    return m;
}

namespace {

struct Lu {
    Matrix m;                  // factors in place
    std::vector<size_t> perm;  // row permutation
};

Lu factor(Matrix m, const PrecisionContext& ctx) {
    const size_t n = m.size();
    Lu lu{std::move(m), {}};
    lu.perm.resize(n);
    for (size_t i = 0; i < n; ++i) lu.perm[i] = i;
    BigReal tiny = ctx.pow10(-(ctx.digits() + ctx.guard() - 4));

    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        BigReal best = abs(lu.m[k][k]);
        for (size_t r = k + 1; r < n; ++r) {
            BigReal v = abs(lu.m[r][k]);
            if (v > best) { best = v; piv = r; }
        }
        if (best < tiny)
            throw ConditioningError("solve_coefficients: pivot underflow at order " + std::to_string(k));
        if (piv != k) {
            std::swap(lu.m[piv], lu.m[k]);
            std::swap(lu.perm[piv], lu.perm[k]);
        }
        for (size_t r = k + 1; r < n; ++r) {
            BigReal f = lu.m[r][k] / lu.m[k][k];
            lu.m[r][k] = f;
            for (size_t c = k + 1; c < n; ++c) lu.m[r][c] -= f * lu.m[k][c];
        }
    }
    return lu;
}

std::vector<BigReal> lu_solve(const Lu& lu, const std::vector<BigReal>& rhs) {
    const size_t n = lu.m.size();
    std::vector<BigReal> y;
    y.reserve(n);
    for (size_t r = 0; r < n; ++r) {
        BigReal acc = rhs[lu.perm[r]];
        for (size_t c = 0; c < r; ++c) acc -= lu.m[r][c] * y[c];
        y.push_back(std::move(acc));
    }
    std::vector<BigReal> x(n);
    for (size_t r = n; r-- > 0;) {
        BigReal acc = y[r];
        for (size_t c = r + 1; c < n; ++c) acc -= lu.m[r][c] * x[c];
        x[r] = acc / lu.m[r][r];
    }
    return x;
}

double condition_estimate(const Matrix& m, const Lu& lu, const PrecisionContext& ctx) {
    const size_t n = m.size();
    BigReal norm_m = ctx.make_real(0);
    for (auto& row : m) {
        BigReal s = ctx.make_real(0);
        for (auto& v : row) s += abs(v);
        norm_m = max(norm_m, s);
    }
    // ||M^{-1}||_inf via its columns
    std::vector<BigReal> row_sums(n, ctx.make_real(0));
    std::vector<BigReal> e(n, ctx.make_real(0));
    for (size_t j = 0; j < n; ++j) {
        e[j] = ctx.make_real(1);
        std::vector<BigReal> col = lu_solve(lu, e);
        for (size_t r = 0; r < n; ++r) row_sums[r] += abs(col[r]);
        e[j] = ctx.make_real(0);
    }
    BigReal norm_inv = ctx.make_real(0);
    for (auto& s : row_sums) norm_inv = max(norm_inv, s);
    return (norm_m * norm_inv).log10_magnitude();
}

void split_streams(ExpansionCoefficients& c) {
    c.power_stream.clear();
    c.log_stream.clear();
    for (size_t i = 0; i < c.alpha.size(); ++i) {
        if (c.seq.has_log(static_cast<int>(i))) c.log_stream.push_back(c.alpha[i]);
        else c.power_stream.push_back(c.alpha[i]);
    }
}

} // namespace

ExpansionCoefficients solve_coefficients(const AsymptoticSequence& seq, const std::vector<BigReal>& xs,
                                         const std::vector<BigReal>& w, const PrecisionContext& ctx,
                                         bool fit_on_values) {
    if (xs.size() != w.size()) throw DomainError("solve_coefficients: node/data size mismatch");
    if (xs.empty()) throw DomainError("solve_coefficients: empty system");

    Matrix m = build_matrix(seq, xs);
    Lu lu = factor(m, ctx);

    ExpansionCoefficients c;
    c.seq = seq;
    c.fit_on_values = fit_on_values;
    c.alpha = lu_solve(lu, w);
    c.condition_log10 = condition_estimate(m, lu, ctx);

    c.max_node_residual = ctx.make_real(0);
    for (size_t j = 0; j < xs.size(); ++j) {
        BigReal acc = ctx.make_real(0);
        for (size_t i = 0; i < c.alpha.size(); ++i) acc += c.alpha[i] * m[j][i];
        c.max_node_residual = max(c.max_node_residual, abs(acc - w[j]));
    }
    split_streams(c);
    return c;
}

ExpansionCoefficients solve_coefficients_lsq(const AsymptoticSequence& seq, int basis_size,
                                             const std::vector<BigReal>& xs, const std::vector<BigReal>& w,
                                             const PrecisionContext& ctx, bool fit_on_values) {
    const size_t n = xs.size();
    const size_t k = static_cast<size_t>(basis_size);
    if (n < k) throw DomainError("solve_coefficients_lsq: fewer nodes than basis functions");

    // normal equations (M^T M) a = M^T w at working precision
    Matrix mt_m(k, std::vector<BigReal>(k, ctx.make_real(0)));
    std::vector<BigReal> mt_w(k, ctx.make_real(0));
    Matrix rows(n);
    for (size_t j = 0; j < n; ++j) {
        rows[j].reserve(k);
        for (size_t i = 0; i < k; ++i) rows[j].push_back(seq.basis(static_cast<int>(i), xs[j]));
    }
    for (size_t a = 0; a < k; ++a) {
        for (size_t b = a; b < k; ++b) {
            BigReal s = ctx.make_real(0);
            for (size_t j = 0; j < n; ++j) s += rows[j][a] * rows[j][b];
            mt_m[a][b] = s;
            mt_m[b][a] = s;
        }
        BigReal s = ctx.make_real(0);
        for (size_t j = 0; j < n; ++j) s += rows[j][a] * w[j];
        mt_w[a] = s;
    }
    Lu lu = factor(mt_m, ctx);

    ExpansionCoefficients c;
    c.seq = seq;
    c.fit_on_values = fit_on_values;
    c.alpha = lu_solve(lu, mt_w);
    c.condition_log10 = condition_estimate(mt_m, lu, ctx);
    c.max_node_residual = ctx.make_real(0);
    for (size_t j = 0; j < n; ++j) {
        BigReal acc = ctx.make_real(0);
        for (size_t i = 0; i < k; ++i) acc += c.alpha[i] * rows[j][i];
        c.max_node_residual = max(c.max_node_residual, abs(acc - w[j]));
    }
    split_streams(c);
    return c;
}

BigReal eval_expansion(const ExpansionCoefficients& c, const BigReal& x) {
    BigReal acc(0, x.prec());
    for (size_t i = 0; i < c.alpha.size(); ++i) acc += c.alpha[i] * c.seq.basis(static_cast<int>(i), x);
    return acc;
}

BigReal normalize_width(const MapFamily& map, const BigReal& main, const BigReal& width) {
    if (width.sign() <= 0) throw DomainError("normalize_width: width must be positive");
    return width / map.leading_width(main);
}

BigReal analytic_first_log_coefficient(const MapFamily& map, const PrecisionContext& ctx) {
    switch (map.family()) {
        case Family::quadratic: {
            BigReal d = map.shape() - 2;
            return -(BigReal(18, ctx) * d * d) / 49;
        }
        case Family::bogdanov: {
            const BigReal& g = map.shape();
            return -(BigReal(36, ctx) * g * g) / 49;
        }
        case Family::henon:
            throw NotApplicableError("analytic_first_log_coefficient: the Henon expansion has no log terms");
    }
    throw Error("unreachable family");
}

ExtrapolabilityReport extrapolability_test(const ExpansionCoefficients& c, const WidthDataset& holdout) {
    if (holdout.nodes.empty()) throw DomainError("extrapolability_test: empty holdout set");

    ExtrapolabilityReport rep;
    rep.omitted_index = static_cast<int>(c.alpha.size());
    rep.expected_power = c.seq.power_of_x(rep.omitted_index);
    rep.omitted_has_log = c.seq.has_log(rep.omitted_index);

    std::vector<double> lx, ly;
    for (const auto& node : holdout.nodes) {
        BigReal data = c.fit_on_values ? exp(node.log_s) : node.log_s;
        BigReal resid = abs(eval_expansion(c, node.x) - data);
        double lmain = node.x.log10_magnitude() * c.seq.root_power;
        double lres = resid.log10_magnitude();
        rep.points.emplace_back(lmain, lres);
        lx.push_back(lmain);
        ly.push_back(lres);
    }
    rep.slope_main = lsq_slope(lx, ly);
    rep.slope_x = rep.slope_main * c.seq.root_power;
    return rep;
}

namespace {

uint64_t splitmix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// deterministic uniform in [-1, 1]
double noise(uint64_t seed, uint64_t trial, uint64_t node) {
    uint64_t u = splitmix(seed ^ splitmix(trial * 0x100000001b3ull + node));
    return 2.0 * ((u >> 11) * 0x1.0p-53) - 1.0;
}

} // namespace

StabilityReport stability_test(const AsymptoticSequence& seq, const std::vector<BigReal>& xs,
                               const std::vector<BigReal>& w, int perturb_digits, int trials, uint64_t seed,
                               const PrecisionContext& ctx, bool fit_on_values) {
    if (perturb_digits >= ctx.digits() + ctx.guard())
        throw DomainError("stability_test: perturbation below the data precision");

    ExpansionCoefficients base = solve_coefficients(seq, xs, w, ctx, fit_on_values);
    StabilityReport rep;
    rep.perturb_digits = perturb_digits;
    rep.trials = trials;
    rep.max_rel_err_log10.assign(base.alpha.size(), -std::numeric_limits<double>::infinity());

    BigReal amp = ctx.pow10(-perturb_digits);
    auto run_trial = [&](int t) {
        std::vector<BigReal> wp;
        wp.reserve(w.size());
        for (size_t j = 0; j < w.size(); ++j) {
            BigReal u = ctx.make_real(0);
            mpfr_set_d(u.raw(), noise(seed, static_cast<uint64_t>(t), static_cast<uint64_t>(j)), MPFR_RNDN);
            wp.push_back(w[j] + u * amp);
        }
        ExpansionCoefficients pert = solve_coefficients(seq, xs, wp, ctx, fit_on_values);
        std::vector<double> errs(base.alpha.size(), -std::numeric_limits<double>::infinity());
        for (size_t i = 0; i < base.alpha.size(); ++i) {
            if (base.alpha[i].is_zero()) continue;
            errs[i] = (abs(pert.alpha[i] - base.alpha[i]) / abs(base.alpha[i])).log10_magnitude();
        }
        return errs;
    };

    // trials are independent solves; run them on a small pool
    unsigned pool = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                    static_cast<unsigned>(trials)));
    std::vector<std::vector<double>> per_trial(trials);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int t = next.fetch_add(1);
            if (t >= trials) return;
            per_trial[t] = run_trial(t);
        }
    };
    std::vector<std::thread> threads;
    for (unsigned i = 1; i < pool; ++i) threads.emplace_back(worker);
    worker();
    for (auto& th : threads) th.join();

    for (const auto& errs : per_trial)
        for (size_t i = 0; i < errs.size(); ++i)
            rep.max_rel_err_log10[i] = std::max(rep.max_rel_err_log10[i], errs[i]);
    return rep;
}

double splitting_constant_check(const ExpansionCoefficients& c, const BigReal& reference) {
    if (c.alpha.empty()) throw DomainError("splitting_constant_check: empty coefficient set");
    BigReal fitted = c.fit_on_values ? c.alpha[0] : exp(c.alpha[0]);
    BigReal rel = abs(reference - fitted) / abs(reference);
    if (rel.is_zero()) return static_cast<double>(reference.prec()); // exact to working precision
    return -rel.log10_magnitude();
}

GevreyReport gevrey_diagnostic(const std::vector<BigReal>& alpha) {
    if (alpha.size() < 10) throw DomainError("gevrey_diagnostic: need at least 10 coefficients");

    // s_k = |alpha_k| / k!; a Gevrey-1 sequence has log s_k ~ log M - k log r
    std::vector<double> ks, ls;
    double lfact = 0;
    for (size_t k = 0; k < alpha.size(); ++k) {
        if (k > 0) lfact += std::log10(static_cast<double>(k));
        if (alpha[k].is_zero()) continue;
        ks.push_back(static_cast<double>(k));
        ls.push_back(alpha[k].log10_magnitude() - lfact);
    }
    GevreyReport rep;
    rep.coefficients_used = static_cast<int>(ks.size());
    if (ks.size() < 6) {
        rep.radius_unbounded = true;
        return rep;
    }

    auto fit_range = [&](size_t lo, size_t hi) {
        std::vector<double> x(ks.begin() + lo, ks.begin() + hi);
        std::vector<double> y(ls.begin() + lo, ls.begin() + hi);
        return lsq_slope(x, y);
    };
    size_t n = ks.size();
    double slope_all = fit_range(0, n);
    double slope_head = fit_range(0, n / 2);
    double slope_tail = fit_range(n / 2, n);

    rep.growth_radius = std::pow(10.0, -slope_all);
    // intercept from the tightest bound: M = max_k s_k r^k
    double lm = -1e300;
    for (size_t i = 0; i < ks.size(); ++i) lm = std::max(lm, ls[i] - slope_all * ks[i]);
    rep.prefactor_log10 = lm;
    // steepening decay (sub-factorial growth): no finite radius binds
    rep.radius_unbounded = slope_tail < slope_head - 0.05;
    return rep;
}

} // namespace hzone
