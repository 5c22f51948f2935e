// Acceptance suite: end-to-end checks of the width pipeline against the
// reference constants and the library's own property contracts, at desk
// scale. Each criterion prints one PASS/FAIL line; the exit code is 0 only
// if every selected criterion passes.
//
// Scans are cached under acceptance_runs/ (resume-enabled), so a rerun
// reuses every completed node.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "hzone/pipeline.hpp"
#include "hzone/series.hpp"

using namespace hzone;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void outcome(int criterion, bool pass, const std::string& what, const std::string& detail) {
    std::printf("%s  criterion %d: %s  [%s]\n", pass ? "PASS" : "FAIL", criterion, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ScanConfig base_config(const char* name) {
    ScanConfig cfg;
    cfg.out_dir = (fs::path("acceptance_runs") / name).string();
    cfg.resume = true;
    cfg.target_digits = 20;
    return cfg;
}

WidthDataset run_scan(ScanConfig cfg) {
    fs::create_directories(cfg.out_dir);
    return scan_widths(cfg);
}

// ---- scans shared between criteria ----

WidthDataset henon_dataset() {
    ScanConfig cfg = base_config("henon");
    cfg.family = "henon";
    cfg.gamma = "0";
    // 1 - a~ in [1e-4, 1e-2]
    cfg.range_lo = "0.99";
    cfg.range_hi = "0.9999";
    cfg.nodes = 28;
    cfg.method = "real";
    return run_scan(cfg);
}

WidthDataset bogdanov_dataset() {
    ScanConfig cfg = base_config("bogdanov");
    cfg.family = "bogdanov";
    cfg.gamma = "3";
    cfg.range_lo = "0.005";
    cfg.range_hi = "0.05";
    cfg.nodes = 24;
    cfg.method = "real";
    return run_scan(cfg);
}

WidthDataset quadratic_dataset() {
    ScanConfig cfg = base_config("quadratic");
    cfg.family = "quadratic";
    cfg.gamma = "-3";
    // deep enough that the fast-growing quadratic-family coefficients leave
    // a small truncation tail over the fitted window
    cfg.range_lo = "1e-5";
    cfg.range_hi = "2.5e-4";
    cfg.nodes = 24;
    cfg.method = "real";
    return run_scan(cfg);
}

// ---- criteria ----

void criterion_1() {
    const char* theta0 = "2.4744255935e6"; // Henon splitting constant
    try {
        WidthDataset ds = henon_dataset();
        PrecisionContext ctx = fit_context(ds);
        ExpansionCoefficients c = fit_dataset(ds, 12, ctx); // 13 leading nodes
        BigReal ref = parse_decimal(theta0, ctx);
        double rel = (abs(c.alpha[0] - ref) / ref).to_double();
        outcome(1, rel < 1e-6, "Henon constant A~_0 = 2.4744255935e6 to 1e-6",
                "fitted " + format_decimal(c.alpha[0], 12) + ", rel err " + fmt(rel));
    } catch (const Error& e) {
        outcome(1, false, "Henon constant scan", e.what());
    }
}

void criterion_2() {
    try {
        WidthDataset ds = bogdanov_dataset();
        PrecisionContext ctx = fit_context(ds);
        ExpansionCoefficients c = fit_dataset(ds, 8, ctx); // 13 leading nodes
        BigReal theta = parse_decimal("4.05522622851113044e26", ctx);
        BigReal a0 = c.alpha[0];
        double rel = (abs(exp(a0) - theta) / theta).to_double();
        bool pass_exp = rel < 1e-5;
        // cross-link: ln Theta agrees with the reference A_0 = 61.26721889
        double lncheck = abs(log(theta) - parse_decimal("61.26721889", ctx)).to_double();
        bool pass_ln = lncheck < 1e-6 * 61.27;
        outcome(2, pass_exp && pass_ln, "Bogdanov constant exp(A_0) = Theta(3) to 1e-5",
                "A_0 " + format_decimal(a0, 12) + ", rel err " + fmt(rel) + ", ln-consistency " + fmt(lncheck));
    } catch (const Error& e) {
        outcome(2, false, "Bogdanov constant scan", e.what());
    }
}

void criterion_3() {
    try {
        WidthDataset bog = bogdanov_dataset();
        PrecisionContext ctxb = fit_context(bog);
        ExpansionCoefficients cb = fit_dataset(bog, 8, ctxb);
        // The reference B_k values are quoted against x^{2k} log x with
        // x = sqrt(a) (half-log-a units): the closed form -(6 gamma~/7)^2 is
        // exactly twice the universal log-a coefficient -18 gamma~^2/49, and
        // the fitted data confirm the latter. Convert before comparing.
        BigReal b1_halflog = 2 * cb.alpha[2];
        BigReal b1_exact = analytic_first_log_coefficient(MapFamily::bogdanov(ctxb.make_real(3)), ctxb);
        double rel_b = (abs(b1_halflog - b1_exact) / abs(b1_exact)).to_double();
        bool b1_value_ok = abs(b1_exact + ctxb.make_real(324) / 49) < ctxb.rounding_floor();

        WidthDataset quad = quadratic_dataset();
        PrecisionContext ctxq = fit_context(quad);
        ExpansionCoefficients cq = fit_dataset(quad, 10, ctxq);
        BigReal n1_exact = analytic_first_log_coefficient(MapFamily::quadratic(parse_decimal("-3", ctxq)), ctxq);
        double rel_n = (abs(cq.alpha[2] - n1_exact) / abs(n1_exact)).to_double();
        bool n1_value_ok = abs(n1_exact + ctxq.make_real(900) / 98) < ctxq.rounding_floor();

        outcome(3, rel_b < 1e-3 && rel_n < 1e-3 && b1_value_ok && n1_value_ok,
                "fitted B_1(3) = -324/49 and N_1(-3) = -900/98 to 1e-3",
                "B_1 " + format_decimal(b1_halflog, 10) + " (rel " + fmt(rel_b) + "), N_1 " +
                    format_decimal(cq.alpha[2], 10) + " (rel " + fmt(rel_n) + ")");
    } catch (const Error& e) {
        outcome(3, false, "closed-form log coefficients", e.what());
    }
}

void criterion_4() {
    try {
        ScanConfig cfg = base_config("both");
        cfg.family = "bogdanov";
        cfg.gamma = "3";
        cfg.range_lo = "0.015";
        cfg.range_hi = "0.03";
        cfg.nodes = 6;
        cfg.method = "both";
        cfg.delta_ratio = 0.25;
        run_scan(cfg);

        std::ifstream in(cfg.compare_path());
        if (!in) throw IoError("method comparison file missing");
        std::string line;
        int checked = 0;
        bool all_ok = true, inv_ok = true;
        double inv_dev = 0;
        std::string detail;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ss(line);
            std::string main_text, f_zr, f_diff, f_e2pid, f_c1;
            std::getline(ss, main_text, ',');
            std::getline(ss, f_zr, ',');
            std::getline(ss, f_diff, ',');
            std::getline(ss, f_e2pid, ',');
            std::getline(ss, f_c1, ',');
            double log_zr = std::stod(f_zr), log_diff = std::stod(f_diff), log_e2pid = std::stod(f_e2pid);
            double log_c1 = std::stod(f_c1);

            // Stated check: |Z_r - Z_c|/Z_r < 10 |C_-1| e^{2 pi delta} with
            // the realized exponent within a decade of the prediction. The
            // invariant variant replaces |C_-1| by its slope-normalized
            // magnitude Z_c/4 (the splitting determinant's overall scale is
            // a free parameterization constant that Z_r, Z_c and their gap
            // do not carry, so the literal bound inherits it).
            double rel_err_log = log_diff - log_zr;       // log10 |Zr-Zc|/Zr
            double predicted_rel = log_c1 + log_e2pid;    // stated form
            double predicted_inv = log_zr + log_e2pid;    // slope-normalized |C_-1| ~ Z_c/4
            bool bound_ok = rel_err_log < predicted_rel + 1.0;
            bool decade_ok = std::fabs(rel_err_log - predicted_rel) <= 1.0;
            bool inv_bound_ok = rel_err_log < predicted_inv + 1.0;
            all_ok = all_ok && bound_ok && decade_ok;
            inv_ok = inv_ok && inv_bound_ok;
            inv_dev = std::max(inv_dev, std::fabs(rel_err_log - predicted_inv));
            ++checked;
            if (!bound_ok || !decade_ok)
                detail +=
                    " node " + main_text + ": rel 1e" + fmt(rel_err_log) + " vs 1e" + fmt(predicted_rel) + ";";
        }
        if (checked == 0) throw IoError("no comparison rows");
        detail += " | invariant form: bound " + std::string(inv_ok ? "holds" : "fails") + " on all nodes, max |dev| " +
                  fmt(inv_dev) + " decades";
        outcome(4, all_ok, "real/complex method consistency on every both-method node",
                detail);
    } catch (const Error& e) {
        outcome(4, false, "method consistency scan", e.what());
    }
}

void criterion_5() {
    try {
        WidthDataset ds = henon_dataset();
        auto run = validate_extrapolability(ds, 12, fs::path("acceptance_runs/henon/extrapolation.csv"));
        double dev = std::fabs(run.report.slope_x - run.report.expected_power) / run.report.expected_power;
        outcome(5, dev < 0.05, "extrapolation slope within 5% of the first-omitted exponent",
                "slope " + fmt(run.report.slope_x) + " vs " + fmt(run.report.expected_power) + " (dev " +
                    fmt(100 * dev) + "%), fit " + fmt(run.fit_nodes) + " holdout " + fmt(run.holdout_nodes));
    } catch (const Error& e) {
        outcome(5, false, "extrapolability", e.what());
    }
}

void criterion_6() {
    try {
        WidthDataset ds = bogdanov_dataset();
        // protocol run at 80 working digits, the scaled analogue of the
        // reference stability experiment
        PrecisionContext ctx80(80);
        AsymptoticSequence seq = AsymptoticSequence::dulac(2);
        int size = basis_size_for(seq, 8);
        std::vector<BigReal> xs, w;
        for (int i = 0; i < size; ++i) {
            xs.push_back(ds.nodes[i].x);
            w.push_back(ds.nodes[i].log_s);
        }
        std::vector<double> ns{20, 40, 60}, digits;
        int mid = size / 2;
        for (double n : ns) {
            StabilityReport rep = stability_test(seq, xs, w, static_cast<int>(n), 8, 20260808, ctx80);
            digits.push_back(-rep.max_rel_err_log10[mid]);
        }
        double corr = correlation(ns, digits);
        bool monotone = digits[0] < digits[1] && digits[1] < digits[2];
        outcome(6, corr >= 0.95 && monotone, "stability: matched digits of a mid coefficient linear in N",
                "digits {" + fmt(digits[0]) + ", " + fmt(digits[1]) + ", " + fmt(digits[2]) + "}, corr " + fmt(corr));
    } catch (const Error& e) {
        outcome(6, false, "stability protocol", e.what());
    }
}

void criterion_7() {
    // property suites with no reference numbers
    std::string detail;
    bool all = true;
    auto sub = [&](bool ok, const char* name) {
        all = all && ok;
        if (!ok) detail += std::string("FAILED:") + name + " ";
    };
    try {
        // manifold conjugacy and wronskian residual slopes
        PrecisionContext ctx(60);
        auto quad = MapFamily::quadratic(parse_decimal("-3", ctx));
        ParamPoint p{parse_decimal("0.01", ctx), parse_decimal("-0.035", ctx)};
        const int order = 12;
        ManifoldSeries ms = compute_series(quad, p, Branch::stable, order, ctx);
        std::vector<double> lx, ly;
        BigReal z = ms.radius;
        for (int i = 0; i < 8; ++i) {
            BigReal r = conjugacy_residual(quad, p, ms, z);
            lx.push_back(z.log10_magnitude());
            ly.push_back(r.log10_magnitude());
            z = z * 3 / 4;
        }
        sub(lsq_slope(lx, ly) >= order - 1, "manifold-residual-slope");

        JacobianSeries jac = jacobian_along_stable(quad, p, ms);
        SaddleData sad = quad.saddle(p, ctx);
        WronskianSeries wr = wronskian_series(jac, sad.lambda_stable, ctx);
        lx.clear();
        ly.clear();
        z = ms.radius / 2;
        for (int i = 0; i < 8; ++i) {
            BigReal lhs = eval_wronskian(wr, sad.lambda_stable * z);
            BigReal rhs = horner(jac.coeff, z) * eval_wronskian(wr, z);
            lx.push_back(z.log10_magnitude());
            ly.push_back(abs(lhs - rhs).log10_magnitude());
            z = z * 3 / 4;
        }
        sub(lsq_slope(lx, ly) >= order - 1, "wronskian-residual-slope");

        // harmonics: exact conjugate pair and strip-decay envelope
        auto bog = MapFamily::bogdanov(ctx.make_real(3));
        BigReal a = parse_decimal("0.1", ctx);
        HomoclinicJob job(bog, a, ctx);
        HomoclinicFrame frame = find_primary_homoclinic(job, bog.predicted_homoclinic_slave(a));
        Harmonics h = harmonics_real(job, frame.state, frame.z_unstable);
        sub(h.plus_one.re == h.minus_one.re && h.plus_one.im == -h.minus_one.im, "conjugate-harmonics");

        const int nd = 64;
        std::vector<BigReal> samples;
        for (int j = 0; j < nd; ++j)
            samples.push_back(splitting_determinant(job, frame.state, frame.z_unstable, BigReal(j, ctx.bits()) / nd));
        auto dft_abs = [&](int k) {
            BigReal re(0, ctx.bits()), im(0, ctx.bits());
            BigReal twopi = 2 * pi(ctx.bits());
            for (int j = 0; j < nd; ++j) {
                BigReal ang = twopi * k * j / nd;
                re += samples[j] * cos(ang);
                im -= samples[j] * sin(ang);
            }
            return abs(BigComplex(re / nd, im / nd));
        };
        BigReal rho_half = job.strip_halfwidth(frame.state) / 2;
        BigReal sup(0, ctx.bits());
        for (int j = 0; j < 8; ++j) {
            BigComplex t(BigReal(j, ctx.bits()) / 8, rho_half);
            sup = max(sup, abs(splitting_determinant(job, frame.state, frame.z_unstable, t)));
        }
        bool envelope = true;
        for (int k = 1; k <= 2; ++k) {
            BigReal env = 10 * sup * exp(-(2 * pi(ctx.bits())) * k * rho_half);
            envelope = envelope && dft_abs(k) <= env && dft_abs(-k) <= env;
        }
        sub(envelope, "harmonic-decay-envelope");

        // interpolation round trip at 1e-(D-20)
        PrecisionContext ctx80(80);
        auto seq = AsymptoticSequence::dulac(2);
        std::vector<BigReal> xs, w, alpha;
        for (int i = 0; i < 16; ++i) alpha.push_back(ctx80.make_real((i * 37) % 11 + 1));
        for (int i = 0; i < 16; ++i) {
            BigReal x = parse_decimal("0.1", ctx80) + ctx80.make_real(i) / 100;
            xs.push_back(x);
            BigReal acc = ctx80.make_real(0);
            for (int k = 0; k < 16; ++k) acc += alpha[k] * seq.basis(k, x);
            w.push_back(acc);
        }
        ExpansionCoefficients c = solve_coefficients(seq, xs, w, ctx80);
        bool round_trip = true;
        for (int i = 0; i < 16; ++i)
            round_trip = round_trip && abs(c.alpha[i] - alpha[i]) / abs(alpha[i]) < ctx80.pow10(-(80 - 20));
        sub(round_trip, "interpolation-round-trip");

        // pipeline determinism and resume safety
        fs::remove_all("acceptance_runs/det1");
        fs::remove_all("acceptance_runs/det2");
        ScanConfig c1 = base_config("det1");
        c1.family = "bogdanov";
        c1.gamma = "3";
        c1.range_lo = "0.08";
        c1.range_hi = "0.16";
        c1.nodes = 4;
        c1.target_digits = 10;
        c1.resume = false;
        ScanConfig c2 = c1;
        c2.out_dir = "acceptance_runs/det2";
        scan_widths(c1);
        scan_widths(c2);
        auto slurp = [](const fs::path& path) {
            std::ifstream in(path);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        std::string bytes1 = slurp(c1.dataset_path());
        sub(!bytes1.empty() && bytes1 == slurp(c2.dataset_path()), "pipeline-determinism");

        // truncate to simulate an interrupted scan, then resume
        {
            std::istringstream in(bytes1);
            std::ofstream out(c1.dataset_path());
            std::string line;
            int rows = 0;
            while (std::getline(in, line)) {
                if (!line.empty() && line[0] != '#' && ++rows > 2) break;
                out << line << "\n";
            }
        }
        c1.resume = true;
        scan_widths(c1);
        sub(slurp(c1.dataset_path()) == bytes1, "resume-safety");
    } catch (const Error& e) {
        sub(false, e.what());
    }
    outcome(7, all,
            "property suites (residual slopes, harmonics, round trip, determinism)",
            detail.empty() ? "all subchecks passed" : detail);
}

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    auto want = [&](int k) { return selected.empty() || selected.count(k) > 0; };

    if (want(1)) criterion_1();
    if (want(2)) criterion_2();
    if (want(3)) criterion_3();
    if (want(4)) criterion_4();
    if (want(5)) criterion_5();
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();

    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    else std::printf("all criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
