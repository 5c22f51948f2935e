#include "hzone/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace hzone {

namespace fs = std::filesystem;

void write_dataset_header_for(std::ostream& out, const WidthDataset& ds);

void ScanConfig::set(std::string_view key, std::string_view value) {
    std::string v(value);
    if (key == "family") family = v;
    else if (key == "gamma") gamma = v;
    else if (key == "range_lo") range_lo = v;
    else if (key == "range_hi") range_hi = v;
    else if (key == "nodes") nodes = std::stoi(v);
    else if (key == "method") method = v;
    else if (key == "delta_ratio") delta_ratio = std::stod(v);
    else if (key == "target_digits") target_digits = std::stoi(v);
    else if (key == "min_digits") min_digits = std::stoi(v);
    else if (key == "guard_digits") guard_digits = std::stoi(v);
    else if (key == "out_dir") out_dir = v;
    else if (key == "resume") resume = (v == "1" || v == "true" || v == "yes");
    else if (key == "workers") workers = std::stoi(v);
    else if (key == "seed") seed = std::stoull(v);
    else if (key == "trace") trace = (v == "1" || v == "true" || v == "yes");
    else throw ParseError("ScanConfig: unknown key '" + std::string(key) + "'");
}

ScanConfig ScanConfig::from_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw IoError("ScanConfig: cannot open " + p.string());
    ScanConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("ScanConfig: malformed line '" + line + "'");
        cfg.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return cfg;
}

void ScanConfig::validate() const {
    if (range_lo.empty() || range_hi.empty()) throw ParseError("ScanConfig: range is required");
    PrecisionContext probe(60);
    BigReal lo = parse_decimal(range_lo, probe), hi = parse_decimal(range_hi, probe);
    if (!(lo.sign() > 0 && lo < hi)) throw DomainError("ScanConfig: need 0 < c < d");
    if (nodes < 4) throw DomainError("ScanConfig: need at least 4 nodes");
    if (method != "real" && method != "complex" && method != "both")
        throw ParseError("ScanConfig: method must be real|complex|both");
    if (workers < 1) throw DomainError("ScanConfig: workers must be >= 1");
    if (target_digits < 1) throw DomainError("ScanConfig: target_digits must be >= 1");
    MapFamily::from_name(family, gamma, probe);
}

std::string ScanConfig::fingerprint() const {
    std::ostringstream s;
    s << family << "/" << gamma << "/" << range_lo << ":" << range_hi << "/n" << nodes << "/" << method << "/d"
      << delta_ratio << "/t" << target_digits << "/s" << seed;
    return s.str();
}

fs::path ScanConfig::dataset_path() const { return fs::path(out_dir) / "dataset.csv"; }
fs::path ScanConfig::compare_path() const { return fs::path(out_dir) / "method_compare.csv"; }
fs::path ScanConfig::coefficients_path() const { return fs::path(out_dir) / "coefficients.csv"; }
fs::path ScanConfig::scan_log_path() const { return fs::path(out_dir) / "scan_log.txt"; }

int scheduled_digits(const ScanConfig& cfg, double main_value) {
    PrecisionContext probe(60);
    MapFamily map = MapFamily::from_name(cfg.family, cfg.gamma, probe);
    double lk = map.leading_width_log10(main_value);
    double budget = std::fabs(lk) + cfg.target_digits + 50;
    if (cfg.method == "complex") {
        // the complex estimator only resolves Theta~ at the inflated
        // magnitude K e^{2 pi delta}, so it needs fewer digits
        double mu = main_value;
        switch (map.family()) {
            case Family::quadratic: mu = main_value; break;
            case Family::bogdanov: mu = main_value * main_value / 4; break;
            case Family::henon: mu = std::fabs(1 - main_value); break;
        }
        double log_l1 = std::log(1 + std::sqrt(2 * std::sqrt(mu))); // ~|log lambda1|
        double rho = 0.9 * 3.14159265358979 / log_l1;
        double delta = cfg.delta_ratio * rho;
        double e2pid_log10 = 2 * 3.14159265358979 * delta * 0.434294481903;
        budget = std::fabs(lk + e2pid_log10) + cfg.target_digits + 50;
    }
    return std::max(cfg.min_digits, static_cast<int>(std::ceil(budget)));
}

namespace {

struct NodeResult {
    NodeRecord record;
    std::optional<WidthDataset::Node> node;
    std::string compare_row; // method-comparison columns (both mode)
    bool slope_stable = true;
};

struct GridPoint {
    std::string main_text; // canonical decimal, shared across precisions
    std::string x_text;    // canonical transformed abscissa
    double main_approx;
};

// dataset abscissa: main^{1/root_power}, with |1 - main| for the Henon
// family whose bifurcation sits at main = 1
BigReal main_to_x(const MapFamily& map, const AsymptoticSequence& seq, const BigReal& main) {
    BigReal base = map.family() == Family::henon ? abs(1 - main) : main;
    return seq.root_power == 2 ? sqrt(base) : sqrt(sqrt(base));
}

std::vector<GridPoint> node_grid(const ScanConfig& cfg) {
    // equally spaced in the transformed variable x = main^{1/root_power}
    PrecisionContext ctx(80);
    MapFamily map = MapFamily::from_name(cfg.family, cfg.gamma, ctx);
    AsymptoticSequence seq = AsymptoticSequence::for_family(map.family());
    BigReal lo = parse_decimal(cfg.range_lo, ctx), hi = parse_decimal(cfg.range_hi, ctx);

    BigReal xlo = main_to_x(map, seq, lo), xhi = main_to_x(map, seq, hi);
    if (map.family() == Family::henon && !(xlo < xhi)) std::swap(xlo, xhi);

    std::vector<GridPoint> grid;
    grid.reserve(cfg.nodes);
    for (int i = 0; i < cfg.nodes; ++i) {
        BigReal x = xlo + (xhi - xlo) * i / (cfg.nodes - 1);
        BigReal scale = pow_int(x, seq.root_power);
        BigReal main = map.family() == Family::henon ? 1 - scale : scale;
        std::string main_text = format_decimal(main, 40);
        // canonical abscissa recomputed from the canonical main
        BigReal x_canon = main_to_x(map, seq, parse_decimal(main_text, ctx));
        grid.push_back({main_text, format_decimal(x_canon, 40), main.to_double()});
    }
    return grid;
}

NodeResult run_node(const ScanConfig& cfg, int index, const GridPoint& gp) {
    NodeResult out;
    out.record.index = index;
    out.record.main_text = gp.main_text;
    auto start = std::chrono::steady_clock::now();
    try {
        int digits = scheduled_digits(cfg, gp.main_approx);
        out.record.digits = digits;
        PrecisionContext ctx(digits, cfg.guard_digits);
        MapFamily map = MapFamily::from_name(cfg.family, cfg.gamma, ctx);
        BigReal main = parse_decimal(gp.main_text, ctx);

        SplitOptions opt;
        opt.delta_ratio = cfg.delta_ratio;
        if (cfg.trace) {
            fs::path tdir = fs::path(cfg.out_dir) / "trace";
            fs::create_directories(tdir);
            opt.trace_path = (tdir / ("node_" + std::to_string(index) + ".csv")).string();
            std::ofstream reset(opt.trace_path, std::ios::trunc);
            reset << "# kind,step,value,extra\n";
        }
        HomoclinicJob job(map, main, ctx, opt);

        WidthEstimate est;
        std::optional<WidthEstimate> alt;
        if (cfg.method == "real") {
            est = width_real(job);
        } else if (cfg.method == "complex") {
            est = width_complex(job);
        } else {
            auto [wr, wc] = width_both(job);
            est = wr;
            alt = wc;
        }

        BigReal s = normalize_width(map, main, est.value);

        WidthDataset::Node node;
        node.x = parse_decimal(gp.x_text, ctx);
        node.log_s = log(s);
        node.width = est.value;
        node.error_exponent = est.error_exponent10;
        out.node = std::move(node);

        out.record.ok = true;
        out.record.log10_width = est.value.log10_magnitude();
        out.record.error_exponent = est.error_exponent10;
        out.record.precision_flagged = digits - std::fabs(out.record.log10_width) < cfg.target_digits;
        out.slope_stable = est.slope_stable && (!alt || alt->slope_stable);

        if (alt) {
            std::ostringstream row;
            BigReal diff = abs(est.value - alt->value);
            row << gp.main_text << "," << est.value.log10_magnitude() << ","
                << (diff.is_zero() ? -out.record.digits - 30.0 : diff.log10_magnitude()) << "," << alt->log10_e2pid
                << "," << alt->first_harmonic_abs.log10_magnitude();
            out.compare_row = row.str();
        }
    } catch (const Error& e) {
        out.record.ok = false;
        out.record.error = e.what();
    }
    auto end = std::chrono::steady_clock::now();
    out.record.milliseconds = std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
    return out;
}

// payloads are reported truncated to the node's scheduled digit budget D;
// guard digits stay internal
std::string dataset_row(const GridPoint& gp, const WidthDataset::Node& n, int digits) {
    std::ostringstream row;
    row << gp.x_text << "," << format_decimal(n.log_s, digits) << "," << format_decimal(n.width, digits) << ","
        << n.error_exponent;
    return row.str();
}

} // namespace

WidthDataset scan_widths(const ScanConfig& cfg, RunReport* report) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);

    std::vector<GridPoint> grid = node_grid(cfg);

    std::vector<bool> done(grid.size(), false);
    std::vector<std::string> done_rows(grid.size());
    std::vector<std::string> compare_rows(grid.size());
    if (cfg.resume && fs::exists(cfg.dataset_path())) {
        // rows are preserved verbatim; nodes are matched on the canonical
        // abscissa text
        std::ifstream in(cfg.dataset_path());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::string xfield = line.substr(0, line.find(','));
            for (size_t i = 0; i < grid.size(); ++i) {
                if (grid[i].x_text == xfield) {
                    done[i] = true;
                    done_rows[i] = line;
                    break;
                }
            }
        }
        if (fs::exists(cfg.compare_path())) {
            std::ifstream in(cfg.compare_path());
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                auto comma = line.find(',');
                std::string main_text = line.substr(0, comma);
                for (size_t i = 0; i < grid.size(); ++i)
                    if (grid[i].main_text == main_text) compare_rows[i] = line;
            }
        }
    }

    // work queue -> results, single writer appends in node order
    std::mutex mu;
    std::condition_variable cv;
    size_t next_task = 0;
    std::vector<std::optional<NodeResult>> results(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
        if (done[i]) {
            NodeResult r;
            r.record.index = static_cast<int>(i);
            r.record.main_text = grid[i].main_text;
            r.record.ok = true;
            r.compare_row = compare_rows[i];
            results[i] = std::move(r);
        }

    auto worker = [&] {
        for (;;) {
            size_t task;
            {
                std::lock_guard<std::mutex> lk(mu);
                while (next_task < grid.size() && done[next_task]) ++next_task;
                if (next_task >= grid.size()) return;
                task = next_task++;
            }
            NodeResult r = run_node(cfg, static_cast<int>(task), grid[task]);
            {
                std::lock_guard<std::mutex> lk(mu);
                results[task] = std::move(r);
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    int nworkers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(grid.size())));
    pool.reserve(nworkers);
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);

    // writer: rewrite header + all completed rows up to the contiguous
    // frontier after each new completion, keeping the file resumable at any
    // interruption point.
    WidthDataset ds;
    ds.family = cfg.family;
    ds.gamma_text = cfg.gamma;
    ds.digits = cfg.target_digits;
    ds.method = cfg.method;
    ds.created = cfg.fingerprint();

    RunReport local_report;
    RunReport& rep = report ? *report : local_report;
    rep.nodes.assign(grid.size(), NodeRecord{});

    std::ofstream run_log(cfg.scan_log_path(), cfg.resume ? std::ios::app : std::ios::trunc);
    size_t frontier = 0;
    auto flush_frontier = [&](size_t upto) {
        std::ofstream out(cfg.dataset_path(), std::ios::trunc);
        write_dataset_header_for(out, ds);
        for (size_t i = 0; i < upto; ++i) {
            if (!results[i] || !results[i]->record.ok) continue;
            if (done[i]) out << done_rows[i] << "\n";
            else if (results[i]->node)
                out << dataset_row(grid[i], *results[i]->node, results[i]->record.digits) << "\n";
        }
    };

    {
        std::unique_lock<std::mutex> lk(mu);
        for (;;) {
            cv.wait_for(lk, std::chrono::milliseconds(50), [&] {
                return frontier < results.size() && results[frontier].has_value();
            });
            bool advanced = false;
            while (frontier < results.size() && results[frontier].has_value()) {
                ++frontier;
                advanced = true;
            }
            if (advanced) {
                lk.unlock();
                flush_frontier(frontier);
                lk.lock();
            }
            if (frontier >= results.size()) break;
        }
    }
    for (auto& t : pool) t.join();
    flush_frontier(results.size());

    // assemble the in-memory dataset, reports and auxiliary files
    int failures = 0;
    std::ostringstream compare;
    compare << "# main,log10_width_real,log10_method_diff,log10_e2pidelta,log10_first_harmonic\n";
    bool any_compare = false;
    for (size_t i = 0; i < results.size(); ++i) {
        rep.nodes[i] = results[i]->record;
        if (!results[i]->record.ok) {
            ++failures;
            run_log << "node " << i << " main=" << grid[i].main_text << " FAILED: " << results[i]->record.error
                    << "\n";
        } else {
            run_log << "node " << i << " main=" << grid[i].main_text << " digits=" << results[i]->record.digits
                    << " log10_width=" << results[i]->record.log10_width << " ms=" << results[i]->record.milliseconds
                    << (results[i]->record.precision_flagged ? " PRECISION-FLAG" : "")
                    << (results[i]->slope_stable ? "" : " SLOPE-UNSTABLE") << "\n";
        }
        if (!results[i]->compare_row.empty()) {
            compare << results[i]->compare_row << "\n";
            any_compare = true;
        }
    }
    rep.failures = failures;
    if (failures * 4 > static_cast<int>(grid.size())) {
        rep.aborted = true;
        throw ConvergenceError("scan_widths: more than a quarter of the nodes failed");
    }
    if (any_compare) {
        std::ofstream out(cfg.compare_path());
        out << compare.str();
    }

    return load_dataset(cfg.dataset_path());
}

// header writer shared with save_dataset (kept in dataset.cpp)
void write_dataset_header_for(std::ostream& out, const WidthDataset& ds) {
    out << "# family=" << ds.family << "\n";
    out << "# gamma=" << ds.gamma_text << "\n";
    out << "# digits=" << ds.digits << "\n";
    out << "# method=" << ds.method << "\n";
    out << "# created=" << ds.created << "\n";
}

int basis_size_for(const AsymptoticSequence& seq, int ell) {
    if (ell < 2 || ell % 2 != 0) throw DomainError("basis size: ell must be even and >= 2");
    return seq.kind == AsymptoticSequence::Kind::dulac ? 3 * ell / 2 + 1 : ell + 1;
}

PrecisionContext fit_context(const WidthDataset& ds, int guard) {
    double deepest = 0;
    for (const auto& n : ds.nodes) deepest = std::max(deepest, std::fabs(n.width.log10_magnitude()));
    int digits = std::max(60, static_cast<int>(std::ceil(deepest)) + 40);
    return PrecisionContext(digits, guard);
}

ExpansionCoefficients fit_dataset(const WidthDataset& ds, int ell, const PrecisionContext& ctx,
                                  const std::optional<fs::path>& out, bool least_squares) {
    MapFamily map = MapFamily::from_name(ds.family, ds.gamma_text.empty() ? "0" : ds.gamma_text, ctx);
    AsymptoticSequence seq = AsymptoticSequence::for_family(map.family());
    int size = basis_size_for(seq, ell);
    if (size > static_cast<int>(ds.nodes.size()))
        throw DomainError("fit_dataset: need 3l/2+1 <= node count");

    bool on_values = map.family() == Family::henon;
    std::vector<BigReal> xs, w;
    int use = least_squares ? static_cast<int>(ds.nodes.size()) : size;
    for (int i = 0; i < use; ++i) {
        xs.push_back(ds.nodes[i].x);
        w.push_back(on_values ? exp(ds.nodes[i].log_s) : ds.nodes[i].log_s);
    }
    ExpansionCoefficients c = least_squares ? solve_coefficients_lsq(seq, size, xs, w, ctx, on_values)
                                            : solve_coefficients(seq, xs, w, ctx, on_values);
    if (out) save_coefficients(c, ds, *out);
    return c;
}

ExtrapolabilityRun validate_extrapolability(const WidthDataset& ds, int ell, const std::optional<fs::path>& pairs_out) {
    if (ds.nodes.size() < 6) throw DomainError("validate_extrapolability: dataset too small");
    PrecisionContext ctx = fit_context(ds);
    MapFamily map = MapFamily::from_name(ds.family, ds.gamma_text.empty() ? "0" : ds.gamma_text, ctx);
    AsymptoticSequence seq = AsymptoticSequence::for_family(map.family());
    int size = basis_size_for(seq, ell);

    // fit window: nodes in the inner half of the x-range
    BigReal mid = (ds.nodes.front().x + ds.nodes.back().x) / 2;
    WidthDataset inner, outer;
    inner = ds;
    inner.nodes.clear();
    outer = ds;
    outer.nodes.clear();
    for (const auto& n : ds.nodes) (n.x <= mid ? inner : outer).nodes.push_back(n);
    if (static_cast<int>(inner.nodes.size()) < size)
        throw DomainError("validate_extrapolability: inner window has fewer nodes than the basis");

    bool on_values = map.family() == Family::henon;
    std::vector<BigReal> xs, w;
    for (int i = 0; i < size; ++i) {
        xs.push_back(inner.nodes[i].x);
        w.push_back(on_values ? exp(inner.nodes[i].log_s) : inner.nodes[i].log_s);
    }
    ExpansionCoefficients c = solve_coefficients(seq, xs, w, ctx, on_values);

    ExtrapolabilityRun run;
    run.fit_nodes = size;
    run.holdout_nodes = static_cast<int>(outer.nodes.size());
    run.report = extrapolability_test(c, outer);
    if (pairs_out) {
        std::ofstream out(*pairs_out);
        out << "# log10_main,log10_residual\n";
        for (auto& [lx, ly] : run.report.points) out << lx << "," << ly << "\n";
    }
    return run;
}

StabilityRun validate_stability(const WidthDataset& ds, int ell, const std::vector<int>& exponents, int trials,
                                uint64_t seed, const std::optional<fs::path>& out) {
    PrecisionContext ctx = fit_context(ds);
    MapFamily map = MapFamily::from_name(ds.family, ds.gamma_text.empty() ? "0" : ds.gamma_text, ctx);
    AsymptoticSequence seq = AsymptoticSequence::for_family(map.family());
    int size = basis_size_for(seq, ell);
    if (size > static_cast<int>(ds.nodes.size())) throw DomainError("validate_stability: dataset too small");

    bool on_values = map.family() == Family::henon;
    std::vector<BigReal> xs, w;
    for (int i = 0; i < size; ++i) {
        xs.push_back(ds.nodes[i].x);
        w.push_back(on_values ? exp(ds.nodes[i].log_s) : ds.nodes[i].log_s);
    }

    StabilityRun run;
    run.coefficient_index = size / 2;
    for (int n : exponents) run.per_exponent.push_back(stability_test(seq, xs, w, n, trials, seed, ctx, on_values));

    if (out) {
        std::ofstream f(*out);
        f << "# perturb_digits,coefficient_index,matched_digits\n";
        for (const auto& repn : run.per_exponent)
            for (size_t i = 0; i < repn.max_rel_err_log10.size(); ++i)
                f << repn.perturb_digits << "," << i << "," << -repn.max_rel_err_log10[i] << "\n";
    }
    return run;
}

double validate_constant(const WidthDataset& ds, int ell, const std::string& reference_decimal) {
    PrecisionContext ctx = fit_context(ds);
    ExpansionCoefficients c = fit_dataset(ds, ell, ctx);
    return splitting_constant_check(c, parse_decimal(reference_decimal, ctx));
}

std::string render_report(const ScanConfig& cfg) {
    std::ostringstream out;
    out << "run: " << cfg.fingerprint() << "\n\n";

    if (fs::exists(cfg.dataset_path())) {
        WidthDataset ds = load_dataset(cfg.dataset_path());
        out << "dataset: " << ds.nodes.size() << " nodes, method=" << ds.method << "\n";
        for (const auto& n : ds.nodes)
            out << "  x=" << format_decimal(n.x, 12) << "  log_S=" << format_decimal(n.log_s, 20)
                << "  log10_width=" << n.width.log10_magnitude() << "  err10=" << n.error_exponent << "\n";
        out << "\n";
    } else {
        out << "dataset: none\n\n";
    }

    if (fs::exists(cfg.coefficients_path())) {
        out << "coefficients (verbatim):\n";
        std::ifstream in(cfg.coefficients_path());
        std::string line;
        while (std::getline(in, line)) out << line << "\n";
        out << "\n";
    }

    if (fs::exists(cfg.compare_path())) {
        out << "method comparison (main, log10 Zr, log10 |Zr-Zc|, log10 e^{2 pi delta}):\n";
        std::ifstream in(cfg.compare_path());
        std::string line;
        while (std::getline(in, line)) out << line << "\n";
    }
    return out.str();
}

} // namespace hzone
