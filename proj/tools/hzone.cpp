#include <CLI11.hpp>

#include <iostream>

#include "hzone/pipeline.hpp"

using namespace hzone;

namespace {

void add_common(CLI::App* cmd, ScanConfig& cfg, std::string& config_file) {
    cmd->add_option("--config", config_file, "key=value configuration file (flags override)");
    cmd->add_option("--out", cfg.out_dir, "output directory");
}

void add_scan_flags(CLI::App* cmd, ScanConfig& cfg, std::string& range) {
    cmd->add_option("--family", cfg.family, "quadratic|bogdanov|henon");
    cmd->add_option("--gamma", cfg.gamma, "shape parameter (gamma or gamma~), decimal");
    cmd->add_option("--range", range, "main-parameter range c:d");
    cmd->add_option("--nodes", cfg.nodes, "number of scan nodes");
    cmd->add_option("--method", cfg.method, "real|complex|both");
    cmd->add_option("--delta-policy", cfg.delta_ratio, "strip offset as a fraction of rho");
    cmd->add_option("--digits-target", cfg.target_digits, "certified width digits");
    cmd->add_option("--min-digits", cfg.min_digits, "precision schedule floor");
    cmd->add_flag("--resume", cfg.resume, "skip nodes already in the dataset");
    cmd->add_option("--workers", cfg.workers, "parallel worker count");
    cmd->add_option("--seed", cfg.seed, "seed for randomized protocols");
    cmd->add_flag("--trace", cfg.trace, "write per-node diagnostic traces under <out>/trace/");
}

ScanConfig assemble(const std::string& config_file, const ScanConfig& flags, const std::string& range,
                    const CLI::App* cmd) {
    ScanConfig cfg = config_file.empty() ? ScanConfig{} : ScanConfig::from_file(config_file);
    // flags override file values when explicitly given on the active command
    auto given = [&](const char* name) { return cmd->get_option_no_throw(name) && cmd->count(name) > 0; };
    if (given("--family")) cfg.family = flags.family;
    if (given("--gamma")) cfg.gamma = flags.gamma;
    if (given("--nodes")) cfg.nodes = flags.nodes;
    if (given("--method")) cfg.method = flags.method;
    if (given("--delta-policy")) cfg.delta_ratio = flags.delta_ratio;
    if (given("--digits-target")) cfg.target_digits = flags.target_digits;
    if (given("--min-digits")) cfg.min_digits = flags.min_digits;
    if (given("--resume")) cfg.resume = flags.resume;
    if (given("--workers")) cfg.workers = flags.workers;
    if (given("--seed")) cfg.seed = flags.seed;
    if (given("--trace")) cfg.trace = flags.trace;
    if (given("--out")) cfg.out_dir = flags.out_dir;
    if (!range.empty()) {
        auto colon = range.find(':');
        if (colon == std::string::npos) throw ParseError("--range expects c:d");
        cfg.range_lo = range.substr(0, colon);
        cfg.range_hi = range.substr(colon + 1);
    }
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homoclinic-zone width measurement for planar maps near Bogdanov-Takens points"};
    app.require_subcommand(1);

    ScanConfig flags;
    std::string config_file, range;

    auto* scan = app.add_subcommand("scan", "compute widths over a main-parameter range");
    add_common(scan, flags, config_file);
    add_scan_flags(scan, flags, range);

    auto* fit = app.add_subcommand("fit", "interpolate expansion coefficients from a dataset");
    int ell = 8;
    bool least_squares = false;
    std::string data_file;
    add_common(fit, flags, config_file);
    fit->add_option("--data", data_file, "dataset file (defaults to <out>/dataset.csv)");
    fit->add_option("--ell", ell, "truncation order (even); basis size 3l/2+1 (dulac) or l+1");
    fit->add_flag("--least-squares", least_squares, "fit all nodes by least squares");

    auto* validate = app.add_subcommand("validate", "run a validation protocol on a dataset");
    std::string protocol = "extrapolability", reference;
    std::vector<int> perturb{20, 40, 60};
    int trials = 8;
    add_common(validate, flags, config_file);
    validate->add_option("--data", data_file, "dataset file (defaults to <out>/dataset.csv)");
    validate->add_option("--protocol", protocol, "extrapolability|stability|constant");
    validate->add_option("--ell", ell, "truncation order for the protocol fit");
    validate->add_option("--perturb", perturb, "perturbation exponents N (stability)");
    validate->add_option("--trials", trials, "trials per exponent (stability)");
    validate->add_option("--reference", reference, "reference invariant value (constant)");
    validate->add_option("--seed", flags.seed, "perturbation seed (stability)");

    auto* report = app.add_subcommand("report", "render tables and plot data for a run directory");
    add_common(report, flags, config_file);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();
        ScanConfig cfg = assemble(config_file, flags, range, active);
        if (scan->parsed()) {
            RunReport rep;
            WidthDataset ds = scan_widths(cfg, &rep);
            std::cout << "scan complete: " << ds.nodes.size() << " nodes, " << rep.failures << " failures\n";
            std::cout << "dataset: " << cfg.dataset_path().string() << "\n";
            return rep.exit_code();
        }
        if (report->parsed()) {
            std::cout << render_report(cfg);
            return 0;
        }

        std::filesystem::path data = data_file.empty() ? cfg.dataset_path() : std::filesystem::path(data_file);
        WidthDataset ds = load_dataset(data);

        if (fit->parsed()) {
            PrecisionContext ctx = fit_context(ds);
            ExpansionCoefficients c = fit_dataset(ds, ell, ctx, cfg.coefficients_path(), least_squares);
            std::cout << render_coefficient_table(c, ds);
            std::cout << "condition_log10=" << c.condition_log10
                      << " max_node_residual=" << format_decimal(c.max_node_residual, 3) << "\n";
            std::cout << "coefficients: " << cfg.coefficients_path().string() << "\n";
            return 0;
        }

        if (validate->parsed()) {
            if (protocol == "extrapolability") {
                auto run = validate_extrapolability(ds, ell, std::filesystem::path(cfg.out_dir) / "extrapolation.csv");
                std::cout << "fit_nodes=" << run.fit_nodes << " holdout_nodes=" << run.holdout_nodes << "\n";
                std::cout << "slope(log main)=" << run.report.slope_main << " slope(log x)=" << run.report.slope_x
                          << " first omitted exponent=" << run.report.expected_power
                          << (run.report.omitted_has_log ? " (log term)" : "") << "\n";
            } else if (protocol == "stability") {
                auto run = validate_stability(ds, ell, perturb, trials, flags.seed,
                                              std::filesystem::path(cfg.out_dir) / "stability.csv");
                for (const auto& repn : run.per_exponent)
                    std::cout << "N=" << repn.perturb_digits << " coefficient " << run.coefficient_index
                              << " matched digits=" << -repn.max_rel_err_log10[run.coefficient_index] << "\n";
            } else if (protocol == "constant") {
                if (reference.empty()) throw ParseError("validate constant: --reference required");
                double digits = validate_constant(ds, ell, reference);
                std::cout << "matched digits=" << digits << "\n";
            } else {
                throw ParseError("unknown protocol '" + protocol + "'");
            }
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
