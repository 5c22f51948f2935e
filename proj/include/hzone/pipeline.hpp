#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include "hzone/asymptotics.hpp"
#include "hzone/splitting.hpp"

namespace hzone {

// One parameter scan: family, main-parameter range, method and output
// locations. Everything needed to reproduce a dataset byte for byte.
struct ScanConfig {
    std::string family = "bogdanov";
    std::string gamma = "0";
    std::string range_lo;
    std::string range_hi;
    int nodes = 8;
    std::string method = "real"; // real | complex | both
    double delta_ratio = 0.5;    // strip offset as a fraction of rho
    int target_digits = 20;      // certified width digits requested
    int min_digits = 40;         // floor of the precision schedule
    int guard_digits = 30;
    std::string out_dir = ".";
    bool resume = false;
    int workers = 1;
    uint64_t seed = 1;
    bool trace = false; // per-node diagnostic trace files under <out>/trace/

    void set(std::string_view key, std::string_view value);
    static ScanConfig from_file(const std::filesystem::path& p);
    void validate() const;
    // Deterministic content stamp recorded as `created` in output headers.
    std::string fingerprint() const;

    std::filesystem::path dataset_path() const;
    std::filesystem::path compare_path() const;   // method-comparison columns
    std::filesystem::path coefficients_path() const;
    std::filesystem::path scan_log_path() const;
};

struct NodeRecord {
    int index = 0;
    std::string main_text;
    bool ok = false;
    std::string error;
    double log10_width = 0;
    double error_exponent = 0;
    int digits = 0;
    bool precision_flagged = false; // D - |log10 width| < target
    long milliseconds = 0;
};

struct RunReport {
    std::vector<NodeRecord> nodes;
    int failures = 0;
    bool aborted = false;

    int exit_code() const { return aborted ? 2 : (failures > 0 ? 1 : 0); }
};

// Decimal-digit budget for one node: |log10 K| + target + 50, plus the
// strip-offset allowance when the complex estimator runs.
int scheduled_digits(const ScanConfig& cfg, double main_value);

// Runs the scan, appending rows to the dataset file in node order as they
// complete; existing rows are kept and their nodes skipped when resuming.
// Aborts (throws) once more than a quarter of the nodes have failed.
WidthDataset scan_widths(const ScanConfig& cfg, RunReport* report = nullptr);

WidthDataset load_dataset(const std::filesystem::path& p, int digits_hint = 0);
void save_dataset(const WidthDataset& ds, const std::filesystem::path& p);

// Interpolation of the leading 3l/2+1 (dulac) or l+1 (polynomial) nodes;
// Henon datasets are fitted on S itself, the others on log S. Writes the
// coefficients file next to the dataset when out is set.
ExpansionCoefficients fit_dataset(const WidthDataset& ds, int ell, const PrecisionContext& ctx,
                                  const std::optional<std::filesystem::path>& out = std::nullopt,
                                  bool least_squares = false);

int basis_size_for(const AsymptoticSequence& seq, int ell);
// Working precision for fitting a dataset (driven by its payload sizes).
PrecisionContext fit_context(const WidthDataset& ds, int guard = 30);

void save_coefficients(const ExpansionCoefficients& c, const WidthDataset& ds, const std::filesystem::path& p);
std::string render_coefficient_table(const ExpansionCoefficients& c, const WidthDataset& ds);

struct ExtrapolabilityRun {
    ExtrapolabilityReport report;
    int fit_nodes = 0;
    int holdout_nodes = 0;
};

// Fit on the nodes in the inner half of the x-range, hold out the rest,
// and emit the (log main, log residual) pairs file.
ExtrapolabilityRun validate_extrapolability(const WidthDataset& ds, int ell,
                                            const std::optional<std::filesystem::path>& pairs_out = std::nullopt);

struct StabilityRun {
    std::vector<StabilityReport> per_exponent;
    int coefficient_index = 0; // mid-index coefficient highlighted
};

StabilityRun validate_stability(const WidthDataset& ds, int ell, const std::vector<int>& exponents, int trials,
                                uint64_t seed, const std::optional<std::filesystem::path>& out = std::nullopt);

double validate_constant(const WidthDataset& ds, int ell, const std::string& reference_decimal);

// Plain-text run report: node table, fit table (verbatim coefficients file
// content) and the method-comparison columns when present.
std::string render_report(const ScanConfig& cfg);

} // namespace hzone
