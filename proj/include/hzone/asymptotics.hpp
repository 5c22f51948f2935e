#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hzone/maps.hpp"

namespace hzone {

// Basis of asymptotic-expansion functions in the transformed variable
// x = main^{1/root_power}:
//   polynomial: f_i(x) = x^i
//   dulac:      f_{3n} = x^{2n}, f_{3n+1} = x^{2n+1},
//               f_{3n+2} = x^{2n+2} * log(main)
// The log convention multiplies by log of the main parameter itself, i.e.
// root_power * log x, the convention the reference coefficient values
// are defined against.
struct AsymptoticSequence {
    enum class Kind { polynomial, dulac };

    Kind kind = Kind::polynomial;
    int root_power = 4;

    static AsymptoticSequence polynomial(int root_power) { return {Kind::polynomial, root_power}; }
    static AsymptoticSequence dulac(int root_power) { return {Kind::dulac, root_power}; }
    // quadratic -> dulac in mu^{1/4}; bogdanov -> dulac in a^{1/2};
    // henon -> polynomial in |1-a~|^{1/4}, and the fit runs on S itself
    // (its expansion has no logarithms).
    static AsymptoticSequence for_family(Family f);

    BigReal basis(int i, const BigReal& x) const;
    // exponent of x in f_i (ignoring the log factor)
    int power_of_x(int i) const;
    bool has_log(int i) const;
    std::string label(int i, std::string_view main_symbol) const;
};

// Scan output: strictly increasing transformed nodes with full-precision
// decimal payloads.
struct WidthDataset {
    struct Node {
        BigReal x;
        BigReal log_s;
        BigReal width;
        double error_exponent = 0;
    };
    std::vector<Node> nodes;

    std::string family;
    std::string gamma_text;
    int digits = 0;
    std::string method;
    std::string created;
};

struct ExpansionCoefficients {
    AsymptoticSequence seq;
    bool fit_on_values = false; // polynomial route interpolates S, not log S
    std::vector<BigReal> alpha;
    // streams split per the sequence's index map: power_stream holds the
    // pure-power coefficients (M_k / A_k / A~_k), log_stream the log-bearing
    // ones (N_k / B_k, with log_stream[0] multiplying x^2 log main).
    std::vector<BigReal> power_stream;
    std::vector<BigReal> log_stream;
    BigReal max_node_residual;
    double condition_log10 = 0;
};

using Matrix = std::vector<std::vector<BigReal>>;

// Interpolation matrix, rows indexed by nodes: M[j][i] = f_i(x_j).
Matrix build_matrix(const AsymptoticSequence& seq, const std::vector<BigReal>& xs);

// Exact interpolation through as many nodes as basis functions: Gaussian
// elimination with partial pivoting at working precision. Residuals at the
// nodes and a condition estimate are recorded on the result.
ExpansionCoefficients solve_coefficients(const AsymptoticSequence& seq, const std::vector<BigReal>& xs,
                                         const std::vector<BigReal>& w, const PrecisionContext& ctx,
                                         bool fit_on_values = false);
// Least-squares variant over more nodes than basis functions (normal
// equations at working precision). Off by default in the pipeline.
ExpansionCoefficients solve_coefficients_lsq(const AsymptoticSequence& seq, int basis_size,
                                             const std::vector<BigReal>& xs, const std::vector<BigReal>& w,
                                             const PrecisionContext& ctx, bool fit_on_values = false);

BigReal eval_expansion(const ExpansionCoefficients& c, const BigReal& x);

// S = width / K(main).
BigReal normalize_width(const MapFamily& map, const BigReal& main, const BigReal& width);

// Closed forms for the first log-bearing coefficient:
//   quadratic: -(6(gamma-2)/(7 sqrt(2)))^2 = -18(gamma-2)^2/49, the
//              coefficient of mu^{1/2} log(mu);
//   bogdanov:  -(6 gamma~/7)^2 = -36 gamma~^2/49, quoted in the customary
//              half-log units x^2 log(x) with x = sqrt(a) — twice the
//              log(a)-convention coefficient the dulac basis fits.
// Henon has no log terms -> NotApplicableError.
BigReal analytic_first_log_coefficient(const MapFamily& map, const PrecisionContext& ctx);

struct ExtrapolabilityReport {
    // (log10 main, log10 |G - data|) over the holdout nodes
    std::vector<std::pair<double, double>> points;
    double slope_main = 0; // least-squares slope against log10(main)
    double slope_x = 0;    // against log10(x) = slope_main * root_power
    int omitted_index = 0;
    double expected_power = 0; // power of x of the first omitted basis term
    bool omitted_has_log = false;
};

ExtrapolabilityReport extrapolability_test(const ExpansionCoefficients& c, const WidthDataset& holdout);

struct StabilityReport {
    int perturb_digits = 0;
    int trials = 0;
    // per coefficient: log10 of the worst relative deviation across trials
    std::vector<double> max_rel_err_log10;
};

// Re-solves after adding uniform [-1,1]*10^{-N} noise to every data value;
// deterministic counter-based generator seeded from `seed`.
StabilityReport stability_test(const AsymptoticSequence& seq, const std::vector<BigReal>& xs,
                               const std::vector<BigReal>& w, int perturb_digits, int trials, uint64_t seed,
                               const PrecisionContext& ctx, bool fit_on_values = false);

// Matched decimal digits between the reference invariant and the fitted
// constant term: -log10 |(ref - exp(alpha_0))/ref| (alpha_0 itself on
// value-space fits).
double splitting_constant_check(const ExpansionCoefficients& c, const BigReal& reference);

struct GevreyReport {
    double growth_radius = 0;    // fitted r in |alpha_k| <= M k!/r^k
    double prefactor_log10 = 0;  // log10 M
    bool radius_unbounded = false;
    int coefficients_used = 0;
};

// Coefficient-growth diagnostic only; the Gevrey-1 property is a conjecture
// and is reported, never asserted.
GevreyReport gevrey_diagnostic(const std::vector<BigReal>& alpha);

} // namespace hzone
