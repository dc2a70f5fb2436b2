#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <fading/quadrature.hpp>

namespace fading_cli {

/// One pass/fail comparison. `criterion` is the acceptance criterion it belongs to
/// (1-8); `acceptance` marks checks that decide the exit status.
struct Check {
    std::string id;
    int criterion = 0;
    bool acceptance = true;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Normalization bookkeeping and printed-form gaps for one series parameter cell.
struct Discrepancy {
    std::string spec;
    int n = 0;
    double printed_S = 0.0;
    double measured_S = 0.0;          // from the unit-mass-conditional series
    double measured_S_literal = 0.0;  // from the literal term assembly
    double analytic_mass = 0.0;
    double sup_gap_renormalized = 0.0;      // vs the oracle on [0.1, 3]
    double sup_gap_literal = 0.0;
    double sup_gap_printed_assembled = 0.0;
};

enum class Level { quick, full };

/// Every tolerance the suite applies; the defaults are the acceptance values.
struct Tolerances {
    double normalization = 1e-6;
    double term_identity = 1e-8;
    double k_reduction = 1e-4;
    double base_reduction = 1e-5;
    double series_abs = 1e-3;
    double moments = 1e-6;
    double tower = 1e-6;
    double wronskian = 1e-8;
    double half_order = 1e-10;
    double ks_at_1e6 = 0.002;
};

struct SuiteOptions {
    Level level = Level::full;
    Tolerances tol{};
    fading::QuadConfig cfg{};
    std::uint64_t seed = 20240611;
    std::size_t gof_samples = 0;  // 0: 10^6 for full, 10^5 for quick
};

struct SuiteReport {
    std::vector<Check> checks;
    std::vector<Discrepancy> discrepancies;

    bool all_acceptance_pass() const;
    std::vector<std::string> failing_ids() const;
};

std::vector<Check> check_normalization(const SuiteOptions& opt);
std::vector<Check> check_term_identity(const SuiteOptions& opt);
std::vector<Check> check_reductions(const SuiteOptions& opt);
std::vector<Check> check_series(const SuiteOptions& opt, std::vector<Discrepancy>* ledger = nullptr);
std::vector<Check> check_moments(const SuiteOptions& opt);
std::vector<Check> check_sampling(const SuiteOptions& opt);
std::vector<Check> check_figures(const SuiteOptions& opt);
std::vector<Check> check_special_functions(const SuiteOptions& opt);

/// Runs the listed criteria (all of them when empty).
SuiteReport run_suite(const SuiteOptions& opt, const std::vector<int>& criteria = {});

}  // namespace fading_cli
