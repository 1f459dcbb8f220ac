#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cip/model.hpp"
#include "cip/policies.hpp"
#include "cip/relaxation.hpp"

namespace cip {

/// Chernoff upper-tail bound (e^delta / (1+delta)^{1+delta})^mu with
/// delta = t/mu - 1, evaluated in log space. Requires 0 <= mu <= t; mu = 0 is
/// the limit value (0 for t > 0, 1 at t = 0).
double chernoff_upper(double mu, double t);

struct TailQuery {
    int objective = 0;
    double threshold = 0.0;
};

/// Aggregates over repeated single-attempt runs (no Markov retry: retries
/// condition the distribution the tail bounds describe).
struct McStats {
    long long trials = 0;
    std::vector<double> per_variable_mean;
    std::vector<double> per_variable_stderr;
    double mean_events = 0.0;
    double stderr_events = 0.0;
    struct TailCount {
        int objective = 0;
        double threshold = 0.0;
        double fraction = 0.0;
    };
    std::vector<TailCount> tail_counts;
    /// True only if every run passed check_cover exactly and the mode's
    /// probability-one cap (eps: x_i <= ceil(xhat_i(1+eps)); kc: x <= d).
    bool all_runs_feasible = true;
    std::vector<long long> max_multiplicity_seen;
};

/// Runs the selected single-attempt pipeline `trials` times with derived
/// seeds (trial j uses CounterRng::derive(seed, j), so results are
/// reproducible and thread-count independent per trial). `threads` <= 0
/// reads a single thread.
McStats monte_carlo(const CipInstance& inst, SolveMode mode, double eps, long long trials,
                    std::uint64_t seed, const std::vector<TailQuery>& tail_queries,
                    int threads = 1);

struct CheckResult {
    double empirical = 0.0;
    double bound = 0.0;
    double stderr_ = 0.0;
    bool pass = false;
};

/// Empirical P(x_i = 1 for all i in R) under relax_round against the product
/// of the per-variable marginal bounds. Requires the relaxation regime
/// (xhat_i < 1/alpha). pass means empirical <= bound + 3 * binomial stderr.
CheckResult check_negative_correlation(const CipInstance& inst, const std::vector<double>& xhat,
                                       const RoundingParams& params, const std::vector<int>& R,
                                       long long trials, std::uint64_t seed);

/// Empirical tail P(C_l . x > t) of the mode's single-attempt pipeline
/// against chernoff_upper(beta * C_l . xhat, t), where beta is the mode's
/// expectation inflation coefficient. Requires C_l entries in [0,1]. When
/// t < beta * C_l . xhat the bound is reported as 1 (vacuous).
CheckResult check_tail(const CipInstance& inst, int objective, double threshold, SolveMode mode,
                       double eps, long long trials, std::uint64_t seed);

/// CSV serialization: one row per (check, instance, params).
std::string check_csv_header();
std::string check_csv_row(const std::string& check, const std::string& instance,
                          const std::string& params, long long trials, const CheckResult& r);
std::vector<std::string> mc_stats_csv_rows(const McStats& stats, const std::string& instance,
                                           const std::string& params);

}  // namespace cip
