#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cip/model.hpp"

namespace cip {

enum class GapFamily { Random, EpsAug, Gf2 };

std::string to_string(GapFamily family);

/// Measured integrality gap of a generated instance. theoretical_floor is the
/// family's reference lower bound with its unpinned universal constants
/// dropped (report-only; the asymptotic regimes are far beyond desk scale).
struct GapReport {
    GapFamily family = GapFamily::Random;
    std::string params;  ///< "key=value;..." of the generator arguments
    double frac_value = 0.0;
    double int_opt = 0.0;
    double ratio = 0.0;
    double theoretical_floor = 0.0;
};

/// m constraints over n = m*t variables, each row with s = ceil(p*n) distinct
/// coefficient-1 positions drawn uniformly without replacement, common RHS a,
/// unit objective, no multiplicity caps. Deterministic from seed.
CipInstance gen_random_gap(int m, double a, double p, int t, std::uint64_t seed);

/// Multiplicity-respect gap amplifier. The base must have unit RHS and 0/1
/// coefficients; constraint k gains helper variable n+k with coefficient
/// a / (K*(1+eps) + 1) and cap K, original variables stay unbounded with unit
/// weight, helpers weigh 0, and every RHS becomes a. Throws when the helper
/// coefficient would exceed 1 (K too small).
CipInstance gen_eps_gap(const CipInstance& base, double a, double eps, int K);

/// GF(2) orthogonality instance: n = 2^q - 1 variables indexed by the
/// nonzero q-bit strings; for every nonzero k a constraint over
/// {i : k . i = 0 over GF(2)} with RHS a = (q-1)/g and unit objective.
/// Requires 2 <= q <= 20 and g in (0,1).
CipInstance gen_gf2_gap(int q, double g);

/// Reference fractional value recorded for the gf2 family: the uniform point
/// a/(2^{q-1}-1) is feasible (each row has exactly 2^{q-1}-1 support
/// entries), with value (2^q - 1) * a / (2^{q-1} - 1).
double gf2_frac_value(int q, double g);

/// Exact minimum of C_1 . x over integral 0 <= x <= min(d_i, per_var_cap)
/// with A x >= a, by depth-first enumeration with branch-and-bound pruning.
/// Throws std::invalid_argument("budget exceeded") when prod(cap_i + 1) >
/// budget and std::runtime_error("infeasible under cap") when nothing covers.
double brute_force_opt(const CipInstance& inst, long long per_var_cap, double budget = 1e8);

/// Same with explicit per-variable caps (still clipped by d_i).
double brute_force_opt(const CipInstance& inst, const std::vector<long long>& caps,
                       double budget = 1e8);

/// Per-family gap measurements: fractional value from the family's LP
/// (pinned reference formula for gf2), integral optimum from the oracle.
GapReport gap_report_random(const CipInstance& inst, int m, double a, double p, int t,
                            long long per_var_cap, double budget = 1e8);
GapReport gap_report_eps(const CipInstance& inst, double a, double eps, int K,
                         long long per_var_cap, double budget = 1e8);
GapReport gap_report_gf2(const CipInstance& inst, int q, double g, long long per_var_cap,
                         double budget = 1e8);

std::string gap_report_csv_header();
std::string gap_report_csv_row(const GapReport& report);

}  // namespace cip
