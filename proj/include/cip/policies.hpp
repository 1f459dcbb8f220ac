#pragma once

#include <cstdint>
#include <string>

#include "cip/model.hpp"
#include "cip/relaxation.hpp"

namespace cip {

enum class SolveMode { Plain, Eps, Kc };

std::string to_string(SolveMode mode);

/// Report for one full solve: the accepted solution, the retry count, and the
/// LP value the acceptance threshold was pinned against. theoretical_ratio is
/// the concrete acceptance threshold coefficient used by the retry loop.
struct SolveReport {
    IntegralSolution x;
    int attempts = 0;
    double lp_value = 0.0;
    double value = 0.0;              ///< C_1 . x of the accepted solution
    double ratio = 0.0;              ///< value / lp_value
    double theoretical_ratio = 0.0;  ///< acceptance threshold on that ratio
    RoundingParams params_used;
    SolveMode mode = SolveMode::Plain;
    ResampleTrace trace;  ///< trace of the accepted attempt
};

/// sigma = 1 - 1/alpha with alpha = 1 + gamma + 2*sqrt(gamma). Under these
/// parameters the expectation inflation is at most 1 + gamma + 4*sqrt(gamma)
/// and the per-run cap coefficient 1/theta equals
/// (gamma/2 + sqrt(gamma)) / ln(1 + sqrt(gamma)).
RoundingParams params_plain(double gamma);

/// Multiplicity-respecting parameters: below the gamma <= eps^2/2 threshold
/// this is params_plain(gamma); above it, sigma = 1 - exp(-gamma/eps) and
/// alpha = -(1+eps)*ln(1-sigma)/sigma, which makes the per-run cap exactly
/// ceil(xhat_i * (1+eps)).
RoundingParams params_eps(double gamma, double eps);

/// Expectation inflation coefficient of the mode's guarantee (used by the tail
/// checks): plain 1 + g + 4 sqrt(g); eps 1 + 4 sqrt(g) + 4 g/eps.
double expectation_ratio_plain(double gamma);
double expectation_ratio_eps(double gamma, double eps);

/// Default retry budget: 64 * ceil(sqrt(ln(m + 2))).
int default_max_attempts(int m);

/// Solve to the basic (unbounded) LP with params_plain, retrying until
/// C_1 . x <= (1 + gamma + 5 sqrt(gamma)) * lp_value. Requires a normalized
/// instance (a_min >= 1, Delta_1 >= 1 up to 1e-9). Every returned x is
/// covering-feasible; throws std::runtime_error("attempts exhausted") if no
/// attempt is accepted (max_attempts <= 0 selects the default).
SolveReport solve_plain(const CipInstance& inst, std::uint64_t seed, int max_attempts = 0);

/// Solve to the boxed basic LP with params_eps; every run additionally
/// satisfies x_i <= ceil(xhat_i * (1 + eps)). Acceptance threshold
/// 1 + 5 sqrt(gamma) + 5 gamma/eps.
SolveReport solve_eps(const CipInstance& inst, double eps, std::uint64_t seed,
                      int max_attempts = 0);

}  // namespace cip
