#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cip/model.hpp"
#include "cip/policies.hpp"

namespace cip {

/// The pinned-residual problem PR(X): variables in X are fixed at their caps,
/// each RHS becomes v_k = a_k - sum_{i in X} A_ki d_i clipped into
/// {0} union [1, inf) (v_k in (0,1] rows rescale to RHS 1 with coefficients
/// min(1, A_ki / v_k)). Zeroed rows are kept in place so constraint indices
/// stay aligned with the original instance.
struct PinnedResidual {
    std::vector<int> X;      ///< pinned variables, sorted
    CipInstance inst_prime;  ///< A', a', same d and objectives
    std::vector<double> v;   ///< raw residual RHS before clipping
};

/// Builds PR(X). Throws std::invalid_argument when some i in X has an
/// unbounded cap.
PinnedResidual pinned_residual(const CipInstance& inst, const std::vector<int>& X);

/// Exact division-free test that an integral x satisfies row k of PR(X)
/// (equivalent to A'_k . x >= a'_k in real arithmetic, but free of the
/// rescaling division so dyadic data stays exact).
bool pr_row_satisfied(const CipInstance& inst, const PinnedResidual& pr, int k,
                      const std::vector<long long>& x);

/// delta = (gamma0/2 + sqrt(gamma0)) / ln(1 + sqrt(gamma0)); equals the
/// params_plain(gamma0) cap coefficient 1/theta.
double kc_delta(double gamma0);

/// Minimizes C_1 . xhat over xhat in [0,d] subject to xhat satisfying
/// PR({i : xhat_i >= d_i/delta}), via a cutting-plane fixed-point loop:
/// solve the boxed LP, materialize the violated PR rows of the current pin
/// set as cuts, re-solve until no row is violated. Returns the solution and
/// its final pin set. Iteration cap 50*m; exceeding it throws
/// std::runtime_error("no fixed point within cap").
std::pair<FractionalSolution, std::vector<int>> kc_lp(const CipInstance& inst, double delta);

/// Everything solve_kc precomputes once; reused across rounding attempts and
/// by the Monte Carlo harness.
struct KcPipeline {
    FractionalSolution frac;
    std::vector<int> X;
    PinnedResidual pr;
    RoundingParams params;  ///< params_plain(gamma0)
    std::vector<double> xhat_resid;  ///< frac.x with pinned entries zeroed
    double gamma0 = 0.0;
    double delta = 0.0;
};

KcPipeline kc_prepare(const CipInstance& inst);

/// One rounding attempt of the exact-multiplicity pipeline: x_i = d_i on X, the rest
/// rounded on PR(X). Every run satisfies x <= d and all original covering
/// constraints exactly.
std::pair<IntegralSolution, ResampleTrace> kc_round_once(const CipInstance& inst,
                                                         const KcPipeline& pipe,
                                                         std::uint64_t seed);

/// Exact-multiplicity solve: kc_lp, pin, round, Markov-retry at
/// C_1 . x <= (1 + gamma0 + 8 sqrt(gamma0)) * kc_lp_value.
SolveReport solve_kc(const CipInstance& inst, std::uint64_t seed, int max_attempts = 0);

}  // namespace cip
