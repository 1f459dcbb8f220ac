#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cip/model.hpp"
#include "cip/relaxation.hpp"

namespace cip {

/// Theta-quantization of a fractional point: xhat_i = v_i*theta + F_i with
/// v_i = floor(xhat_i/theta), G_i = [F_i >= 1/alpha], and the residual
/// fractional part xprime_hat_i = F_i when G_i = 0, else 0. a_resid is the
/// RHS left over once the pinned units G + v are paid for.
///
/// Floating-point mod: when F_i lands within 1e-12 of theta, v_i is
/// incremented and F_i set to 0; when F_i lands within 1e-12 of 0 it is also
/// snapped to 0. Both snaps keep the per-run multiplicity cap exact at
/// integer boundaries.
struct QuantizedSolution {
    std::vector<long long> v;
    std::vector<double> F;
    std::vector<std::uint8_t> G;
    std::vector<double> xprime_hat;
    std::vector<double> a_resid;
};

/// Quantizes xhat and verifies the quantization inequalities numerically
/// (sandwich bound to 1e-12 absolute, residual-inflation inequality to 1e-9
/// relative); a violation throws std::logic_error.
QuantizedSolution quantize(const std::vector<double>& xhat, const CipInstance& inst,
                           const RoundingParams& params);

/// ceil(xhat_i / theta): the probability-one cap on x_i after round_solution.
long long multiplicity_cap(double xhat_i, const RoundingParams& params);

/// Full rounding of an arbitrary feasible fractional point: quantize, run the
/// partial-resampling relaxation on the residual, return x = G + v + x'.
/// Every returned x passes check_cover exactly and satisfies
/// x_i <= multiplicity_cap(xhat_i, params).
///
/// Preconditions (std::invalid_argument): xhat >= 0 and A.xhat >= a - tol.
std::pair<IntegralSolution, ResampleTrace> round_solution(const std::vector<double>& xhat,
                                                          const CipInstance& inst,
                                                          const RoundingParams& params,
                                                          std::uint64_t seed, long long cap = 0);

}  // namespace cip
