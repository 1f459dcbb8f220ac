#pragma once

#include <cstdint>

#include "cip/rounding.hpp"
#include "relax_engine.hpp"

namespace cip::detail {

struct RoundRun {
    IntegralSolution x;      ///< composed G + v + x' over prob's variables
    ResampleTrace trace;
    QuantizedSolution quant;
};

/// Quantize-then-relax on `prob`. The engine enforces prob's rows (both in
/// residual form on the relaxation bits and in composed form on G + v + x')
/// plus an optional caller-supplied target, so the composed solution is exact
/// under every view. The extra target's base receives the quantization
/// offsets G + v added on top (its rows see the fully composed solution).
/// Per-run multiplicity caps are asserted before return.
RoundRun round_on(const CipInstance& prob, const std::vector<double>& xhat,
                  const RoundingParams& params, std::uint64_t seed, long long cap,
                  const CheckTarget* extra);

}  // namespace cip::detail
