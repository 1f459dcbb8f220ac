#include "cip/rounding.hpp"

#include <cmath>
#include <stdexcept>

#include "rounding_detail.hpp"

namespace cip {

namespace {

constexpr double kSnapTol = 1e-12;

void check_residual_inflation(const CipInstance& inst, const std::vector<double>& xhat,
                  const QuantizedSolution& q, const RoundingParams& params) {
    // (1-sigma)^{a'_k} e^{sigma alpha A_k.xhat'} >= (1-sigma)^{a_k} e^{sigma alpha A_k.xhat},
    // compared in log space with 1e-9 relative slack.
    double log1m = std::log1p(-params.sigma);
    double sa = params.sigma * params.alpha;
    for (int k = 0; k < inst.m; ++k) {
        double lhs = q.a_resid[k] * log1m + sa * inst.row_dot(k, q.xprime_hat);
        double rhs = inst.a[k] * log1m + sa * inst.row_dot(k, xhat);
        if (lhs < rhs - 1e-9 * (1.0 + std::fabs(rhs)))
            throw std::logic_error("quantization inflated a residual constraint");
    }
}

}  // namespace

QuantizedSolution quantize(const std::vector<double>& xhat, const CipInstance& inst,
                           const RoundingParams& params) {
    if (static_cast<int>(xhat.size()) != inst.n)
        throw std::invalid_argument("xhat length differs from n");
    QuantizedSolution q;
    q.v.resize(inst.n);
    q.F.resize(inst.n);
    q.G.resize(inst.n);
    q.xprime_hat.resize(inst.n);

    const double theta = params.theta;
    const double inv_alpha = 1.0 / params.alpha;
    for (int i = 0; i < inst.n; ++i) {
        if (!(xhat[i] >= 0.0)) throw std::invalid_argument("xhat_i must be >= 0");
        long long v = static_cast<long long>(std::floor(xhat[i] / theta));
        double F = xhat[i] - static_cast<double>(v) * theta;
        if (F >= theta - kSnapTol) {
            ++v;
            F = 0.0;
        } else if (F <= kSnapTol) {
            F = 0.0;
        }
        q.v[i] = v;
        q.F[i] = F;
        q.G[i] = (F >= inv_alpha) ? 1 : 0;
        q.xprime_hat[i] = q.G[i] ? 0.0 : F;

        if (std::fabs(xhat[i] - (static_cast<double>(v) * theta + F)) > kSnapTol * (1.0 + xhat[i]))
            throw std::logic_error("quantization decomposition drifted");
        // Sandwich: xhat - v*theta - G*theta <= xhat' <= xhat - v*theta - G/alpha.
        double lo = xhat[i] - static_cast<double>(v) * theta - q.G[i] * theta;
        double hi = xhat[i] - static_cast<double>(v) * theta - q.G[i] * inv_alpha;
        if (q.xprime_hat[i] < lo - kSnapTol || q.xprime_hat[i] > hi + kSnapTol)
            throw std::logic_error("quantization sandwich violated");
    }

    q.a_resid.resize(inst.m);
    for (int k = 0; k < inst.m; ++k) {
        double paid = 0.0;
        for (const auto& [i, c] : inst.rows[k])
            paid += c * static_cast<double>(q.G[i] + q.v[i]);
        q.a_resid[k] = inst.a[k] - paid;
    }
    check_residual_inflation(inst, xhat, q, params);
    return q;
}

long long multiplicity_cap(double xhat_i, const RoundingParams& params) {
    if (xhat_i <= 0.0) return 0;
    double ratio = xhat_i / params.theta;
    long long cap = static_cast<long long>(std::ceil(ratio - kSnapTol));
    return cap < 1 ? 1 : cap;
}

namespace detail {

RoundRun round_on(const CipInstance& prob, const std::vector<double>& xhat,
                  const RoundingParams& params, std::uint64_t seed, long long cap,
                  const CheckTarget* extra) {
    RoundRun run;
    run.quant = quantize(xhat, prob, params);
    const QuantizedSolution& q = run.quant;

    std::vector<double> gv(prob.n);
    for (int i = 0; i < prob.n; ++i) gv[i] = static_cast<double>(q.G[i] + q.v[i]);

    // The residual must still be loose enough for the relaxation; with valid
    // parameters and a feasible xhat this follows from the inequality checked
    // in quantize, so a failure here means the parameters sit on the validity
    // boundary.
    double log1m = std::log1p(-params.sigma);
    double sa = params.sigma * params.alpha;
    for (int k = 0; k < prob.m; ++k) {
        if (q.a_resid[k] <= 0.0) continue;
        if (!(sa * prob.row_dot(k, q.xprime_hat) + q.a_resid[k] * log1m > 0.0))
            throw std::invalid_argument("residual s_k >= 1: parameters too tight for this instance");
    }
    if (cap <= 0) cap = default_cap(prob.m);

    std::vector<CheckTarget> targets;
    targets.push_back({&prob, &q.a_resid, nullptr});  // bits vs residual RHS
    targets.push_back({&prob, nullptr, &gv});         // composed x vs original RHS
    std::vector<double> extra_base;
    if (extra) {
        extra_base = gv;
        if (extra->base) {
            for (int i = 0; i < prob.n; ++i) extra_base[i] += (*extra->base)[i];
        }
        targets.push_back({extra->inst, extra->rhs, &extra_base});
    }

    EngineResult res = run_partial_resampling(prob, q.xprime_hat, params, targets, seed, cap);

    run.x.x.resize(prob.n);
    for (int i = 0; i < prob.n; ++i) {
        run.x.x[i] = q.G[i] + q.v[i] + res.bits[i];
        if (run.x.x[i] > multiplicity_cap(xhat[i], params))
            throw std::logic_error("multiplicity cap breached");
    }
    run.x.objective_values = objective_values(prob, run.x.x);
    run.trace = std::move(res.trace);
    return run;
}

}  // namespace detail

std::pair<IntegralSolution, ResampleTrace> round_solution(const std::vector<double>& xhat,
                                                          const CipInstance& inst,
                                                          const RoundingParams& params,
                                                          std::uint64_t seed, long long cap) {
    if (static_cast<int>(xhat.size()) != inst.n)
        throw std::invalid_argument("xhat length differs from n");
    for (int k = 0; k < inst.m; ++k) {
        if (inst.row_dot(k, xhat) < inst.a[k] - kFracTol)
            throw std::invalid_argument("xhat infeasible for the basic LP");
    }

    detail::RoundRun run = detail::round_on(inst, xhat, params, seed, cap, nullptr);
    if (!check_cover(inst, run.x.x)) throw std::logic_error("rounded solution fails check_cover");
    return {std::move(run.x), std::move(run.trace)};
}

}  // namespace cip
