#include "cip/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cip/rng.hpp"
#include "relax_engine.hpp"

namespace cip {

RoundingParams make_params(double sigma, double alpha) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must be in (0,1)");
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must be > 1");
    double neg_log1m_sigma = -std::log1p(-sigma);
    if (!(alpha > neg_log1m_sigma / sigma))
        throw std::invalid_argument("alpha must exceed -ln(1-sigma)/sigma");
    RoundingParams p;
    p.sigma = sigma;
    p.alpha = alpha;
    p.theta = neg_log1m_sigma / (alpha * sigma);
    return p;
}

namespace detail {

EngineResult run_partial_resampling(const CipInstance& prob, const std::vector<double>& xhat,
                                    const RoundingParams& params,
                                    const std::vector<CheckTarget>& targets, std::uint64_t seed,
                                    long long cap) {
    const int n = prob.n;
    const int m = prob.m;
    CounterRng rng(seed);

    EngineResult out;
    out.bits.assign(n, 0);
    for (int i = 0; i < n; ++i)
        out.bits[i] = rng.bernoulli(params.alpha * xhat[i]) ? 1 : 0;
    out.trace.initial_bits = out.bits;

    auto row_satisfied = [&](int k) {
        for (const auto& t : targets) {
            double rhs = t.rhs ? (*t.rhs)[k] : t.inst->a[k];
            if (rhs <= 0.0) continue;
            double s = 0.0;
            if (t.base) {
                for (const auto& [i, c] : t.inst->rows[k])
                    s += c * ((*t.base)[i] + static_cast<double>(out.bits[i]));
            } else {
                for (const auto& [i, c] : t.inst->rows[k]) s += c * static_cast<double>(out.bits[i]);
            }
            if (s < rhs) return false;
        }
        return true;
    };

    long long events = 0;
    int k = 0;  // rows before k are satisfied and stay satisfied
    while (k < m) {
        if (row_satisfied(k)) {
            ++k;
            continue;
        }
        if (++events > cap) throw std::runtime_error("cap exceeded");
        ResampleTrace::Event ev;
        ev.k = k;
        bool has_candidate = false;
        for (const auto& [i, c] : prob.rows[k]) {
            if (out.bits[i]) continue;
            has_candidate = true;
            if (!rng.bernoulli(params.sigma * c)) continue;
            ev.resampled.push_back(i);
            if (rng.bernoulli(params.alpha * xhat[i])) {
                out.bits[i] = 1;
                ev.turned.push_back(i);
            }
        }
        if (!has_candidate)
            throw std::runtime_error("resampling stalled: violated row has no zero-valued variables");
        out.trace.events.push_back(std::move(ev));
    }
    return out;
}

}  // namespace detail

std::pair<IntegralSolution, ResampleTrace> relax_round(const std::vector<double>& xhat,
                                                       const CipInstance& inst,
                                                       const RoundingParams& params,
                                                       std::uint64_t seed, long long cap) {
    if (static_cast<int>(xhat.size()) != inst.n)
        throw std::invalid_argument("xhat length differs from n");
    for (double v : xhat) {
        if (!(v >= 0.0) || !(v < 1.0 / params.alpha))
            throw std::invalid_argument("xhat_i must lie in [0, 1/alpha)");
    }
    for (int k = 0; k < inst.m; ++k) {
        if (inst.a[k] > 0.0 && !(s_bound(inst, xhat, params, k) < 1.0))
            throw std::invalid_argument("s_k >= 1: constraint too tight for these parameters");
    }
    if (cap <= 0) cap = detail::default_cap(inst.m);

    std::vector<detail::CheckTarget> targets{{&inst, nullptr, nullptr}};
    detail::EngineResult res = detail::run_partial_resampling(inst, xhat, params, targets, seed, cap);

    IntegralSolution sol;
    sol.x.assign(res.bits.begin(), res.bits.end());
    sol.objective_values = objective_values(inst, sol.x);
    return {std::move(sol), std::move(res.trace)};
}

double f_weight(const CipInstance& inst, const std::vector<double>& xhat,
                const RoundingParams& params, int k, const std::vector<int>& Z) {
    const auto& row = inst.rows[k];
    double w = std::exp(-inst.a[k] * std::log1p(-params.sigma));
    for (const auto& [i, c] : row) w *= 1.0 - c * params.sigma;
    for (int i : Z) {
        auto it = std::lower_bound(row.begin(), row.end(), i,
                                   [](const std::pair<int, double>& e, int col) { return e.first < col; });
        if (it == row.end() || it->first != i) return 0.0;  // A_ki = 0 annihilates the product
        double aki_sigma = it->second * params.sigma;
        double p_i = params.alpha * xhat[i];
        double numer = (1.0 - p_i) * aki_sigma;
        if (1.0 - aki_sigma <= 0.0) {
            if (numer != 0.0) throw std::runtime_error("f_weight: A_ki*sigma = 1 with nonzero numerator");
            return 0.0;
        }
        w *= numer / (1.0 - aki_sigma);
    }
    return w;
}

double s_bound(const CipInstance& inst, const std::vector<double>& xhat,
               const RoundingParams& params, int k) {
    double dot = inst.row_dot(k, xhat);
    return std::exp(-inst.a[k] * std::log1p(-params.sigma) - params.sigma * params.alpha * dot);
}

namespace {

/// exp(sigma*alpha*A_k.xhat) * (1-sigma)^{a_k} - 1, in log space. Positive
/// iff s_k < 1.
double inv_sk_minus_one(const CipInstance& inst, const std::vector<double>& xhat,
                        const RoundingParams& params, int k) {
    double arg = params.sigma * params.alpha * inst.row_dot(k, xhat) +
                 inst.a[k] * std::log1p(-params.sigma);
    return std::expm1(arg);
}

}  // namespace

double expected_resample_bound(const CipInstance& inst, const std::vector<double>& xhat,
                               const RoundingParams& params) {
    double total = 0.0;
    for (int k = 0; k < inst.m; ++k) {
        if (inst.a[k] <= 0.0) continue;  // residual rows already satisfied
        double denom = inv_sk_minus_one(inst, xhat, params, k);
        if (!(denom > 0.0)) throw std::invalid_argument("s_k >= 1 in expected_resample_bound");
        total += 1.0 / denom;
    }
    return total;
}

double marginal_bound(const CipInstance& inst, const std::vector<double>& xhat,
                      const RoundingParams& params, int i) {
    if (xhat[i] == 0.0) return 0.0;
    double sum = 0.0;
    for (int k = 0; k < inst.m; ++k) {
        if (inst.a[k] <= 0.0) continue;
        const auto& row = inst.rows[k];
        auto it = std::lower_bound(row.begin(), row.end(), i,
                                   [](const std::pair<int, double>& e, int col) { return e.first < col; });
        if (it == row.end() || it->first != i) continue;
        double denom = inv_sk_minus_one(inst, xhat, params, k);
        if (!(denom > 0.0)) throw std::invalid_argument("s_k >= 1 in marginal_bound");
        sum += it->second / denom;
    }
    return params.alpha * xhat[i] * (1.0 + params.sigma * sum);
}

}  // namespace cip
