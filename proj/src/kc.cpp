#include "cip/kc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cip/lp.hpp"
#include "cip/rng.hpp"
#include "cip/rounding.hpp"
#include "rounding_detail.hpp"

namespace cip {

PinnedResidual pinned_residual(const CipInstance& inst, const std::vector<int>& X) {
    std::vector<char> pinned(inst.n, 0);
    for (int i : X) {
        if (i < 0 || i >= inst.n) throw std::invalid_argument("pin index out of range");
        if (inst.d[i] == kUnbounded) throw std::invalid_argument("unbounded d_i in X");
        pinned[i] = 1;
    }

    PinnedResidual pr;
    pr.X = X;
    std::sort(pr.X.begin(), pr.X.end());
    pr.v.resize(inst.m);

    CipInstance out = inst;
    for (int k = 0; k < inst.m; ++k) {
        double paid = 0.0;
        for (const auto& [i, c] : inst.rows[k])
            if (pinned[i]) paid += c * inst.d[i];
        double vk = inst.a[k] - paid;
        pr.v[k] = vk;

        std::vector<std::pair<int, double>> row;
        if (vk <= 0.0) {
            out.a[k] = 0.0;  // row disappears; kept in place, zeroed
        } else if (vk > 1.0) {
            out.a[k] = vk;
            for (const auto& [i, c] : inst.rows[k])
                if (!pinned[i]) row.emplace_back(i, c);
        } else {
            out.a[k] = 1.0;
            for (const auto& [i, c] : inst.rows[k])
                if (!pinned[i]) row.emplace_back(i, std::min(1.0, c / vk));
        }
        out.rows[k] = std::move(row);
    }
    pr.inst_prime = std::move(out);
    return pr;
}

bool pr_row_satisfied(const CipInstance& inst, const PinnedResidual& pr, int k,
                      const std::vector<long long>& x) {
    double vk = pr.v[k];
    if (vk <= 0.0) return true;
    if (vk > 1.0) {
        double s = 0.0;
        for (const auto& [i, c] : pr.inst_prime.rows[k]) s += c * static_cast<double>(x[i]);
        return s >= vk;
    }
    // v_k in (0,1]: A'_k . x >= 1 with A'_ki = min(1, A_ki/v_k), rearranged
    // division-free: unclipped mass >= v_k * (1 - clipped count).
    std::vector<char> pinned(inst.n, 0);
    for (int i : pr.X) pinned[i] = 1;
    double unclipped = 0.0;
    long long clipped = 0;
    for (const auto& [i, c] : inst.rows[k]) {
        if (pinned[i]) continue;
        if (c >= vk)
            clipped += x[i];
        else
            unclipped += c * static_cast<double>(x[i]);
    }
    return unclipped >= vk * (1.0 - static_cast<double>(clipped));
}

double kc_delta(double gamma0) {
    double r = std::sqrt(gamma0);
    return (0.5 * gamma0 + r) / std::log1p(r);
}

namespace {

std::vector<int> pin_set(const CipInstance& inst, const std::vector<double>& x, double delta) {
    std::vector<int> X;
    for (int i = 0; i < inst.n; ++i)
        if (x[i] >= inst.d[i] / delta) X.push_back(i);
    return X;
}

}  // namespace

std::pair<FractionalSolution, std::vector<int>> kc_lp(const CipInstance& inst, double delta) {
    if (!inst.all_d_finite()) throw std::invalid_argument("kc requires finite multiplicities");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");

    LpProblem base = LpProblem::from_instance(inst, true);
    std::vector<std::pair<std::vector<double>, double>> cuts;
    const long long max_iter = std::max(1LL, 50LL * inst.m);

    for (long long iter = 0; iter < max_iter; ++iter) {
        FractionalSolution frac = solve_lp_with_cuts(inst, base, cuts);
        std::vector<int> X = pin_set(inst, frac.x, delta);
        PinnedResidual pr = pinned_residual(inst, X);

        bool violated = false;
        for (int k = 0; k < inst.m; ++k) {
            double rhs = pr.inst_prime.a[k];
            if (rhs <= 0.0) continue;
            double s = 0.0;
            for (const auto& [i, c] : pr.inst_prime.rows[k]) s += c * frac.x[i];
            if (s < rhs - kFracTol) {
                std::vector<double> dense(inst.n, 0.0);
                for (const auto& [i, c] : pr.inst_prime.rows[k]) dense[i] = c;
                cuts.emplace_back(std::move(dense), rhs);
                violated = true;
            }
        }
        if (!violated) return {std::move(frac), std::move(X)};
    }
    throw std::runtime_error("no fixed point within cap");
}

KcPipeline kc_prepare(const CipInstance& inst) {
    if (!inst.all_d_finite()) throw std::invalid_argument("kc requires finite multiplicities");
    Metrics met = compute_metrics(inst);
    if (met.a_min < 1.0 - kFracTol || met.delta1 < 1.0 - kFracTol)
        throw std::invalid_argument("instance must be normalized (a_min >= 1, Delta_1 >= 1)");

    KcPipeline pipe;
    pipe.gamma0 = met.gamma0;
    pipe.delta = kc_delta(met.gamma0);
    std::tie(pipe.frac, pipe.X) = kc_lp(inst, pipe.delta);
    pipe.pr = pinned_residual(inst, pipe.X);
    pipe.params = params_plain(met.gamma0);
    // The per-run cap coefficient of these parameters is exactly delta.
    if (std::fabs(1.0 / pipe.params.theta - pipe.delta) > 1e-9 * pipe.delta)
        throw std::logic_error("cap coefficient differs from delta");
    pipe.xhat_resid = pipe.frac.x;
    for (int i : pipe.X) pipe.xhat_resid[i] = 0.0;
    return pipe;
}

std::pair<IntegralSolution, ResampleTrace> kc_round_once(const CipInstance& inst,
                                                         const KcPipeline& pipe,
                                                         std::uint64_t seed) {
    std::vector<double> pin(inst.n, 0.0);
    for (int i : pipe.X) pin[i] = inst.d[i];
    detail::CheckTarget original{&inst, nullptr, &pin};

    detail::RoundRun run =
        detail::round_on(pipe.pr.inst_prime, pipe.xhat_resid, pipe.params, seed, 0, &original);

    IntegralSolution sol;
    sol.x.resize(inst.n);
    std::vector<char> pinned(inst.n, 0);
    for (int i : pipe.X) pinned[i] = 1;
    for (int i = 0; i < inst.n; ++i) {
        sol.x[i] = pinned[i] ? static_cast<long long>(inst.d[i]) : run.x.x[i];
        if (static_cast<double>(sol.x[i]) > inst.d[i])
            throw std::logic_error("kc rounding breached a multiplicity cap");
    }
    if (!check_cover(inst, sol.x)) throw std::logic_error("kc rounding produced an infeasible x");
    sol.objective_values = objective_values(inst, sol.x);
    return {std::move(sol), std::move(run.trace)};
}

SolveReport solve_kc(const CipInstance& inst, std::uint64_t seed, int max_attempts) {
    KcPipeline pipe = kc_prepare(inst);
    if (max_attempts <= 0) max_attempts = default_max_attempts(inst.m);

    double lp_value = pipe.frac.objective_values[0];
    double threshold_ratio = 1.0 + pipe.gamma0 + 8.0 * std::sqrt(pipe.gamma0);
    double threshold = threshold_ratio * lp_value;

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto [x, trace] = kc_round_once(inst, pipe, CounterRng::derive(seed, attempt));
        double value = x.objective_values[0];
        if (value <= threshold) {
            SolveReport rep;
            rep.x = std::move(x);
            rep.attempts = attempt + 1;
            rep.lp_value = lp_value;
            rep.value = value;
            rep.ratio = lp_value > 0.0 ? value / lp_value : (value == 0.0 ? 1.0 : HUGE_VAL);
            // x <= d, covering, and every PR row holds for integral points,
            // so x is feasible for the cut LP and cannot beat its value.
            if (rep.ratio < 1.0 - 1e-9)
                throw std::logic_error("integral value beat the kc LP relaxation");
            rep.theoretical_ratio = threshold_ratio;
            rep.params_used = pipe.params;
            rep.mode = SolveMode::Kc;
            rep.trace = std::move(trace);
            return rep;
        }
    }
    throw std::runtime_error("attempts exhausted");
}

}  // namespace cip
