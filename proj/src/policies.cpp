#include "cip/policies.hpp"

#include <cmath>
#include <stdexcept>

#include "cip/lp.hpp"
#include "cip/rng.hpp"
#include "cip/rounding.hpp"

namespace cip {

std::string to_string(SolveMode mode) {
    switch (mode) {
        case SolveMode::Plain: return "plain";
        case SolveMode::Eps: return "eps";
        case SolveMode::Kc: return "kc";
    }
    return "?";
}

RoundingParams params_plain(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    double alpha = 1.0 + gamma + 2.0 * std::sqrt(gamma);
    return make_params(1.0 - 1.0 / alpha, alpha);
}

RoundingParams params_eps(double gamma, double eps) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0,1]");
    if (gamma <= eps * eps / 2.0) return params_plain(gamma);
    double sigma = -std::expm1(-gamma / eps);  // 1 - e^{-gamma/eps}
    // Extreme gamma/eps rounds sigma to 1 in doubles; cap it one ulp below so
    // the parameters stay meaningful. alpha is derived from the capped sigma,
    // which keeps the per-run cap coefficient alpha*sigma/(-ln(1-sigma)) at
    // exactly 1 + eps.
    sigma = std::min(sigma, std::nextafter(1.0, 0.0));
    double alpha = -(1.0 + eps) * std::log1p(-sigma) / sigma;
    return make_params(sigma, alpha);
}

double expectation_ratio_plain(double gamma) { return 1.0 + gamma + 4.0 * std::sqrt(gamma); }

double expectation_ratio_eps(double gamma, double eps) {
    return 1.0 + 4.0 * std::sqrt(gamma) + 4.0 * gamma / eps;
}

int default_max_attempts(int m) {
    return 64 * static_cast<int>(std::ceil(std::sqrt(std::log(static_cast<double>(m) + 2.0))));
}

namespace {

void require_normalized(const Metrics& met) {
    if (met.a_min < 1.0 - kFracTol || met.delta1 < 1.0 - kFracTol)
        throw std::invalid_argument("instance must be normalized (a_min >= 1, Delta_1 >= 1)");
}

SolveReport retry_loop(const CipInstance& inst, const FractionalSolution& frac,
                       const RoundingParams& params, double threshold_ratio, SolveMode mode,
                       std::uint64_t seed, int max_attempts, double eps) {
    double lp_value = frac.objective_values[0];
    double threshold = threshold_ratio * lp_value;

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        auto [x, trace] = round_solution(frac.x, inst, params, CounterRng::derive(seed, attempt));
        if (!check_cover(inst, x.x)) throw std::logic_error("solver produced an infeasible x");
        if (mode == SolveMode::Eps) {
            for (int i = 0; i < inst.n; ++i) {
                long long cap = static_cast<long long>(std::ceil(frac.x[i] * (1.0 + eps)));
                if (x.x[i] > cap) throw std::logic_error("eps multiplicity cap breached");
            }
        }
        double value = x.objective_values[0];
        if (value <= threshold) {
            SolveReport rep;
            rep.x = std::move(x);
            rep.attempts = attempt + 1;
            rep.lp_value = lp_value;
            rep.value = value;
            rep.ratio = lp_value > 0.0 ? value / lp_value : (value == 0.0 ? 1.0 : HUGE_VAL);
            // A covering x is feasible for the unbounded basic LP, so in
            // plain mode it cannot beat the LP value. (An eps run may beat
            // the boxed LP by spending its eps slack, so no assert there.)
            if (mode == SolveMode::Plain && rep.ratio < 1.0 - 1e-9)
                throw std::logic_error("integral value beat the LP relaxation");
            rep.theoretical_ratio = threshold_ratio;
            rep.params_used = params;
            rep.mode = mode;
            rep.trace = std::move(trace);
            return rep;
        }
    }
    throw std::runtime_error("attempts exhausted");
}

}  // namespace

SolveReport solve_plain(const CipInstance& inst, std::uint64_t seed, int max_attempts) {
    Metrics met = compute_metrics(inst);
    require_normalized(met);
    if (max_attempts <= 0) max_attempts = default_max_attempts(inst.m);

    FractionalSolution frac = solve_basic_lp(inst, false);
    RoundingParams params = params_plain(met.gamma);
    double threshold = 1.0 + met.gamma + 5.0 * std::sqrt(met.gamma);
    return retry_loop(inst, frac, params, threshold, SolveMode::Plain, seed, max_attempts, 0.0);
}

SolveReport solve_eps(const CipInstance& inst, double eps, std::uint64_t seed, int max_attempts) {
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0,1]");
    Metrics met = compute_metrics(inst);
    require_normalized(met);
    if (max_attempts <= 0) max_attempts = default_max_attempts(inst.m);

    FractionalSolution frac = solve_basic_lp(inst, true);
    RoundingParams params = params_eps(met.gamma, eps);
    double threshold = 1.0 + 5.0 * std::sqrt(met.gamma) + 5.0 * met.gamma / eps;
    return retry_loop(inst, frac, params, threshold, SolveMode::Eps, seed, max_attempts, eps);
}

}  // namespace cip
