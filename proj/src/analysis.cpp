#include "cip/analysis.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cip/kc.hpp"
#include "cip/lp.hpp"
#include "cip/rng.hpp"
#include "cip/rounding.hpp"

namespace cip {

double chernoff_upper(double mu, double t) {
    if (!(mu >= 0.0)) throw std::invalid_argument("mu must be >= 0");
    if (t < mu) throw std::invalid_argument("t must be >= mu");
    if (mu == 0.0) return t > 0.0 ? 0.0 : 1.0;
    double log_bound = (t - mu) - t * std::log(t / mu);
    return std::exp(log_bound);
}

namespace {

/// Shared single-attempt pipeline for the harness.
struct Runner {
    const CipInstance& inst;
    SolveMode mode;
    double eps = 0.0;
    FractionalSolution frac;
    RoundingParams params;
    std::optional<KcPipeline> pipe;

    static Runner prepare(const CipInstance& inst, SolveMode mode, double eps) {
        Runner r{inst, mode, eps, {}, {}, std::nullopt};
        switch (mode) {
            case SolveMode::Plain: {
                Metrics met = compute_metrics(inst);
                r.frac = solve_basic_lp(inst, false);
                r.params = params_plain(met.gamma);
                break;
            }
            case SolveMode::Eps: {
                if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must be in (0,1]");
                Metrics met = compute_metrics(inst);
                r.frac = solve_basic_lp(inst, true);
                r.params = params_eps(met.gamma, eps);
                break;
            }
            case SolveMode::Kc: {
                r.pipe = kc_prepare(inst);
                r.frac = r.pipe->frac;
                r.params = r.pipe->params;
                break;
            }
        }
        return r;
    }

    std::pair<IntegralSolution, std::size_t> run(std::uint64_t trial_seed) const {
        if (mode == SolveMode::Kc) {
            auto [x, trace] = kc_round_once(inst, *pipe, trial_seed);
            return {std::move(x), trace.total_events()};
        }
        auto [x, trace] = round_solution(frac.x, inst, params, trial_seed);
        return {std::move(x), trace.total_events()};
    }

    bool hard_guarantees_hold(const IntegralSolution& x) const {
        if (!check_cover(inst, x.x)) return false;
        if (mode == SolveMode::Eps) {
            for (int i = 0; i < inst.n; ++i) {
                long long cap = static_cast<long long>(std::ceil(frac.x[i] * (1.0 + eps)));
                if (x.x[i] > cap) return false;
            }
        } else if (mode == SolveMode::Kc) {
            for (int i = 0; i < inst.n; ++i)
                if (static_cast<double>(x.x[i]) > inst.d[i]) return false;
        }
        return true;
    }
};

struct Accum {
    std::vector<double> sum_x, sumsq_x;
    double sum_events = 0.0, sumsq_events = 0.0;
    std::vector<long long> tail_hits;
    std::vector<long long> max_x;
    bool feasible = true;

    explicit Accum(int n, size_t n_tails)
        : sum_x(n, 0.0), sumsq_x(n, 0.0), tail_hits(n_tails, 0), max_x(n, 0) {}

    void merge(const Accum& o) {
        for (size_t i = 0; i < sum_x.size(); ++i) {
            sum_x[i] += o.sum_x[i];
            sumsq_x[i] += o.sumsq_x[i];
            max_x[i] = std::max(max_x[i], o.max_x[i]);
        }
        sum_events += o.sum_events;
        sumsq_events += o.sumsq_events;
        for (size_t j = 0; j < tail_hits.size(); ++j) tail_hits[j] += o.tail_hits[j];
        feasible = feasible && o.feasible;
    }
};

double sample_stderr(double sum, double sumsq, long long n) {
    if (n < 2) return 0.0;
    double var = (sumsq - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1);
    if (var < 0.0) var = 0.0;
    return std::sqrt(var / static_cast<double>(n));
}

}  // namespace

McStats monte_carlo(const CipInstance& inst, SolveMode mode, double eps, long long trials,
                    std::uint64_t seed, const std::vector<TailQuery>& tail_queries, int threads) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (const auto& q : tail_queries) {
        if (q.objective < 0 || q.objective >= static_cast<int>(inst.objectives.size()))
            throw std::invalid_argument("tail query objective out of range");
    }
    Runner runner = Runner::prepare(inst, mode, eps);

    int n_threads = threads <= 0 ? 1 : threads;
    n_threads = static_cast<int>(std::min<long long>(n_threads, trials));

    auto work = [&](int tid, Accum& acc) {
        for (long long j = tid; j < trials; j += n_threads) {
            auto [x, events] = runner.run(CounterRng::derive(seed, static_cast<std::uint64_t>(j)));
            if (!runner.hard_guarantees_hold(x)) acc.feasible = false;
            for (int i = 0; i < inst.n; ++i) {
                double xi = static_cast<double>(x.x[i]);
                acc.sum_x[i] += xi;
                acc.sumsq_x[i] += xi * xi;
                acc.max_x[i] = std::max(acc.max_x[i], x.x[i]);
            }
            double ev = static_cast<double>(events);
            acc.sum_events += ev;
            acc.sumsq_events += ev * ev;
            for (size_t qi = 0; qi < tail_queries.size(); ++qi) {
                if (x.objective_values[tail_queries[qi].objective] > tail_queries[qi].threshold)
                    ++acc.tail_hits[qi];
            }
        }
    };

    std::vector<Accum> parts(n_threads, Accum(inst.n, tail_queries.size()));
    if (n_threads == 1) {
        work(0, parts[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int tid = 0; tid < n_threads; ++tid)
            pool.emplace_back([&, tid] { work(tid, parts[tid]); });
        for (auto& th : pool) th.join();
    }
    Accum total = std::move(parts[0]);
    for (int tid = 1; tid < n_threads; ++tid) total.merge(parts[tid]);

    McStats stats;
    stats.trials = trials;
    stats.per_variable_mean.resize(inst.n);
    stats.per_variable_stderr.resize(inst.n);
    for (int i = 0; i < inst.n; ++i) {
        stats.per_variable_mean[i] = total.sum_x[i] / static_cast<double>(trials);
        stats.per_variable_stderr[i] = sample_stderr(total.sum_x[i], total.sumsq_x[i], trials);
    }
    stats.mean_events = total.sum_events / static_cast<double>(trials);
    stats.stderr_events = sample_stderr(total.sum_events, total.sumsq_events, trials);
    for (size_t qi = 0; qi < tail_queries.size(); ++qi) {
        stats.tail_counts.push_back({tail_queries[qi].objective, tail_queries[qi].threshold,
                                     static_cast<double>(total.tail_hits[qi]) /
                                         static_cast<double>(trials)});
    }
    stats.all_runs_feasible = total.feasible;
    stats.max_multiplicity_seen = std::move(total.max_x);
    return stats;
}

CheckResult check_negative_correlation(const CipInstance& inst, const std::vector<double>& xhat,
                                       const RoundingParams& params, const std::vector<int>& R,
                                       long long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (int i : R)
        if (i < 0 || i >= inst.n) throw std::invalid_argument("R index out of range");

    long long hits = 0;
    for (long long j = 0; j < trials; ++j) {
        auto [x, trace] = relax_round(xhat, inst, params, CounterRng::derive(seed, j));
        bool all = true;
        for (int i : R) all = all && x.x[i] == 1;
        if (all) ++hits;
    }
    CheckResult res;
    res.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    res.bound = 1.0;
    for (int i : R) res.bound *= marginal_bound(inst, xhat, params, i);
    res.stderr_ = std::sqrt(res.empirical * (1.0 - res.empirical) / static_cast<double>(trials));
    res.pass = res.empirical <= res.bound + 3.0 * res.stderr_;
    return res;
}

CheckResult check_tail(const CipInstance& inst, int objective, double threshold, SolveMode mode,
                       double eps, long long trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (objective < 0 || objective >= static_cast<int>(inst.objectives.size()))
        throw std::invalid_argument("objective index out of range");
    for (double c : inst.objectives[objective])
        if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("C_l entry outside [0,1]");

    Runner runner = Runner::prepare(inst, mode, eps);
    double beta = 0.0;
    Metrics met = compute_metrics(inst);
    switch (mode) {
        case SolveMode::Plain: beta = expectation_ratio_plain(met.gamma); break;
        case SolveMode::Eps: beta = expectation_ratio_eps(met.gamma, eps); break;
        case SolveMode::Kc: beta = 1.0 + met.gamma0 + 4.0 * std::sqrt(met.gamma0); break;
    }
    double mu = 0.0;
    for (int i = 0; i < inst.n; ++i) mu += inst.objectives[objective][i] * runner.frac.x[i];
    mu *= beta;

    long long hits = 0;
    for (long long j = 0; j < trials; ++j) {
        auto [x, events] = runner.run(CounterRng::derive(seed, j));
        if (x.objective_values[objective] > threshold) ++hits;
    }
    CheckResult res;
    res.empirical = static_cast<double>(hits) / static_cast<double>(trials);
    res.bound = threshold >= mu ? chernoff_upper(mu, threshold) : 1.0;
    res.stderr_ = std::sqrt(res.empirical * (1.0 - res.empirical) / static_cast<double>(trials));
    res.pass = res.empirical <= res.bound + 3.0 * res.stderr_;
    return res;
}

std::string check_csv_header() {
    return "check,instance,params,trials,empirical,bound,stderr,pass";
}

std::string check_csv_row(const std::string& check, const std::string& instance,
                          const std::string& params, long long trials, const CheckResult& r) {
    std::ostringstream os;
    os.precision(12);
    os << check << ',' << instance << ',' << params << ',' << trials << ',' << r.empirical << ','
       << r.bound << ',' << r.stderr_ << ',' << (r.pass ? "1" : "0");
    return os.str();
}

std::vector<std::string> mc_stats_csv_rows(const McStats& stats, const std::string& instance,
                                           const std::string& params) {
    std::vector<std::string> rows;
    std::ostringstream os;
    os.precision(12);
    os << "mc_feasible," << instance << ',' << params << ',' << stats.trials << ','
       << (stats.all_runs_feasible ? 1 : 0) << ",1,0," << (stats.all_runs_feasible ? "1" : "0");
    rows.push_back(os.str());
    std::ostringstream ev;
    ev.precision(12);
    ev << "mc_mean_events," << instance << ',' << params << ',' << stats.trials << ','
       << stats.mean_events << ",," << stats.stderr_events << ",1";
    rows.push_back(ev.str());
    for (const auto& t : stats.tail_counts) {
        std::ostringstream ts;
        ts.precision(12);
        ts << "mc_tail_obj" << t.objective << "_t" << t.threshold << ',' << instance << ','
           << params << ',' << stats.trials << ',' << t.fraction << ",,,";
        rows.push_back(ts.str());
    }
    return rows;
}

}  // namespace cip
