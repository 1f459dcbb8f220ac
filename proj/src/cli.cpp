#include "cip/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cip/analysis.hpp"
#include "cip/gaps.hpp"
#include "cip/io.hpp"
#include "cip/kc.hpp"
#include "cip/lp.hpp"
#include "cip/policies.hpp"
#include "cip/rng.hpp"

namespace cip {

namespace {

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

bool parse_mode(const std::string& s, SolveMode& mode) {
    if (s == "plain") mode = SolveMode::Plain;
    else if (s == "eps") mode = SolveMode::Eps;
    else if (s == "kc") mode = SolveMode::Kc;
    else return false;
    return true;
}

int effective_threads(const RunConfig& config) {
    int threads = config.threads;
    if (const char* env = std::getenv("CIP_ROUND_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) threads = threads <= 0 ? cap : std::min(threads, cap);
    }
    return threads <= 0 ? 1 : threads;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

}  // namespace

int cmd_solve(const RunConfig& config) {
    SolveMode mode;
    if (!parse_mode(config.mode, mode)) return usage_error("unknown mode '" + config.mode + "'");
    if (mode == SolveMode::Eps && config.eps < 0.0)
        return usage_error("--eps is required with --mode eps\nusage: cip solve --mode eps --eps X ...");
    if (mode != SolveMode::Eps && config.eps >= 0.0)
        return usage_error("--eps is only valid with --mode eps");
    if (config.input.empty()) return usage_error("--input is required");

    try {
        CipInstance inst = read_instance(config.input);
        if (mode == SolveMode::Kc && !inst.all_d_finite())
            return usage_error("kc requires finite multiplicities");

        SolveReport rep;
        try {
            switch (mode) {
                case SolveMode::Plain: rep = solve_plain(inst, config.seed, config.max_attempts); break;
                case SolveMode::Eps: rep = solve_eps(inst, config.eps, config.seed, config.max_attempts); break;
                case SolveMode::Kc: rep = solve_kc(inst, config.seed, config.max_attempts); break;
            }
        } catch (const std::runtime_error& e) {
            if (std::string(e.what()) == "attempts exhausted") {
                std::cerr << "error: attempts exhausted\n";
                return kExitAttempts;
            }
            throw;
        }
        std::string out = solve_report_to_json(rep, config.seed) + "\n";
        if (config.output.empty())
            std::cout << out;
        else
            emit(config.output, out);
        if (!config.trace_path.empty()) write_trace_jsonl(rep.trace, config.trace_path);
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    } catch (const LpInfeasible&) {
        return usage_error("LP infeasible");
    }
}

int cmd_gen(const RunConfig& config) {
    try {
        CipInstance inst;
        GapReport report;
        bool have_report = false;
        if (config.family == "random") {
            if (config.gen_m < 1 || !(config.gen_a > 0.0))
                return usage_error("gen --family random requires --m >= 1 and --a > 0");
            inst = gen_random_gap(config.gen_m, config.gen_a, config.gen_p, config.gen_t, config.seed);
            if (config.oracle) {
                report = gap_report_random(inst, config.gen_m, config.gen_a, config.gen_p,
                                           config.gen_t, config.cap, config.budget);
                have_report = true;
            }
        } else if (config.family == "eps-aug") {
            if (config.base_path.empty())
                return usage_error("gen --family eps-aug requires --base INSTANCE");
            if (!(config.gen_a > 0.0) || !(config.gen_eps > 0.0) || config.gen_k < 1)
                return usage_error("gen --family eps-aug requires --a > 0, --eps > 0, --K >= 1");
            CipInstance base = read_instance(config.base_path);
            inst = gen_eps_gap(base, config.gen_a, config.gen_eps, config.gen_k);
            if (config.oracle) {
                report = gap_report_eps(inst, config.gen_a, config.gen_eps, config.gen_k,
                                        config.cap, config.budget);
                have_report = true;
            }
        } else if (config.family == "gf2") {
            if (config.gen_q < 2 || !(config.gen_g > 0.0 && config.gen_g < 1.0))
                return usage_error("gen --family gf2 requires --q >= 2 and --g in (0,1)");
            inst = gen_gf2_gap(config.gen_q, config.gen_g);
            if (config.oracle) {
                report = gap_report_gf2(inst, config.gen_q, config.gen_g, config.cap, config.budget);
                have_report = true;
            }
        } else {
            return usage_error("unknown family '" + config.family + "'");
        }
        if (!config.output.empty()) write_instance(inst, config.output);
        else if (!have_report) std::cout << instance_to_json(inst) << "\n";
        if (have_report)
            std::cout << gap_report_csv_header() << "\n" << gap_report_csv_row(report) << "\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        if (std::string(e.what()) == "budget exceeded") {
            std::cerr << "error: budget exceeded\n";
            return kExitBudget;
        }
        return usage_error(e.what());
    } catch (const std::runtime_error& e) {
        return usage_error(e.what());
    }
}

int cmd_verify(const RunConfig& config) {
    if (config.input.empty() || config.solution.empty())
        return usage_error("verify requires --instance and --solution");
    try {
        CipInstance inst = read_instance(config.input);
        std::vector<long long> x = read_solution(config.solution);
        if (static_cast<int>(x.size()) != inst.n)
            return usage_error("solution length differs from instance n");
        for (long long xi : x)
            if (xi < 0) return usage_error("solution has negative entries");

        std::vector<int> violated_cover;
        for (int k = 0; k < inst.m; ++k) {
            double slack = inst.row_dot(k, x) - inst.a[k];
            std::cout << "constraint " << k << " slack " << slack << "\n";
            if (slack < 0.0) violated_cover.push_back(k);
        }
        std::vector<int> violated_mult;
        for (int i = 0; i < inst.n; ++i) {
            if (inst.d[i] != kUnbounded && static_cast<double>(x[i]) > inst.d[i])
                violated_mult.push_back(i);
        }
        if (!violated_cover.empty()) {
            std::cout << "violated constraints:";
            for (int k : violated_cover) std::cout << ' ' << k;
            std::cout << "\n";
            return kExitCover;
        }
        if (!violated_mult.empty()) {
            std::cout << "multiplicity violations:";
            for (int i : violated_mult) std::cout << ' ' << i;
            std::cout << "\n";
            return kExitMultiplicity;
        }
        std::cout << "ok\n";
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    }
}

namespace {

/// Expected-resamplings bound of the quantized pipeline on an instance:
/// sum over active rows of 1/(e^{sigma*alpha*a_k} (1-sigma)^{a_k} - 1).
double rounding_event_bound(const CipInstance& inst, const RoundingParams& params) {
    double total = 0.0;
    for (int k = 0; k < inst.m; ++k) {
        if (inst.a[k] <= 0.0) continue;
        double arg = inst.a[k] * (params.sigma * params.alpha + std::log1p(-params.sigma));
        total += 1.0 / std::expm1(arg);
    }
    return total;
}

}  // namespace

int cmd_bench(const RunConfig& config) {
    SolveMode mode;
    if (!parse_mode(config.mode, mode)) return usage_error("unknown mode '" + config.mode + "'");
    if (mode == SolveMode::Eps && config.eps < 0.0) return usage_error("--eps is required with --mode eps");
    if (config.trials < 1) return usage_error("--trials must be >= 1");
    if (config.input.empty()) return usage_error("--input is required");

    try {
        CipInstance inst = read_instance(config.input);
        std::vector<TailQuery> queries;
        for (const auto& tail_text : config.tails) {
            auto colon = tail_text.find(':');
            if (colon == std::string::npos) return usage_error("tail query must be l:t, got " + tail_text);
            TailQuery q;
            q.objective = std::stoi(tail_text.substr(0, colon));
            q.threshold = std::stod(tail_text.substr(colon + 1));
            queries.push_back(q);
        }

        Metrics met = compute_metrics(inst);
        double eps = config.eps;
        McStats stats =
            monte_carlo(inst, mode, eps, config.trials, config.seed, queries, effective_threads(config));

        std::ostringstream csv;
        csv << check_csv_header() << "\n";
        std::ostringstream params_label;
        params_label << "mode=" << config.mode << ";seed=" << config.seed;
        std::string instance_label = config.input;
        for (const auto& row : mc_stats_csv_rows(stats, instance_label, params_label.str()))
            csv << row << "\n";

        bool stats_ok = true;

        // Per-variable marginal against the mode's expectation bound.
        FractionalSolution frac;
        RoundingParams params;
        double beta = 0.0;
        std::optional<KcPipeline> pipe;
        if (mode == SolveMode::Plain) {
            frac = solve_basic_lp(inst, false);
            params = params_plain(met.gamma);
            beta = expectation_ratio_plain(met.gamma);
        } else if (mode == SolveMode::Eps) {
            frac = solve_basic_lp(inst, true);
            params = params_eps(met.gamma, eps);
            beta = expectation_ratio_eps(met.gamma, eps);
        } else {
            pipe = kc_prepare(inst);
            frac = pipe->frac;
            params = pipe->params;
            beta = 1.0 + met.gamma0 + 4.0 * std::sqrt(met.gamma0);
        }
        CheckResult worst;
        worst.pass = true;
        double worst_excess = -HUGE_VAL;
        for (int i = 0; i < inst.n; ++i) {
            double bound = beta * frac.x[i];
            if (mode == SolveMode::Kc && frac.x[i] >= inst.d[i] / kc_delta(met.gamma0))
                bound = inst.d[i];  // pinned deterministically
            double excess = stats.per_variable_mean[i] - 3.0 * stats.per_variable_stderr[i] - bound;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst.empirical = stats.per_variable_mean[i];
                worst.bound = bound;
                worst.stderr_ = stats.per_variable_stderr[i];
            }
            worst.pass = worst.pass &&
                         stats.per_variable_mean[i] <= bound + 3.0 * stats.per_variable_stderr[i];
        }
        csv << check_csv_row("marginal_worst", instance_label, params_label.str(), config.trials, worst)
            << "\n";
        stats_ok = stats_ok && worst.pass;

        // Mean resampling events against the quantized-pipeline bound.
        CheckResult events;
        events.empirical = stats.mean_events;
        events.stderr_ = stats.stderr_events;
        events.bound = rounding_event_bound(pipe ? pipe->pr.inst_prime : inst, params);
        events.pass = events.empirical <= events.bound + 3.0 * events.stderr_;
        csv << check_csv_row("mean_events", instance_label, params_label.str(), config.trials, events)
            << "\n";
        stats_ok = stats_ok && events.pass;

        // Negative correlation, when the fractional point is in the
        // relaxation regime.
        bool regime = true;
        for (double v : frac.x) regime = regime && v < 1.0 / params.alpha;
        if (regime && mode != SolveMode::Kc) {
            std::vector<int> support;
            for (int i = 0; i < inst.n; ++i)
                if (frac.x[i] > 0.0) support.push_back(i);
            CounterRng rng(CounterRng::derive(config.seed, 0xC0FFEE));
            int n_sets = 20;
            for (int s = 0; s < n_sets && support.size() >= 2; ++s) {
                std::vector<int> R;
                int size = 2 + static_cast<int>(rng.uniform() * 2.0);
                while (static_cast<int>(R.size()) < size) {
                    int cand = support[static_cast<size_t>(rng.uniform() * support.size())];
                    bool dup = false;
                    for (int r : R) dup = dup || r == cand;
                    if (!dup) R.push_back(cand);
                }
                CheckResult res = check_negative_correlation(inst, frac.x, params, R,
                                                             std::min<long long>(config.trials, 20000),
                                                             CounterRng::derive(config.seed, 7000 + s));
                std::ostringstream name;
                name << "neg_corr_set" << s;
                csv << check_csv_row(name.str(), instance_label, params_label.str(),
                                     std::min<long long>(config.trials, 20000), res)
                    << "\n";
                stats_ok = stats_ok && res.pass;
            }
        }

        // Requested tails against the Chernoff bound.
        for (size_t qi = 0; qi < queries.size(); ++qi) {
            CheckResult res = check_tail(inst, queries[qi].objective, queries[qi].threshold, mode,
                                         eps, config.trials, CounterRng::derive(config.seed, 9000 + qi));
            std::ostringstream name;
            name << "tail_obj" << queries[qi].objective << "_t" << queries[qi].threshold;
            csv << check_csv_row(name.str(), instance_label, params_label.str(), config.trials, res)
                << "\n";
            stats_ok = stats_ok && res.pass;
        }

        emit(config.output, csv.str());
        if (!stats.all_runs_feasible) {
            std::cerr << "error: hard guarantee breach (infeasible run observed)\n";
            return kExitCover;
        }
        return stats_ok ? kExitOk : kExitStatistical;
    } catch (const std::invalid_argument& e) {
        return usage_error(e.what());
    } catch (const LpInfeasible&) {
        return usage_error("LP infeasible");
    }
}

int run_command(const RunConfig& config) {
    if (config.command == "solve") return cmd_solve(config);
    if (config.command == "gen") return cmd_gen(config);
    if (config.command == "verify") return cmd_verify(config);
    if (config.command == "bench") return cmd_bench(config);
    return usage_error("unknown command '" + config.command + "'");
}

}  // namespace cip
