#include <CLI11.hpp>

#include "cip/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Randomized-rounding toolkit for column-sparse covering integer programs"};
    app.require_subcommand(1);

    cip::RunConfig cfg;

    auto* solve = app.add_subcommand("solve", "round an instance to an integral cover");
    solve->add_option("--input", cfg.input, "instance JSON")->required();
    solve->add_option("--output", cfg.output, "solve report JSON (stdout if omitted)");
    solve->add_option("--mode", cfg.mode, "plain | eps | kc");
    solve->add_option("--eps", cfg.eps, "multiplicity slack, required iff --mode eps");
    solve->add_option("--seed", cfg.seed, "RNG seed");
    solve->add_option("--max-attempts", cfg.max_attempts, "retry budget (0 = default)");
    solve->add_option("--trace", cfg.trace_path, "dump the accepted attempt's trace as JSONL");

    auto* gen = app.add_subcommand("gen", "generate an integrality-gap instance");
    gen->add_option("--family", cfg.family, "random | eps-aug | gf2")->required();
    gen->add_option("--output", cfg.output, "instance JSON path (stdout if omitted)");
    gen->add_option("--seed", cfg.seed, "RNG seed (random family)");
    gen->add_option("--m", cfg.gen_m, "constraint count (random)");
    gen->add_option("--a", cfg.gen_a, "common RHS (random, eps-aug)");
    gen->add_option("--p", cfg.gen_p, "row density (random), default 0.3");
    gen->add_option("--t", cfg.gen_t, "variables per constraint factor, n = m*t (random), default 3");
    gen->add_option("--base", cfg.base_path, "base instance (eps-aug)");
    gen->add_option("--eps", cfg.gen_eps, "epsilon (eps-aug)");
    gen->add_option("--K", cfg.gen_k, "helper cap (eps-aug)");
    gen->add_option("--q", cfg.gen_q, "dimension (gf2)");
    gen->add_option("--g", cfg.gen_g, "gap parameter in (0,1) (gf2)");
    gen->add_flag("--oracle", cfg.oracle, "also print a GapReport CSV row (small instances)");
    gen->add_option("--cap", cfg.cap, "oracle per-variable cap, default 8");
    gen->add_option("--budget", cfg.budget, "oracle search budget, default 1e8");

    auto* verify = app.add_subcommand("verify", "check a solution file against an instance");
    verify->add_option("--instance", cfg.input, "instance JSON")->required();
    verify->add_option("--solution", cfg.solution, "solution or solve-report JSON")->required();

    auto* bench = app.add_subcommand("bench", "Monte Carlo checks of the proved bounds");
    bench->add_option("--input", cfg.input, "instance JSON")->required();
    bench->add_option("--output", cfg.output, "CSV path (stdout if omitted)");
    bench->add_option("--mode", cfg.mode, "plain | eps | kc");
    bench->add_option("--eps", cfg.eps, "multiplicity slack, required iff --mode eps");
    bench->add_option("--seed", cfg.seed, "RNG seed");
    bench->add_option("--trials", cfg.trials, "Monte Carlo trials, default 100000");
    bench->add_option("--tail", cfg.tails, "tail query l:t (repeatable)");
    bench->add_option("--threads", cfg.threads, "trial parallelism (env CIP_ROUND_THREADS caps it)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cip::kExitUsage;
    }

    if (solve->parsed()) cfg.command = "solve";
    else if (gen->parsed()) cfg.command = "gen";
    else if (verify->parsed()) cfg.command = "verify";
    else if (bench->parsed()) cfg.command = "bench";
    return cip::run_command(cfg);
}
