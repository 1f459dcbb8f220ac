#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cip {

/// Exit code taxonomy shared by every subcommand: 0 ok, 1 input/usage,
/// 2 attempts exhausted, 3 budget exceeded, 4 multiplicity violation,
/// 5 covering violation / hard-guarantee breach, 6 statistical check failed.
enum ExitCode {
    kExitOk = 0,
    kExitUsage = 1,
    kExitAttempts = 2,
    kExitBudget = 3,
    kExitMultiplicity = 4,
    kExitCover = 5,
    kExitStatistical = 6,
};

struct RunConfig {
    std::string command;
    std::string input;
    std::string output;
    std::string solution;
    std::string trace_path;
    std::string mode = "plain";
    double eps = -1.0;  ///< < 0 means not given
    std::uint64_t seed = 0;
    long long trials = 100000;
    int max_attempts = 0;
    int threads = 0;  ///< 0 = env CIP_ROUND_THREADS or 1

    std::string family;
    int gen_m = 0;
    double gen_a = 0.0;
    double gen_p = 0.3;
    int gen_t = 3;
    std::string base_path;
    double gen_eps = 0.0;
    int gen_k = 0;
    int gen_q = 0;
    double gen_g = 0.0;
    bool oracle = false;
    long long cap = 8;
    double budget = 1e8;

    std::vector<std::string> tails;  ///< "l:t" tail queries for bench
};

int cmd_solve(const RunConfig& config);
int cmd_gen(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_bench(const RunConfig& config);

/// Dispatch on config.command; unknown commands are usage errors.
int run_command(const RunConfig& config);

}  // namespace cip
