#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "cip/relaxation.hpp"
#include "cip/rng.hpp"
#include "support.hpp"

using namespace cip;
using testsup::make_inst;

TEST_CASE("make_params derives theta and validates") {
    RoundingParams p = make_params(0.75, 4.0);
    CHECK(p.theta == doctest::Approx(std::log(4.0) / 3.0));
    CHECK(p.alpha * p.theta > 1.0);

    CHECK_THROWS_AS(make_params(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(0.5, 1.0), std::invalid_argument);
    // -ln(1-0.5)/0.5 = 1.386..., so alpha = 1.2 violates the growth condition
    CHECK_THROWS_AS(make_params(0.5, 1.2), std::invalid_argument);
}

TEST_CASE("f_weight closed-form cases") {
    CipInstance inst = make_inst(1, {{1.0}}, {1.0});
    std::vector<double> xhat{0.1};
    RoundingParams p = make_params(0.5, 2.0);

    // Z empty: (1-sigma)^{-a} * prod(1 - A sigma) = 2 * 0.5 = 1.
    CHECK(f_weight(inst, xhat, p, 0, {}) == doctest::Approx(1.0));
    // Z = {0}: 2 * 0.5 * (0.8 * 0.5 / 0.5) = 0.8.
    CHECK(f_weight(inst, xhat, p, 0, {0}) == doctest::Approx(0.8));

    CipInstance two = make_inst(2, {{1.0, 0.0}}, {1.0});
    std::vector<double> xh2{0.1, 0.1};
    CHECK(f_weight(two, xh2, p, 0, {1}) == 0.0);  // A_k1 = 0 annihilates
}

TEST_CASE("s_bound closed forms") {
    CipInstance inst = make_inst(1, {{1.0}}, {1.5});
    std::vector<double> xhat{0.2};

    // sigma = 1 - 1/alpha:  s_k = alpha^{a_k} e^{-A.xhat (alpha-1)}.
    double alpha = 3.0;
    RoundingParams p = make_params(1.0 - 1.0 / alpha, alpha);
    double expect = std::pow(alpha, 1.5) * std::exp(-0.2 * (alpha - 1.0));
    CHECK(s_bound(inst, xhat, p, 0) == doctest::Approx(expect).epsilon(1e-12));

    // Covering-tight xhat with valid alpha gives s_k < 1.
    CipInstance tight = make_inst(1, {{1.0}}, {1.0});
    std::vector<double> xt{1.0};
    RoundingParams pt = make_params(0.75, 4.0);
    CHECK(s_bound(tight, xt, pt, 0) < 1.0);

    // Small sigma pushes s_k toward 1 from below.
    RoundingParams small = make_params(0.01, 4.0);
    CHECK(s_bound(tight, xt, small, 0) < 1.0);
    CHECK(s_bound(tight, xt, small, 0) > s_bound(tight, xt, pt, 0));
}

TEST_CASE("expected_resample_bound closed forms") {
    CipInstance none = make_inst(1, {{1.0}}, {1.0});
    none.m = 0;
    none.rows.clear();
    none.a.clear();
    std::vector<double> x0{0.0};
    RoundingParams p = make_params(0.5, 2.0);
    CHECK(expected_resample_bound(none, x0, p) == 0.0);

    // Constraint engineered to s_k = 1/2: bound is 1/(1/s - 1) = 1.
    CipInstance one = make_inst(1, {{1.0}}, {1.0});
    std::vector<double> xhat{std::log(4.0)};  // sigma*alpha*A.xhat = ln 4
    CHECK(s_bound(one, xhat, p, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(expected_resample_bound(one, xhat, p) == doctest::Approx(1.0).epsilon(1e-12));

    // s_k >= 1 is a domain error.
    std::vector<double> tiny{0.01};
    CHECK_THROWS_AS(expected_resample_bound(one, tiny, p), std::invalid_argument);
}

TEST_CASE("marginal_bound closed forms") {
    CipInstance inst = make_inst(2, {{1.0, 0.0}}, {1.0});
    std::vector<double> xhat{std::log(4.0), 0.1};
    RoundingParams p = make_params(0.5, 2.0);

    CHECK(marginal_bound(inst, {0.0, 0.0}, p, 0) == 0.0);
    // Variable 1 sits in no constraint: bound is alpha * xhat_1.
    CHECK(marginal_bound(inst, xhat, p, 1) == doctest::Approx(0.2));
    // Variable 0: alpha*xhat*(1 + sigma * 1/(1/s - 1)) with s = 1/2.
    double expect = 2.0 * std::log(4.0) * (1.0 + 0.5 * 1.0);
    CHECK(marginal_bound(inst, xhat, p, 0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("relax_round with no constraints is one Bernoulli sweep") {
    CipInstance inst;
    inst.n = 5;
    inst.m = 0;
    inst.d.assign(5, kUnbounded);
    inst.objectives.assign(1, std::vector<double>(5, 1.0));
    std::vector<double> xhat{0.0, 0.1, 0.2, 0.0, 0.24};
    RoundingParams p = make_params(0.75, 4.0);

    auto [x, trace] = relax_round(xhat, inst, p, 42);
    CHECK(trace.total_events() == 0);
    CHECK(x.x.size() == 5);
    CHECK(x.x[0] == 0);
    CHECK(x.x[3] == 0);

    auto [x2, trace2] = relax_round(xhat, inst, p, 42);
    CHECK(x.x == x2.x);  // bit-exact replay from the seed
}

TEST_CASE("relax_round precondition violations") {
    CipInstance inst = testsup::single_constraint(4);
    RoundingParams p = make_params(0.75, 4.0);
    CHECK_THROWS_AS(relax_round({0.3, 0.1, 0.1, 0.1}, inst, p, 1), std::invalid_argument);

    // s_k >= 1: mass far below the RHS.
    CHECK_THROWS_AS(relax_round({0.01, 0.01, 0.01, 0.01}, inst, p, 1), std::invalid_argument);
}

TEST_CASE("constraints with nonpositive RHS are skipped") {
    CipInstance inst = make_inst(1, {{1.0}}, {1.0});
    inst.a[0] = 0.0;
    RoundingParams p = make_params(0.75, 4.0);
    auto [x, trace] = relax_round({0.2}, inst, p, 3);
    CHECK(trace.total_events() == 0);
}

TEST_CASE("relax_round covers and replays on the flagship single constraint") {
    const int n = 20;
    CipInstance inst = testsup::single_constraint(n);
    std::vector<double> xhat(n, 1.0 / n);
    RoundingParams p = make_params(0.75, 4.0);

    bool saw_event = false;
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        auto [x, trace] = relax_round(xhat, inst, p, seed);
        REQUIRE(check_cover(inst, x.x));
        saw_event = saw_event || trace.total_events() > 0;

        // Replay: initial bits, then events against the minimal-violated rule.
        std::vector<long long> bits(trace.initial_bits.begin(), trace.initial_bits.end());
        std::set<int> turned_once;
        for (const auto& ev : trace.events) {
            int kmin = -1;
            for (int k = 0; k < inst.m && kmin < 0; ++k)
                if (inst.a[k] > 0.0 && inst.row_dot(k, bits) < inst.a[k]) kmin = k;
            REQUIRE(kmin == ev.k);
            for (int i : ev.turned) {
                CHECK(std::find(ev.resampled.begin(), ev.resampled.end(), i) != ev.resampled.end());
                CHECK(bits[i] == 0);
                CHECK(turned_once.insert(i).second);  // a variable turns at most once
                bits[i] = 1;
            }
        }
        CHECK(std::vector<long long>(x.x) == bits);
    }
    CHECK(saw_event);
}

TEST_CASE("cap exceeded signals parameter misuse") {
    const int n = 20;
    CipInstance inst = testsup::single_constraint(n);
    std::vector<double> xhat(n, 1.0 / n);
    RoundingParams p = make_params(0.75, 4.0);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        auto [x, trace] = relax_round(xhat, inst, p, seed);
        if (trace.total_events() >= 2) {
            CHECK_THROWS_WITH_AS(relax_round(xhat, inst, p, seed, 1), "cap exceeded",
                                 std::runtime_error);
            return;
        }
    }
    FAIL("no seed with two or more events found");
}

TEST_CASE("one-step and two-step resampling views agree in distribution") {
    // Fixed state: one violated constraint, bits = (0,0,1). Enumerate the
    // distribution over the next bit vector under both formulations.
    const std::vector<double> coeff{0.5, 0.75, 1.0};
    const std::vector<double> xhat{0.1, 0.2, 0.3};
    const double sigma = 0.6, alpha = 2.0;
    const std::vector<int> free_vars{0, 1};

    auto one_step = [&](int b0, int b1) {
        double prob = 1.0;
        const int outcome[2]{b0, b1};
        for (int j = 0; j < 2; ++j) {
            int i = free_vars[j];
            double q = sigma * coeff[i] * alpha * xhat[i];
            prob *= outcome[j] ? q : 1.0 - q;
        }
        return prob;
    };
    auto two_step = [&](int b0, int b1) {
        const int outcome[2]{b0, b1};
        double total = 0.0;
        for (int mask = 0; mask < 4; ++mask) {  // Y over the two free vars
            double prob = 1.0;
            bool possible = true;
            for (int j = 0; j < 2; ++j) {
                int i = free_vars[j];
                bool in_y = mask & (1 << j);
                prob *= in_y ? sigma * coeff[i] : 1.0 - sigma * coeff[i];
                double p_i = alpha * xhat[i];
                if (in_y)
                    prob *= outcome[j] ? p_i : 1.0 - p_i;
                else if (outcome[j])
                    possible = false;  // only resampled members can turn
            }
            if (possible) total += prob;
        }
        return total;
    };

    double sum = 0.0;
    for (int b0 = 0; b0 <= 1; ++b0)
        for (int b1 = 0; b1 <= 1; ++b1) {
            CHECK(one_step(b0, b1) == doctest::Approx(two_step(b0, b1)).epsilon(1e-12));
            sum += one_step(b0, b1);
        }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("witness weights dominate first-resampled-set frequencies") {
    CipInstance inst = make_inst(3, {{1.0, 1.0, 1.0}}, {1.0});
    std::vector<double> xhat{0.3, 0.3, 0.3};
    RoundingParams p = make_params(0.75, 3.0);
    REQUIRE(s_bound(inst, xhat, p, 0) < 1.0);

    const long long trials = 20000;
    std::map<std::vector<int>, long long> first_sets;
    for (long long t = 0; t < trials; ++t) {
        auto [x, trace] = relax_round(xhat, inst, p, CounterRng::derive(77, t));
        if (!trace.events.empty()) ++first_sets[trace.events[0].resampled];
    }
    for (const std::vector<int>& z :
         {std::vector<int>{}, {0}, {1}, {0, 1}, {0, 1, 2}}) {
        double emp = static_cast<double>(first_sets[z]) / trials;
        double bound = f_weight(inst, xhat, p, 0, z);
        CHECK(emp <= bound + 3.0 * testsup::binom_stderr(emp, trials));
    }
}

TEST_CASE("empirical marginals and event counts are dominated on the flagship instance") {
    const int n = 20;
    CipInstance inst = testsup::single_constraint(n);
    std::vector<double> xhat(n, 1.0 / n);
    RoundingParams p = make_params(0.75, 4.0);

    const long long trials = 100000;
    std::vector<long long> ones(n, 0);
    double events_sum = 0.0, events_sumsq = 0.0;
    for (long long t = 0; t < trials; ++t) {
        auto [x, trace] = relax_round(xhat, inst, p, CounterRng::derive(5, t));
        for (int i = 0; i < n; ++i) ones[i] += x.x[i];
        double e = static_cast<double>(trace.total_events());
        events_sum += e;
        events_sumsq += e * e;
    }
    for (int i = 0; i < n; ++i) {
        double emp = static_cast<double>(ones[i]) / trials;
        double rho = marginal_bound(inst, xhat, p, i);
        CHECK(emp <= rho + 3.0 * testsup::binom_stderr(emp, trials));
    }
    double mean_events = events_sum / trials;
    double var = (events_sumsq - events_sum * events_sum / trials) / (trials - 1);
    double se = std::sqrt(std::max(0.0, var) / trials);
    CHECK(mean_events <= expected_resample_bound(inst, xhat, p) + 3.0 * se);
}

TEST_CASE("product inequality over random draws") {
    // prod (1 - a x_i)^{-1} <= (1 - a)^{-sum x_i} for x_i in [0,1], a in (0,1).
    CounterRng rng(99);
    for (int t = 0; t < 10000; ++t) {
        int sz = 1 + static_cast<int>(rng.uniform() * 6.0);
        double a = 0.01 + 0.98 * rng.uniform();
        double lhs = 1.0, sum = 0.0;
        for (int i = 0; i < sz; ++i) {
            double xi = rng.uniform();
            lhs *= 1.0 / (1.0 - a * xi);
            sum += xi;
        }
        double rhs = std::pow(1.0 - a, -sum);
        CHECK(lhs <= rhs * (1.0 + 1e-9));
    }
}

TEST_CASE("inflation kernel is nonincreasing in the column mass") {
    // f(x) = x / ((x+1)^{(2 sqrt(g) + g - 2 ln(1+sqrt(g)))/g} - 1) decreases.
    for (double g : {0.1, 1.0, 10.0}) {
        double expo = (2.0 * std::sqrt(g) + g - 2.0 * std::log1p(std::sqrt(g))) / g;
        double prev = HUGE_VAL;
        for (double x = 0.01; x <= 100.0; x *= 1.07) {
            double val = x / (std::pow(x + 1.0, expo) - 1.0);
            CHECK(val <= prev + 1e-9);
            prev = val;
        }
    }
}
