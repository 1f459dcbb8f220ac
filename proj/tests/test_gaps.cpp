#include <doctest.h>

#include <bit>
#include <cmath>

#include "cip/gaps.hpp"
#include "cip/io.hpp"
#include "support.hpp"

using namespace cip;
using testsup::make_inst;

namespace {

// Second, independent GF(2) parity route: fold the AND word down.
bool gf2_orthogonal(unsigned k, unsigned i) {
    unsigned w = k & i;
    w ^= w >> 16;
    w ^= w >> 8;
    w ^= w >> 4;
    w ^= w >> 2;
    w ^= w >> 1;
    return (w & 1u) == 0;
}

double log_binom(double top, int r) {
    // Generalized binomial via the falling factorial; top may be fractional.
    double s = 0.0;
    for (int j = 0; j < r; ++j) s += std::log(top - j);
    return s - std::lgamma(r + 1.0);
}

}  // namespace

TEST_CASE("gen_random_gap: complete rows at p = 1") {
    CipInstance inst = gen_random_gap(4, 2.0, 1.0, 3, 9);
    CHECK(inst.n == 12);
    for (int k = 0; k < inst.m; ++k) {
        CHECK(static_cast<int>(inst.rows[k].size()) == inst.n);
        for (const auto& [i, c] : inst.rows[k]) CHECK(c == 1.0);
    }
    double opt = brute_force_opt(inst, 2);
    CHECK(opt == doctest::Approx(2.0));  // ceil(a) units anywhere
}

TEST_CASE("gen_random_gap: row regularity and uniform feasibility") {
    CipInstance inst = gen_random_gap(10, 2.0, 0.3, 3, 123);
    const int s = static_cast<int>(std::ceil(0.3 * inst.n));
    for (int k = 0; k < inst.m; ++k) {
        CHECK(static_cast<int>(inst.rows[k].size()) == s);
        int prev = -1;
        for (const auto& [i, c] : inst.rows[k]) {
            CHECK(c == 1.0);
            CHECK(i > prev);  // sorted distinct positions
            prev = i;
        }
        std::vector<double> uniform(inst.n, 2.0 / s);
        CHECK(inst.row_dot(k, uniform) >= 2.0 - 1e-9);
    }
}

TEST_CASE("gen_random_gap is deterministic in the seed") {
    CipInstance a = gen_random_gap(10, 2.0, 0.3, 3, 5);
    CipInstance b = gen_random_gap(10, 2.0, 0.3, 3, 5);
    CHECK(instance_to_json(a) == instance_to_json(b));
    CipInstance c = gen_random_gap(10, 2.0, 0.3, 3, 6);
    CHECK(instance_to_json(a) != instance_to_json(c));
}

TEST_CASE("gen_random_gap domain errors") {
    CHECK_THROWS_AS(gen_random_gap(10, 2.0, 1.5, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(gen_random_gap(0, 2.0, 0.5, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(gen_random_gap(10, -1.0, 0.5, 3, 5), std::invalid_argument);
}

TEST_CASE("gen_eps_gap wiring") {
    CipInstance base = make_inst(3, {{1, 1, 0}, {0, 1, 1}}, {1.0, 1.0});
    double a = 2.0, eps = 0.5;
    int K = 2;
    CipInstance aug = gen_eps_gap(base, a, eps, K);
    CHECK(aug.n == 5);
    CHECK(aug.m == 2);
    double h = a / (K * (1.0 + eps) + 1.0);
    for (int k = 0; k < 2; ++k) {
        CHECK(aug.a[k] == a);
        CHECK(aug.rows[k].back().first == 3 + k);
        CHECK(aug.rows[k].back().second == doctest::Approx(h));
        CHECK(aug.d[3 + k] == 2.0);
    }
    CHECK(aug.d[0] == kUnbounded);
    CHECK(aug.objectives[0] == std::vector<double>{1, 1, 1, 0, 0});

    // Large K drives the helper coefficient to zero.
    CipInstance big = gen_eps_gap(base, a, eps, 1000);
    CHECK(big.rows[0].back().second == doctest::Approx(a / (1000 * 1.5 + 1)).epsilon(1e-9));

    // K too small makes the coefficient exceed 1.
    CHECK_THROWS_AS(gen_eps_gap(base, 5.0, 0.1, 1), std::invalid_argument);

    CipInstance bad_rhs = make_inst(1, {{1.0}}, {2.0});
    CHECK_THROWS_AS(gen_eps_gap(bad_rhs, 2.0, 0.5, 2), std::invalid_argument);
}

TEST_CASE("gen_eps_gap forcing property via enumeration") {
    CipInstance base = make_inst(3, {{1, 1, 0}, {0, 1, 1}}, {1.0, 1.0});
    double a = 2.0, eps = 0.5;
    int K = 2;
    CipInstance aug = gen_eps_gap(base, a, eps, K);
    long long helper_cap = static_cast<long long>(std::ceil((1.0 + eps) * K));  // 3

    std::vector<long long> caps(aug.n, 3);
    caps[3] = caps[4] = helper_cap;
    auto feasible = testsup::enumerate_feasible(aug, caps);
    REQUIRE(!feasible.empty());
    for (const auto& x : feasible) {
        for (int k = 0; k < base.m; ++k) {
            double orig = 0.0;
            for (const auto& [i, c] : base.rows[k]) orig += c * static_cast<double>(x[i]);
            CHECK(orig >= 1.0);  // helpers alone can never cover
        }
    }
}

TEST_CASE("gen_eps_gap fractional construction is feasible") {
    CipInstance base = make_inst(3, {{1, 1, 0}, {0, 1, 1}}, {1.0, 1.0});
    double a = 2.0, eps = 0.5;
    int K = 2;
    CipInstance aug = gen_eps_gap(base, a, eps, K);

    // Base fractional solution: uniform 1/2 covers both rows with equality.
    std::vector<double> xb(3, 0.5);
    double v = a * (1.0 + eps * K) / (1.0 + (1.0 + eps) * K);
    std::vector<double> xf(aug.n);
    for (int i = 0; i < 3; ++i) xf[i] = v * xb[i];
    xf[3] = xf[4] = K;
    for (int k = 0; k < aug.m; ++k) CHECK(aug.row_dot(k, xf) >= a - 1e-9);
}

TEST_CASE("gen_gf2_gap structure") {
    CipInstance q2 = gen_gf2_gap(2, 0.5);
    CHECK(q2.n == 3);
    CHECK(q2.m == 3);
    for (int k = 0; k < q2.m; ++k) REQUIRE(q2.rows[k].size() == 1);
    // k=1 is orthogonal to i=2, k=2 to i=1, k=3 to i=3 (xor of bits).
    CHECK(q2.rows[0][0].first == 1);
    CHECK(q2.rows[1][0].first == 0);
    CHECK(q2.rows[2][0].first == 2);

    for (int q = 3; q <= 6; ++q) {
        CipInstance inst = gen_gf2_gap(q, 0.5);
        const int support = (1 << (q - 1)) - 1;
        REQUIRE(inst.n == (1 << q) - 1);
        for (int k = 1; k <= inst.n; ++k) {
            REQUIRE(static_cast<int>(inst.rows[k - 1].size()) == support);
            // Independent membership oracle, row by row.
            size_t pos = 0;
            for (int i = 1; i <= inst.n; ++i) {
                bool member = pos < inst.rows[k - 1].size() &&
                              inst.rows[k - 1][pos].first == i - 1;
                CHECK(member == gf2_orthogonal(static_cast<unsigned>(k), static_cast<unsigned>(i)));
                if (member) ++pos;
            }
        }
    }
    CHECK_THROWS_AS(gen_gf2_gap(1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(gen_gf2_gap(3, 1.0), std::invalid_argument);
}

TEST_CASE("gf2 counting bound at q = 3, 4") {
    struct Setup {
        int q;
        double g;
        double budget;
    };
    for (const Setup& s : {Setup{3, 0.5, 1e8}, Setup{4, 0.75, 1e12}}) {
        CipInstance inst = gen_gf2_gap(s.q, s.g);
        double a = (s.q - 1) / s.g;
        long long cap = static_cast<long long>(std::ceil(a));
        double T = brute_force_opt(inst, cap, s.budget);
        // binom(T, q-1) / (binom(T-a, q-1) * (2^q - 1)) <= 1
        double lhs = log_binom(T, s.q - 1) - log_binom(T - a, s.q - 1) -
                     std::log(static_cast<double>((1 << s.q) - 1));
        CHECK(lhs <= 1e-9);
        CHECK(T / gf2_frac_value(s.q, s.g) >= 1.0 - 1e-9);
    }
}

TEST_CASE("brute_force_opt basics") {
    CipInstance id3 = make_inst(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1.0, 1.5, 2.0});
    CHECK(brute_force_opt(id3, 4) == doctest::Approx(5.0));  // sum of ceil(a_k)

    CipInstance hard = make_inst(1, {{0.5}}, {2.0});
    CHECK_THROWS_WITH_AS(brute_force_opt(hard, 1), "infeasible under cap", std::runtime_error);

    CipInstance wide;
    wide.n = 40;
    wide.m = 1;
    wide.rows.assign(1, {});
    for (int i = 0; i < 40; ++i) wide.rows[0].emplace_back(i, 1.0);
    wide.a = {1.0};
    wide.d.assign(40, kUnbounded);
    wide.objectives.assign(1, std::vector<double>(40, 1.0));
    CHECK_THROWS_WITH_AS(brute_force_opt(wide, 8), "budget exceeded", std::invalid_argument);
}

TEST_CASE("brute_force_opt respects weighted objectives and caps") {
    CipInstance inst = make_inst(2, {{1.0, 1.0}}, {2.0}, {2.0, 2.0}, {{3.0, 1.0}});
    CHECK(brute_force_opt(inst, 5) == doctest::Approx(2.0));  // x = (0,2)
    std::vector<long long> caps{2, 1};
    CHECK(brute_force_opt(inst, caps) == doctest::Approx(4.0));  // x = (1,1)
}

TEST_CASE("gap reports carry ratio >= 1") {
    CipInstance inst = gen_random_gap(6, 1.5, 0.4, 2, 3);
    GapReport rep = gap_report_random(inst, 6, 1.5, 0.4, 2, 2);
    CHECK(rep.ratio >= 1.0 - 1e-9);
    CHECK(rep.int_opt >= rep.frac_value - 1e-9);
    CHECK(rep.theoretical_floor == doctest::Approx(std::log(6.0) / 1.5));

    CipInstance gf2 = gen_gf2_gap(3, 0.5);
    GapReport grep = gap_report_gf2(gf2, 3, 0.5, 4);
    CHECK(grep.ratio >= 1.0 - 1e-9);
    CHECK(grep.theoretical_floor == doctest::Approx(1.0 + 0.5 / 8.0));
    CHECK(gap_report_csv_row(grep).rfind("gf2,", 0) == 0);
}
