#include "cip/gaps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cip/lp.hpp"
#include "cip/rng.hpp"

namespace cip {

std::string to_string(GapFamily family) {
    switch (family) {
        case GapFamily::Random: return "random";
        case GapFamily::EpsAug: return "eps-aug";
        case GapFamily::Gf2: return "gf2";
    }
    return "?";
}

CipInstance gen_random_gap(int m, double a, double p, int t, std::uint64_t seed) {
    if (m < 1 || t < 1) throw std::invalid_argument("m and t must be >= 1");
    if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in (0,1]");
    const long long n_ll = static_cast<long long>(m) * t;
    if (n_ll > 2'000'000) throw std::invalid_argument("instance too large");
    const int n = static_cast<int>(n_ll);
    const int s = static_cast<int>(std::ceil(p * n));
    if (s > n) throw std::invalid_argument("s > n");

    CipInstance inst;
    inst.n = n;
    inst.m = m;
    inst.a.assign(m, a);
    inst.d.assign(n, kUnbounded);
    inst.objectives.assign(1, std::vector<double>(n, 1.0));
    inst.rows.resize(m);

    CounterRng rng(seed);
    std::vector<int> idx(n);
    for (int k = 0; k < m; ++k) {
        std::iota(idx.begin(), idx.end(), 0);
        for (int j = 0; j < s; ++j) {  // partial Fisher-Yates
            int r = j + static_cast<int>(rng.uniform() * (n - j));
            std::swap(idx[j], idx[r]);
        }
        std::vector<int> chosen(idx.begin(), idx.begin() + s);
        std::sort(chosen.begin(), chosen.end());
        inst.rows[k].reserve(s);
        for (int i : chosen) inst.rows[k].emplace_back(i, 1.0);
    }
    return inst;
}

CipInstance gen_eps_gap(const CipInstance& base, double a, double eps, int K) {
    if (!(a > 0.0)) throw std::invalid_argument("a must be > 0");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    for (int k = 0; k < base.m; ++k) {
        if (base.a[k] != 1.0) throw std::invalid_argument("base must have unit RHS");
        for (const auto& [i, c] : base.rows[k])
            if (c != 1.0) throw std::invalid_argument("base must have 0/1 coefficients");
    }
    double h = a / (K * (1.0 + eps) + 1.0);
    if (h > 1.0) throw std::invalid_argument("helper coefficient exceeds 1 (K too small)");

    CipInstance inst;
    inst.n = base.n + base.m;
    inst.m = base.m;
    inst.a.assign(base.m, a);
    inst.d.assign(base.n, kUnbounded);
    inst.d.resize(inst.n, static_cast<double>(K));
    std::vector<double> c(inst.n, 0.0);
    for (int i = 0; i < base.n; ++i) c[i] = 1.0;
    inst.objectives.assign(1, std::move(c));
    inst.rows.resize(base.m);
    for (int k = 0; k < base.m; ++k) {
        inst.rows[k] = base.rows[k];
        inst.rows[k].emplace_back(base.n + k, h);
    }
    return inst;
}

CipInstance gen_gf2_gap(int q, double g) {
    if (q < 2 || q > 20) throw std::invalid_argument("q must be in [2,20]");
    if (!(g > 0.0 && g < 1.0)) throw std::invalid_argument("g must be in (0,1)");
    const int n = (1 << q) - 1;
    const double a = (q - 1) / g;

    CipInstance inst;
    inst.n = n;
    inst.m = n;
    inst.a.assign(n, a);
    inst.d.assign(n, kUnbounded);
    inst.objectives.assign(1, std::vector<double>(n, 1.0));
    inst.rows.resize(n);
    for (int k = 1; k <= n; ++k) {
        auto& row = inst.rows[k - 1];
        for (int i = 1; i <= n; ++i) {
            if (std::popcount(static_cast<unsigned>(k & i)) % 2 == 0) row.emplace_back(i - 1, 1.0);
        }
    }
    return inst;
}

double gf2_frac_value(int q, double g) {
    double a = (q - 1) / g;
    double support = static_cast<double>((1 << (q - 1)) - 1);
    return ((1 << q) - 1) * a / support;
}

namespace {

struct BruteForce {
    const CipInstance& inst;
    std::vector<int> order;             ///< variables, heaviest column first
    std::vector<long long> caps;        ///< in order[] position
    std::vector<double> costs;          ///< in order[] position
    std::vector<std::vector<std::pair<int, double>>> cols;  ///< per position: (row, coef)
    std::vector<std::vector<double>> suffix_cover;   ///< [pos][k]: max future coverage
    std::vector<double> suffix_rate;    ///< [pos]: max future colmass/cost (inf if free)
    double best = HUGE_VAL;

    BruteForce(const CipInstance& in, std::vector<long long> per_var_caps) : inst(in) {
        const int n = inst.n;
        std::vector<double> mass(n, 0.0);
        std::vector<std::vector<std::pair<int, double>>> by_col(n);
        for (int k = 0; k < inst.m; ++k)
            for (const auto& [i, c] : inst.rows[k]) {
                mass[i] += c;
                by_col[i].emplace_back(k, c);
            }
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a_, int b_) { return mass[a_] > mass[b_]; });

        caps.resize(n);
        costs.resize(n);
        cols.resize(n);
        for (int pos = 0; pos < n; ++pos) {
            int i = order[pos];
            caps[pos] = per_var_caps[i];
            costs[pos] = inst.objectives[0][i];
            cols[pos] = std::move(by_col[i]);
        }
        suffix_cover.assign(n + 1, std::vector<double>(inst.m, 0.0));
        suffix_rate.assign(n + 1, 0.0);
        for (int pos = n - 1; pos >= 0; --pos) {
            suffix_cover[pos] = suffix_cover[pos + 1];
            for (const auto& [k, c] : cols[pos]) suffix_cover[pos][k] += c * caps[pos];
            double rate = costs[pos] > 0.0 ? mass[order[pos]] / costs[pos] : HUGE_VAL;
            suffix_rate[pos] = std::max(suffix_rate[pos + 1], rate);
        }
    }

    void search(int pos, double cost, std::vector<double>& deficit, double total_deficit) {
        if (total_deficit <= 0.0) {
            // Re-check exactly: the running total can drift, deficits cannot.
            bool ok = true;
            for (double dk : deficit) ok = ok && dk <= 0.0;
            if (ok) {
                best = std::min(best, cost);
                return;
            }
            total_deficit = 0.0;
            for (double dk : deficit) total_deficit += std::max(0.0, dk);
        }
        if (pos == static_cast<int>(order.size())) return;
        if (cost >= best) return;
        // Coverage feasibility and cost lower bound.
        double need = 0.0;
        for (int k = 0; k < inst.m; ++k) {
            if (deficit[k] > 0.0) {
                if (deficit[k] > suffix_cover[pos][k]) return;
                need += deficit[k];
            }
        }
        if (need > 0.0 && suffix_rate[pos] < HUGE_VAL) {
            if (cost + need / suffix_rate[pos] >= best) return;
        }

        for (long long val = caps[pos]; val >= 0; --val) {
            double new_cost = cost + costs[pos] * static_cast<double>(val);
            if (new_cost >= best) continue;
            double new_total = 0.0;
            for (const auto& [k, c] : cols[pos]) deficit[k] -= c * static_cast<double>(val);
            for (double dk : deficit) new_total += std::max(0.0, dk);
            search(pos + 1, new_cost, deficit, new_total);
            for (const auto& [k, c] : cols[pos]) deficit[k] += c * static_cast<double>(val);
        }
    }
};

double brute_force_impl(const CipInstance& inst, std::vector<long long> caps, double budget) {
    double space = 1.0;
    for (long long c : caps) {
        space *= static_cast<double>(c + 1);
        if (space > budget) throw std::invalid_argument("budget exceeded");
    }
    BruteForce bf(inst, std::move(caps));
    std::vector<double> deficit = inst.a;
    double total = 0.0;
    for (double dk : deficit) total += std::max(0.0, dk);
    bf.search(0, 0.0, deficit, total);
    if (bf.best == HUGE_VAL) throw std::runtime_error("infeasible under cap");
    return bf.best;
}

}  // namespace

double brute_force_opt(const CipInstance& inst, long long per_var_cap, double budget) {
    std::vector<long long> caps(inst.n);
    for (int i = 0; i < inst.n; ++i) {
        double di = inst.d[i];
        caps[i] = di == kUnbounded ? per_var_cap
                                   : std::min<long long>(per_var_cap, static_cast<long long>(di));
    }
    return brute_force_impl(inst, std::move(caps), budget);
}

double brute_force_opt(const CipInstance& inst, const std::vector<long long>& caps, double budget) {
    if (static_cast<int>(caps.size()) != inst.n)
        throw std::invalid_argument("caps length differs from n");
    std::vector<long long> clipped(inst.n);
    for (int i = 0; i < inst.n; ++i) {
        double di = inst.d[i];
        clipped[i] =
            di == kUnbounded ? caps[i] : std::min<long long>(caps[i], static_cast<long long>(di));
    }
    return brute_force_impl(inst, std::move(clipped), budget);
}

namespace {

GapReport finish_report(GapFamily family, std::string params, double frac, double int_opt,
                        double floor) {
    GapReport rep;
    rep.family = family;
    rep.params = std::move(params);
    rep.frac_value = frac;
    rep.int_opt = int_opt;
    rep.ratio = frac > 0.0 ? int_opt / frac : 1.0;
    rep.theoretical_floor = floor;
    return rep;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

GapReport gap_report_random(const CipInstance& inst, int m, double a, double p, int t,
                            long long per_var_cap, double budget) {
    double frac = solve_basic_lp(inst, false).objective_values[0];
    double opt = brute_force_opt(inst, per_var_cap, budget);
    std::ostringstream ps;
    ps << "m=" << m << ";a=" << fmt(a) << ";p=" << fmt(p) << ";t=" << t;
    return finish_report(GapFamily::Random, ps.str(), frac, opt, std::log(static_cast<double>(m)) / a);
}

GapReport gap_report_eps(const CipInstance& inst, double a, double eps, int K,
                         long long per_var_cap, double budget) {
    double frac = solve_basic_lp(inst, true).objective_values[0];
    // The integral side may eps-violate the caps: helpers go up to ceil((1+eps)K).
    std::vector<long long> caps(inst.n, per_var_cap);
    long long helper_cap = static_cast<long long>(std::ceil((1.0 + eps) * K));
    for (int i = inst.n - inst.m; i < inst.n; ++i) caps[i] = helper_cap;
    CipInstance relaxed = inst;
    for (int i = relaxed.n - relaxed.m; i < relaxed.n; ++i)
        relaxed.d[i] = static_cast<double>(helper_cap);
    double opt = brute_force_opt(relaxed, caps, budget);
    std::ostringstream ps;
    ps << "a=" << fmt(a) << ";eps=" << fmt(eps) << ";K=" << K;
    return finish_report(GapFamily::EpsAug, ps.str(), frac, opt,
                         std::log(static_cast<double>(inst.m)) / (a * eps));
}

GapReport gap_report_gf2(const CipInstance& inst, int q, double g, long long per_var_cap,
                         double budget) {
    double frac = gf2_frac_value(q, g);
    double opt = brute_force_opt(inst, per_var_cap, budget);
    std::ostringstream ps;
    ps << "q=" << q << ";g=" << fmt(g);
    return finish_report(GapFamily::Gf2, ps.str(), frac, opt, 1.0 + g / 8.0);
}

std::string gap_report_csv_header() {
    return "family,params,frac_value,int_opt,ratio,theoretical_floor";
}

std::string gap_report_csv_row(const GapReport& report) {
    std::ostringstream os;
    os.precision(12);
    os << to_string(report.family) << ',' << report.params << ',' << report.frac_value << ','
       << report.int_opt << ',' << report.ratio << ',' << report.theoretical_floor;
    return os.str();
}

}  // namespace cip
