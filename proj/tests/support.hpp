#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "cip/model.hpp"
#include "cip/rng.hpp"

namespace testsup {

using cip::CipInstance;
using cip::CounterRng;
using cip::kUnbounded;

inline std::vector<std::pair<int, double>> dense_row(const std::vector<double>& coeffs) {
    std::vector<std::pair<int, double>> row;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0.0) row.emplace_back(static_cast<int>(i), coeffs[i]);
    return row;
}

inline CipInstance make_inst(int n, std::vector<std::vector<double>> dense_rows,
                             std::vector<double> a, std::vector<double> d = {},
                             std::vector<std::vector<double>> objectives = {}) {
    CipInstance inst;
    inst.n = n;
    inst.m = static_cast<int>(dense_rows.size());
    for (auto& r : dense_rows) inst.rows.push_back(dense_row(r));
    inst.a = std::move(a);
    inst.d = d.empty() ? std::vector<double>(n, kUnbounded) : std::move(d);
    inst.objectives = objectives.empty()
                          ? std::vector<std::vector<double>>{std::vector<double>(n, 1.0)}
                          : std::move(objectives);
    return inst;
}

/// sum_i x_i >= 1 over n unit-cost variables.
inline CipInstance single_constraint(int n) {
    std::vector<double> row(n, 1.0);
    return make_inst(n, {row}, {1.0});
}

/// Tiny random instance on a dyadic grid (coefficients j/8, RHS in
/// {1/4, 1/2} or quarter-integers >= 1, dyadic objective weights) so that all
/// row sums, normalization divisions and residual arithmetic are exact in
/// doubles. Column 0 is planted in row 0 with coefficient 1 so Delta_1 >= 1
/// survives normalization. Caps are in {1, 2}.
inline CipInstance random_tiny_dyadic(std::uint64_t seed, int max_n = 4, int max_m = 4) {
    CounterRng rng(seed);
    int n = 1 + static_cast<int>(rng.uniform() * max_n);
    int m = 1 + static_cast<int>(rng.uniform() * max_m);
    CipInstance inst;
    inst.n = n;
    inst.m = m;
    inst.rows.resize(m);
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < n; ++i) {
            if (k == 0 && i == 0) {
                inst.rows[k].emplace_back(0, 1.0);
                continue;
            }
            if (rng.uniform() < 0.6) {
                double c = (1.0 + std::floor(rng.uniform() * 8.0)) / 8.0;
                inst.rows[k].emplace_back(i, c);
            }
        }
        if (inst.rows[k].empty()) inst.rows[k].emplace_back(n - 1, 0.5);
        double ak;
        if (rng.uniform() < 0.4)
            ak = rng.uniform() < 0.5 ? 0.25 : 0.5;
        else
            ak = 1.0 + std::floor(rng.uniform() * 5.0) / 4.0;
        inst.a.push_back(ak);
    }
    for (int i = 0; i < n; ++i) inst.d.push_back(1.0 + std::floor(rng.uniform() * 2.0));
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = (1.0 + std::floor(rng.uniform() * 8.0)) / 4.0;
    inst.objectives.push_back(std::move(c));
    return inst;
}

/// Set-cover-like instance with 0/1 coefficients: every row has exactly L
/// entries and every column degree is at most S (n*S slots dealt to m*L
/// places). With a common RHS `a` the realized gamma is
/// ln(maxdeg + 1) / a. Restarts with a derived seed if the dealing gets
/// stuck, so generation is total and deterministic.
inline CipInstance random_regular_cover(std::uint64_t seed, int m, int L, int S, double a) {
    for (int attempt = 0;; ++attempt) {
        CounterRng rng(CounterRng::derive(seed, attempt));
        int n = (m * L + S - 1) / S;
        std::vector<int> capacity(n, S);
        CipInstance inst;
        inst.n = n;
        inst.m = m;
        inst.rows.resize(m);
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            std::vector<int> avail;
            for (int i = 0; i < n; ++i)
                if (capacity[i] > 0) avail.push_back(i);
            if (static_cast<int>(avail.size()) < L) {
                ok = false;
                break;
            }
            for (int j = 0; j < L; ++j) {  // partial Fisher-Yates over avail
                int r = j + static_cast<int>(rng.uniform() * (avail.size() - j));
                std::swap(avail[j], avail[r]);
            }
            std::vector<int> chosen(avail.begin(), avail.begin() + L);
            std::sort(chosen.begin(), chosen.end());
            for (int i : chosen) {
                inst.rows[k].emplace_back(i, 1.0);
                --capacity[i];
            }
        }
        if (!ok) continue;
        inst.a.assign(m, a);
        inst.d.assign(n, kUnbounded);
        inst.objectives.assign(1, std::vector<double>(n, 1.0));
        return inst;
    }
}

/// Normalized instance with finite caps and fractional dyadic coefficients,
/// boxed-feasible with at least 2x margin: every row has L entries with
/// coefficients in {0.5, 0.625, ..., 1.0}, d_i in {1..dmax}, and
/// a_k = 1 + u * (0.5 * sum_i A_ki d_i - 1).
inline CipInstance random_boxed(std::uint64_t seed, int n, int m, int L, int dmax,
                                int objectives = 1) {
    for (int attempt = 0;; ++attempt) {
        CounterRng rng(CounterRng::derive(seed, attempt));
        CipInstance inst;
        inst.n = n;
        inst.m = m;
        inst.rows.resize(m);
        for (int i = 0; i < n; ++i) inst.d.push_back(1.0 + std::floor(rng.uniform() * dmax));
        std::vector<int> idx(n);
        for (int k = 0; k < m; ++k) {
            std::iota(idx.begin(), idx.end(), 0);
            for (int j = 0; j < L; ++j) {
                int r = j + static_cast<int>(rng.uniform() * (n - j));
                std::swap(idx[j], idx[r]);
            }
            std::vector<int> chosen(idx.begin(), idx.begin() + L);
            std::sort(chosen.begin(), chosen.end());
            double mass = 0.0;
            for (int i : chosen) {
                double c = (4.0 + std::floor(rng.uniform() * 5.0)) / 8.0;  // 0.5 .. 1.0
                inst.rows[k].emplace_back(i, c);
                mass += c * inst.d[i];
            }
            double hi = 0.5 * mass;
            inst.a.push_back(hi <= 1.0 ? 1.0 : 1.0 + rng.uniform() * (hi - 1.0));
        }
        for (int l = 0; l < objectives; ++l) {
            std::vector<double> c(n);
            for (int i = 0; i < n; ++i) c[i] = (1.0 + std::floor(rng.uniform() * 8.0)) / 8.0;
            inst.objectives.push_back(std::move(c));
        }
        // Delta_1 >= 1 is needed for the normalized-instance contract.
        std::vector<double> colmass(n, 0.0);
        for (int k = 0; k < m; ++k)
            for (const auto& [i, c] : inst.rows[k]) colmass[i] += c;
        if (*std::max_element(colmass.begin(), colmass.end()) < 1.0) continue;
        return inst;
    }
}

/// All integral points 0 <= x <= caps with A.x >= a (exact comparison).
inline std::vector<std::vector<long long>> enumerate_feasible(const CipInstance& inst,
                                                              const std::vector<long long>& caps) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> x(inst.n, 0);
    while (true) {
        bool ok = true;
        for (int k = 0; k < inst.m && ok; ++k) ok = inst.row_dot(k, x) >= inst.a[k];
        if (ok) out.push_back(x);
        int pos = 0;
        while (pos < inst.n) {
            if (++x[pos] <= caps[pos]) break;
            x[pos] = 0;
            ++pos;
        }
        if (pos == inst.n) break;
    }
    return out;
}

inline double binom_stderr(double p_hat, long long trials) {
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

}  // namespace testsup
