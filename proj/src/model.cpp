#include "cip/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cip {

namespace {

std::string fmt_entry(int k, int i) {
    std::ostringstream os;
    os << "A[" << k << "," << i << "]";
    return os.str();
}

}  // namespace

std::vector<std::string> validate_instance(const CipInstance& inst) {
    std::vector<std::string> bad;
    auto add = [&](const std::string& s) { bad.push_back(s); };

    if (inst.n < 0) add("n must be >= 0");
    if (inst.m < 0) add("m must be >= 0");
    if (static_cast<int>(inst.rows.size()) != inst.m) add("rows size differs from m");
    if (static_cast<int>(inst.a.size()) != inst.m) add("a size differs from m");
    if (static_cast<int>(inst.d.size()) != inst.n) add("d size differs from n");
    if (!bad.empty()) return bad;  // shape is broken, skip element checks

    for (int k = 0; k < inst.m; ++k) {
        int prev = -1;
        for (const auto& [i, c] : inst.rows[k]) {
            if (i < 0 || i >= inst.n) add(fmt_entry(k, i) + " column out of range");
            if (i <= prev) add(fmt_entry(k, i) + " columns not strictly increasing");
            prev = i;
            if (!(c > 0.0)) {
                std::ostringstream os;
                os << fmt_entry(k, i) << "=" << c << " must be > 0";
                add(os.str());
            } else if (c > 1.0) {
                std::ostringstream os;
                os << fmt_entry(k, i) << "=" << c << " exceeds 1";
                add(os.str());
            }
        }
        if (!(inst.a[k] > 0.0)) {
            std::ostringstream os;
            os << "a[" << k << "] must be > 0";
            add(os.str());
        }
    }
    for (int i = 0; i < inst.n; ++i) {
        double di = inst.d[i];
        if (di == kUnbounded) continue;
        if (!(di >= 1.0) || di != std::floor(di)) {
            std::ostringstream os;
            os << "d[" << i << "]=" << di << " must be an integer >= 1 or unbounded";
            add(os.str());
        }
    }
    if (inst.objectives.empty()) add("objectives must be nonempty");
    for (size_t l = 0; l < inst.objectives.size(); ++l) {
        if (static_cast<int>(inst.objectives[l].size()) != inst.n) {
            std::ostringstream os;
            os << "objective " << l << " size differs from n";
            add(os.str());
        } else {
            for (int i = 0; i < inst.n; ++i) {
                if (!(inst.objectives[l][i] >= 0.0)) {
                    std::ostringstream os;
                    os << "C[" << l << "," << i << "] must be >= 0";
                    add(os.str());
                }
            }
        }
    }
    return bad;
}

Metrics compute_metrics(const CipInstance& inst) {
    if (inst.n == 0) throw std::invalid_argument("degenerate matrix: n = 0");
    std::vector<int> count(inst.n, 0);
    std::vector<double> mass(inst.n, 0.0);
    bool any = false;
    for (int k = 0; k < inst.m; ++k) {
        for (const auto& [i, c] : inst.rows[k]) {
            ++count[i];
            mass[i] += c;
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("degenerate matrix: all-zero A");

    Metrics met;
    for (int i = 0; i < inst.n; ++i) {
        met.delta0 = std::max(met.delta0, count[i]);
        met.delta1 = std::max(met.delta1, mass[i]);
    }
    met.a_min = inst.a[0];
    for (double ak : inst.a) met.a_min = std::min(met.a_min, ak);
    met.gamma = std::log1p(met.delta1) / met.a_min;
    met.gamma0 = std::log1p(static_cast<double>(met.delta0));
    return met;
}

bool check_cover(const CipInstance& inst, const std::vector<long long>& x) {
    if (static_cast<int>(x.size()) != inst.n)
        throw std::invalid_argument("check_cover: solution length differs from n");
    for (long long xi : x)
        if (xi < 0) throw std::invalid_argument("check_cover: negative entry");
    for (int k = 0; k < inst.m; ++k) {
        if (inst.row_dot(k, x) < inst.a[k]) return false;
    }
    return true;
}

namespace {
template <typename Vec>
std::vector<double> objective_values_impl(const CipInstance& inst, const Vec& x) {
    std::vector<double> vals;
    vals.reserve(inst.objectives.size());
    for (const auto& c : inst.objectives) {
        double s = 0.0;
        for (int i = 0; i < inst.n; ++i) s += c[i] * static_cast<double>(x[i]);
        vals.push_back(s);
    }
    return vals;
}
}  // namespace

std::vector<double> objective_values(const CipInstance& inst, const std::vector<long long>& x) {
    return objective_values_impl(inst, x);
}
std::vector<double> objective_values(const CipInstance& inst, const std::vector<double>& x) {
    return objective_values_impl(inst, x);
}

}  // namespace cip
