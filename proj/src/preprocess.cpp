#include "cip/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cip {

namespace {

double max_column_mass(const CipInstance& inst) {
    std::vector<double> mass(inst.n, 0.0);
    for (int k = 0; k < inst.m; ++k)
        for (const auto& [i, c] : inst.rows[k]) mass[i] += c;
    double d1 = 0.0;
    for (double v : mass) d1 = std::max(d1, v);
    return d1;
}

}  // namespace

std::pair<CipInstance, NormalizationCertificate> normalize(const CipInstance& inst) {
    if (inst.n == 0) throw std::invalid_argument("degenerate matrix: n = 0");
    bool any = false;
    for (const auto& row : inst.rows) any = any || !row.empty();
    if (!any) throw std::invalid_argument("degenerate matrix: all-zero A");

    CipInstance out = inst;
    NormalizationCertificate cert;
    cert.row_divisors.assign(inst.m, 1.0);

    for (int k = 0; k < out.m; ++k) {
        for (auto& [i, c] : out.rows[k]) {
            if (c > out.a[k]) {
                c = out.a[k];
                cert.clamped.emplace_back(k, i);
            }
        }
        if (out.a[k] < 1.0) {
            cert.row_divisors[k] = out.a[k];
            for (auto& [i, c] : out.rows[k]) c = c / cert.row_divisors[k];
            out.a[k] = out.a[k] / cert.row_divisors[k];  // exactly 1
        }
    }

    double d1 = max_column_mass(out);
    if (d1 < 1.0) {
        cert.global_divisor = d1;
        for (int k = 0; k < out.m; ++k) {
            for (auto& [i, c] : out.rows[k]) c = c / d1;
            out.a[k] = out.a[k] / d1;
        }
    }
    return {std::move(out), cert};
}

CipInstance apply_certificate(const CipInstance& inst, const NormalizationCertificate& cert) {
    if (static_cast<int>(cert.row_divisors.size()) != inst.m)
        throw std::invalid_argument("certificate shape differs from instance");
    CipInstance out = inst;
    for (const auto& [k, i] : cert.clamped) {
        for (auto& [col, c] : out.rows[k])
            if (col == i) c = out.a[k];
    }
    for (int k = 0; k < out.m; ++k) {
        double rd = cert.row_divisors[k];
        if (rd != 1.0) {
            for (auto& [i, c] : out.rows[k]) c = c / rd;
            out.a[k] = out.a[k] / rd;
        }
    }
    if (cert.global_divisor != 1.0) {
        for (int k = 0; k < out.m; ++k) {
            for (auto& [i, c] : out.rows[k]) c = c / cert.global_divisor;
            out.a[k] = out.a[k] / cert.global_divisor;
        }
    }
    return out;
}

}  // namespace cip
