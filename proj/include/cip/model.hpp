#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace cip {

/// Sentinel for an unbounded multiplicity cap d_i.
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Absolute feasibility tolerance for fractional certificates. Integral
/// feasibility (check_cover) always compares exactly on the stored doubles.
inline constexpr double kFracTol = 1e-9;

/// A positive covering integer program:
///
///     minimize  C_l . x   subject to  A x >= a,  x integral,  0 <= x <= d.
///
/// A is stored sparsely row-major; only strictly positive coefficients are
/// stored, so an absent entry is exactly 0 and the max column support size is
/// Delta_0 by construction. Instances are immutable after construction and
/// safe to share across threads.
struct CipInstance {
    int n = 0;  ///< variable count
    int m = 0;  ///< constraint count
    /// rows[k] = sorted list of (column, coefficient), coefficient in (0,1]
    std::vector<std::vector<std::pair<int, double>>> rows;
    std::vector<double> a;  ///< RHS, a_k > 0
    std::vector<double> d;  ///< multiplicity caps, integer >= 1 or kUnbounded
    std::vector<std::vector<double>> objectives;  ///< r >= 1 cost vectors, entries >= 0

    /// Row activation Sum_i A_ki * x_i in stored-entry order. This summation
    /// order defines exact integral feasibility everywhere in the toolkit.
    template <typename Vec>
    double row_dot(int k, const Vec& x) const {
        double s = 0.0;
        for (const auto& [i, c] : rows[k]) s += c * static_cast<double>(x[i]);
        return s;
    }

    bool all_d_finite() const {
        for (double di : d)
            if (di == kUnbounded) return false;
        return true;
    }
};

/// Column sparsity metrics of an instance.
struct Metrics {
    int delta0 = 0;       ///< max column l0 norm (support size)
    double delta1 = 0.0;  ///< max column l1 norm
    double a_min = 0.0;   ///< min_k a_k
    double gamma = 0.0;   ///< ln(delta1 + 1) / a_min
    double gamma0 = 0.0;  ///< ln(delta0 + 1)
};

enum class LpKind { BasicUnbounded, BasicBoxed, Kc };

/// A nonnegative fractional point certified feasible for one of the LPs.
struct FractionalSolution {
    std::vector<double> x;
    std::vector<double> objective_values;  ///< C_l . x for every objective
    LpKind lp_kind = LpKind::BasicUnbounded;
};

/// A nonnegative integral point. Feasibility means A x >= a exactly on the
/// stored coefficients (no tolerance).
struct IntegralSolution {
    std::vector<long long> x;
    std::vector<double> objective_values;
};

/// Returns a description of every violated CipInstance invariant; empty iff
/// the instance is valid. Total function, never throws.
std::vector<std::string> validate_instance(const CipInstance& inst);

/// Exact column norms and gamma. Throws std::invalid_argument on a
/// degenerate matrix (n = 0 or no stored coefficients).
Metrics compute_metrics(const CipInstance& inst);

/// True iff every covering constraint holds exactly for the integral x.
/// Throws std::invalid_argument on length mismatch or negative entries.
bool check_cover(const CipInstance& inst, const std::vector<long long>& x);

/// C_l . x for every objective.
std::vector<double> objective_values(const CipInstance& inst, const std::vector<long long>& x);
std::vector<double> objective_values(const CipInstance& inst, const std::vector<double>& x);

}  // namespace cip
