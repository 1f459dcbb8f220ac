#include "cip/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace cip {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;
constexpr double kPhase1Tol = 1e-7;

/// Dense tableau. Rows are equalities with rhs >= 0; `basis[r]` is the column
/// currently basic in row r.
class Tableau {
  public:
    Tableau(int rows, int cols) : ncols_(cols), t_(rows, std::vector<double>(cols + 1, 0.0)) {}

    std::vector<double>& row(int r) { return t_[r]; }
    int rows() const { return static_cast<int>(t_.size()); }
    int cols() const { return ncols_; }
    double rhs(int r) const { return t_[r][ncols_]; }

    void pivot(int r, int c) {
        double piv = t_[r][c];
        for (double& v : t_[r]) v /= piv;
        t_[r][c] = 1.0;  // kill residual rounding on the pivot itself
        for (int q = 0; q < rows(); ++q) {
            if (q == r) continue;
            eliminate(t_[q], t_[r], c);
        }
        basis[r] = c;
    }

    static void eliminate(std::vector<double>& target, const std::vector<double>& pivot_row, int c) {
        double f = target[c];
        if (f == 0.0) return;
        for (size_t j = 0; j < target.size(); ++j) target[j] -= f * pivot_row[j];
        target[c] = 0.0;
    }

    /// Bland iteration on the priced-out objective row `obj` (size cols+1).
    /// Columns with allowed[j] == false never enter. Returns false when
    /// optimal, throws std::logic_error when unbounded.
    bool bland_step(std::vector<double>& obj, const std::vector<bool>& allowed) {
        int enter = -1;
        for (int j = 0; j < ncols_; ++j) {
            if (allowed[j] && obj[j] < -kPivotTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return false;

        int leave = -1;
        double best = 0.0;
        for (int r = 0; r < rows(); ++r) {
            double coef = t_[r][enter];
            if (coef <= kPivotTol) continue;
            double ratio = rhs(r) / coef;
            if (leave < 0 || ratio < best - kRatioTieTol ||
                (ratio <= best + kRatioTieTol && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave < 0) throw std::logic_error("LP unbounded");

        double piv = t_[leave][enter];
        for (double& v : t_[leave]) v /= piv;
        t_[leave][enter] = 1.0;
        eliminate(obj, t_[leave], enter);
        for (int q = 0; q < rows(); ++q) {
            if (q != leave) eliminate(t_[q], t_[leave], enter);
        }
        basis[leave] = enter;
        return true;
    }

    std::vector<int> basis;

  private:
    int ncols_;
    std::vector<std::vector<double>> t_;
};

}  // namespace

LpProblem LpProblem::from_instance(const CipInstance& inst, bool use_box) {
    LpProblem p;
    p.objective = inst.objectives[0];
    p.upper.assign(inst.n, kUnbounded);
    for (int k = 0; k < inst.m; ++k) {
        std::vector<double> row(inst.n, 0.0);
        for (const auto& [i, c] : inst.rows[k]) row[i] = c;
        p.ge_rows.emplace_back(std::move(row), inst.a[k]);
    }
    if (use_box) {
        for (int i = 0; i < inst.n; ++i)
            if (inst.d[i] != kUnbounded) p.upper[i] = inst.d[i];
    }
    return p;
}

LpResult solve_lp(const LpProblem& problem) {
    const int n = static_cast<int>(problem.objective.size());
    for (double c : problem.objective)
        if (!std::isfinite(c)) throw std::invalid_argument("non-finite objective coefficient");
    for (const auto& [row, rhs] : problem.ge_rows) {
        if (static_cast<int>(row.size()) != n) throw std::invalid_argument("row length differs from n");
        if (!std::isfinite(rhs)) throw std::invalid_argument("non-finite rhs");
        for (double c : row)
            if (!std::isfinite(c)) throw std::invalid_argument("non-finite row coefficient");
    }

    std::vector<int> boxed;
    for (int i = 0; i < n && i < static_cast<int>(problem.upper.size()); ++i) {
        if (problem.upper[i] == kUnbounded) continue;
        if (problem.upper[i] < 0.0) throw LpInfeasible();
        boxed.push_back(i);
    }

    const int n_ge = static_cast<int>(problem.ge_rows.size());
    const int n_rows = n_ge + static_cast<int>(boxed.size());
    // Columns: structural | one slack/surplus per row | artificials.
    std::vector<int> artificial_rows;
    for (int k = 0; k < n_ge; ++k)
        if (problem.ge_rows[k].second > 0.0) artificial_rows.push_back(k);
    const int n_art = static_cast<int>(artificial_rows.size());
    const int cols = n + n_rows + n_art;

    Tableau tab(n_rows, cols);
    tab.basis.assign(n_rows, -1);

    int art = 0;
    for (int k = 0; k < n_ge; ++k) {
        auto& row = tab.row(k);
        const auto& [ge, rhs] = problem.ge_rows[k];
        if (rhs > 0.0) {
            for (int i = 0; i < n; ++i) row[i] = ge[i];
            row[n + k] = -1.0;  // surplus
            row[cols] = rhs;
            int acol = n + n_rows + art++;
            row[acol] = 1.0;
            tab.basis[k] = acol;
        } else {
            // rhs <= 0: negate so the surplus becomes a basic slack at -rhs.
            for (int i = 0; i < n; ++i) row[i] = -ge[i];
            row[n + k] = 1.0;
            row[cols] = -rhs;
            tab.basis[k] = n + k;
        }
    }
    for (size_t b = 0; b < boxed.size(); ++b) {
        int r = n_ge + static_cast<int>(b);
        auto& row = tab.row(r);
        row[boxed[b]] = 1.0;
        row[n + r] = 1.0;
        row[cols] = problem.upper[boxed[b]];
        tab.basis[r] = n + r;
    }

    std::vector<bool> allowed(cols, true);

    // Phase 1: minimize the artificial sum.
    if (n_art > 0) {
        std::vector<double> obj(cols + 1, 0.0);
        for (int j = n + n_rows; j < cols; ++j) obj[j] = 1.0;
        for (int r = 0; r < n_rows; ++r)
            if (tab.basis[r] >= n + n_rows) Tableau::eliminate(obj, tab.row(r), tab.basis[r]);
        while (tab.bland_step(obj, allowed)) {
        }
        double infeas = -obj[cols];
        if (infeas > kPhase1Tol) throw LpInfeasible();
        // Drive leftover artificials out of the basis; fully zero rows are
        // redundant and dropped from further pivoting by zeroing them.
        for (int r = 0; r < n_rows; ++r) {
            if (tab.basis[r] < n + n_rows) continue;
            int col = -1;
            for (int j = 0; j < n + n_rows; ++j) {
                if (std::fabs(tab.row(r)[j]) > kPivotTol) {
                    col = j;
                    break;
                }
            }
            if (col >= 0) {
                tab.pivot(r, col);
            } else {
                for (double& v : tab.row(r)) v = 0.0;
                tab.basis[r] = -1;
            }
        }
        for (int j = n + n_rows; j < cols; ++j) allowed[j] = false;
    }

    // Phase 2: original objective.
    std::vector<double> obj(cols + 1, 0.0);
    for (int i = 0; i < n; ++i) obj[i] = problem.objective[i];
    for (int r = 0; r < n_rows; ++r) {
        int b = tab.basis[r];
        if (b >= 0 && b < n && problem.objective[b] != 0.0) Tableau::eliminate(obj, tab.row(r), b);
    }
    while (tab.bland_step(obj, allowed)) {
    }

    LpResult res;
    res.x.assign(n, 0.0);
    for (int r = 0; r < n_rows; ++r) {
        int b = tab.basis[r];
        if (b >= 0 && b < n) res.x[b] = tab.rhs(r);
    }
    for (double& xi : res.x) {
        if (xi < 0.0) {
            if (xi < -1e-7) throw std::logic_error("simplex produced a negative variable");
            xi = 0.0;
        }
    }
    res.value = 0.0;
    for (int i = 0; i < n; ++i) res.value += problem.objective[i] * res.x[i];
    return res;
}

namespace {

FractionalSolution certify(const CipInstance& inst, LpResult res, LpKind kind, bool use_box) {
    for (int k = 0; k < inst.m; ++k) {
        if (inst.row_dot(k, res.x) < inst.a[k] - kFracTol)
            throw std::logic_error("LP point violates a covering row beyond tolerance");
    }
    if (use_box) {
        for (int i = 0; i < inst.n; ++i) {
            if (inst.d[i] == kUnbounded) continue;
            if (res.x[i] > inst.d[i] + kFracTol)
                throw std::logic_error("LP point violates a multiplicity box beyond tolerance");
            if (res.x[i] > inst.d[i]) res.x[i] = inst.d[i];
        }
    }
    FractionalSolution sol;
    sol.x = std::move(res.x);
    sol.objective_values = objective_values(inst, sol.x);
    sol.lp_kind = kind;
    return sol;
}

}  // namespace

FractionalSolution solve_basic_lp(const CipInstance& inst, bool use_box) {
    LpProblem p = LpProblem::from_instance(inst, use_box);
    return certify(inst, solve_lp(p), use_box ? LpKind::BasicBoxed : LpKind::BasicUnbounded, use_box);
}

FractionalSolution solve_lp_with_cuts(const CipInstance& inst, const LpProblem& base,
                                      const std::vector<std::pair<std::vector<double>, double>>& cuts) {
    LpProblem p = base;
    for (const auto& cut : cuts) p.ge_rows.push_back(cut);
    bool use_box = false;
    for (double u : p.upper) use_box = use_box || (u != kUnbounded);
    FractionalSolution sol = certify(inst, solve_lp(p), LpKind::Kc, use_box);
    for (const auto& [row, rhs] : cuts) {
        double s = 0.0;
        for (size_t i = 0; i < row.size(); ++i) s += row[i] * sol.x[i];
        if (s < rhs - kFracTol) throw std::logic_error("LP point violates a cut beyond tolerance");
    }
    return sol;
}

}  // namespace cip
