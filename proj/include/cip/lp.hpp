#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "cip/model.hpp"

namespace cip {

struct LpInfeasible : std::runtime_error {
    LpInfeasible() : std::runtime_error("infeasible") {}
};

/// minimize objective . x  subject to  row . x >= rhs for every ge_row,
/// 0 <= x_i (<= upper_i where finite).
struct LpProblem {
    std::vector<double> objective;
    std::vector<std::pair<std::vector<double>, double>> ge_rows;
    std::vector<double> upper;  ///< kUnbounded where no box

    static LpProblem from_instance(const CipInstance& inst, bool use_box);
};

struct LpResult {
    std::vector<double> x;
    double value = 0.0;
};

/// Dense two-phase tableau simplex, Bland's rule throughout, absolute pivot
/// tolerance 1e-9. Deterministic. Throws LpInfeasible when the polytope is
/// empty; throws std::logic_error on unboundedness (cannot occur for the
/// covering LPs: objective >= 0 over x >= 0).
LpResult solve_lp(const LpProblem& problem);

/// Optimal fractional solution of the basic LP of an instance, covering rows
/// only (use_box adds x_i <= d_i for every finite d_i). The returned point is
/// re-validated against the FractionalSolution contract before return.
FractionalSolution solve_basic_lp(const CipInstance& inst, bool use_box);

/// Same contract with extra >=-cuts appended to the base problem.
FractionalSolution solve_lp_with_cuts(const CipInstance& inst, const LpProblem& base,
                                      const std::vector<std::pair<std::vector<double>, double>>& cuts);

}  // namespace cip
