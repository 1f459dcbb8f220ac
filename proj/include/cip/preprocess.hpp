#pragma once

#include <utility>
#include <vector>

#include "cip/model.hpp"

namespace cip {

/// Record of the normalization transform. Replaying it on the original
/// instance reproduces the normalized one bit-for-bit: clamp the listed
/// entries to a_k, divide each row (and a_k) by row_divisor[k], then divide
/// the whole system by global_divisor.
struct NormalizationCertificate {
    std::vector<double> row_divisors;        ///< 1.0 where the row was untouched
    double global_divisor = 1.0;             ///< the Delta_1 step, 1.0 if unused
    std::vector<std::pair<int, int>> clamped;  ///< (k, i) entries clamped to a_k
};

/// Rescales an instance so that a_min >= 1 and Delta_1 >= 1 while keeping the
/// integral solution set unchanged and gamma' <= gamma. Steps, in order:
///   1. clamp A_ki <- a_k wherever A_ki > a_k;
///   2. rows with a_k < 1: divide the row and a_k by a_k (a_k / a_k is
///      exactly 1, so the new RHS is exact);
///   3. if Delta_1 < 1 after that, divide the whole system by Delta_1.
/// Steps 2 and 3 trigger on strict inequality; at equality the scale would be
/// the identity. Throws std::invalid_argument on a degenerate matrix.
std::pair<CipInstance, NormalizationCertificate> normalize(const CipInstance& inst);

/// Applies a certificate to an instance (used to audit normalize).
CipInstance apply_certificate(const CipInstance& inst, const NormalizationCertificate& cert);

}  // namespace cip
