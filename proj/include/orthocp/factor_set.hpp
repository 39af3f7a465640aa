#pragma once

#include <Eigen/Core>
#include <vector>

#include "orthocp/tensor.hpp"

namespace orthocp {

/// CP factor matrices U_0..U_{d-1} with weights. The trailing
/// `num_orthonormal` factors are columnwise orthonormal; the leading ones
/// have unit-norm columns.
struct FactorSet {
    std::vector<Eigen::MatrixXd> factors;  // factors[j] is n_j x R
    Eigen::VectorXd sigmas;                // R weights
    int num_orthonormal = 0;               // t, counted from the last mode

    Index order() const { return static_cast<Index>(factors.size()); }
    Index rank() const { return factors.empty() ? 0 : factors.front().cols(); }
    bool mode_is_orthonormal(Index j) const {
        return j >= order() - num_orthonormal;
    }

    Shape shape() const;

    /// max over orthonormal modes of ||U^T U - I||_F.
    double orthonormality_residual() const;
    /// max over leading modes and columns of | ||u|| - 1 |.
    double unit_norm_residual() const;

    /// Throws std::invalid_argument on structural inconsistency or when the
    /// feasibility residuals exceed their tolerances (1e-10 * sqrt(R) for
    /// orthonormality, 1e-12 for unit columns).
    void validate() const;
};

}  // namespace orthocp
