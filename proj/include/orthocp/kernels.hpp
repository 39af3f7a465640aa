#pragma once

#include <Eigen/Core>

namespace orthocp {

/// Leading part of a singular value decomposition. Left/right blocks are
/// columnwise orthonormal, singular values sorted nonincreasing.
struct SvdTruncation {
    Eigen::MatrixXd left_vectors;     // m x R
    Eigen::VectorXd singular_values;  // R, nonincreasing, >= 0
    Eigen::MatrixXd right_vectors;    // n x R
};

/// Best rank-R factorization in the Frobenius sense. Sign convention: each
/// left vector is flipped (together with its right partner) so that its
/// largest-magnitude entry is positive, ties broken by lowest index; this
/// makes repeated runs bit-identical.
SvdTruncation truncated_svd(const Eigen::MatrixXd& m, Eigen::Index rank);

/// V = U * H with U columnwise orthonormal and H symmetric positive
/// semidefinite.
struct PolarPair {
    Eigen::MatrixXd orthonormal_factor;  // m x n
    Eigen::MatrixXd psd_factor;          // n x n
};

/// Polar decomposition of an m x n matrix, m >= n, built from the reduced
/// SVD V = P L Q^T as U = P Q^T, H = Q L Q^T. For rank-deficient V the SVD
/// completion keeps U orthonormal and deterministic.
PolarPair polar_decompose(const Eigen::MatrixXd& v);

/// Sum of singular values.
double nuclear_norm(const Eigen::MatrixXd& v);

}  // namespace orthocp
