#pragma once

#include <span>
#include <vector>

#include "orthocp/factor_set.hpp"
#include "orthocp/tensor.hpp"

namespace orthocp {

/// G = sum_i <A, (x)_j u_{j,i}>^2.
double objective_G(const DenseTensor& a, const FactorSet& f);

/// ||A - build_cp(sigmas, factors)||_F.
double residual_norm(const DenseTensor& a, const FactorSet& f);

/// Rank-1 approximation quality factor for an order-m block with the given
/// dims (sorted internally): zeta(0) = zeta(1) = 1, zeta(2) = sqrt(n_1),
/// and sqrt(prod_{j=1}^{m-2} n_j) * sqrt(n_1) for m >= 3.
double zeta(std::span<const Index> dims);

/// A-priori ratio between the achieved objective and the truncated spectral
/// surrogate sum_{i<=R} lambda_i(A_(d-1))^2:
///   t = d:  1 / (R^{d-1} * prod_{j=1..d-2} n_j)          (0-based modes)
///   t < d:  1 / (R^{t-1} * zeta(d-t)^2 * prod_{j=d-t..d-2} n_j)
double theoretical_ratio(const Shape& shape, int rank, int num_orthonormal);

/// The shape/R/t-derived constants feeding the ratio.
struct BoundSpec {
    Shape shape;
    int rank = 0;
    int num_orthonormal = 0;
    std::vector<double> betas;   // per-mode chain factors (beta_0 = 1, 1/n_j inside)
    std::vector<double> zetas;   // zeta(m) for m = 0..d
    double ratio = 0.0;
};
BoundSpec make_bound_spec(const Shape& shape, int rank, int num_orthonormal);

/// Minimum-cost perfect assignment on a square cost matrix; result[a] is the
/// column matched to row a.
std::vector<Index> hungarian_assign(const Eigen::MatrixXd& cost);

enum class PermutationMode {
    PerMode,  // one permutation per mode (default)
    Global,   // one permutation shared by all modes, from the summed costs
};

/// Factor-recovery error sum_j ||U_j - U_j^est Pi_j||_F / ||U_j||_F, made
/// invariant to column permutations and per-column sign flips: the matching
/// cost is c(a,b) = min(||u_a - v_b||^2, ||u_a + v_b||^2) and signs are
/// aligned per column before the norm is taken.
double relative_error(const FactorSet& truth, const FactorSet& est,
                      PermutationMode mode = PermutationMode::PerMode);

/// sum_{i<=R} lambda_i^2 of the last-mode unfolding.
double lambda_sq_sum(const DenseTensor& a, int rank);

}  // namespace orthocp
