#pragma once

#include <utility>
#include <vector>

#include "orthocp/factor_set.hpp"
#include "orthocp/tensor.hpp"

namespace orthocp {

struct AlsConfig {
    int max_iters = 2000;
    double rel_change_tol = 1e-5;  // on sum_j ||U_j^k+1 - U_j^k||_F / ||U_j^k||_F
    double regularizer_eps = 1e-8;  // division guard for unit-norm columns
};

struct RefineTrace {
    std::vector<double> residuals;       // ||A - build_cp||_F after each sweep
    std::vector<double> objectives;      // sum_i sigma_i^2 after each sweep
    std::vector<double> factor_changes;  // stopping metric per sweep
    double initial_residual = 0.0;
    int iterations = 0;
    double wall_ms = 0.0;
};

/// Block-cyclic alternating refinement. Each sweep visits modes 0..d-1:
/// an orthonormal mode is replaced by the polar factor of W_j * diag(sigma)
/// (the exact minimizer of the residual over the orthonormal block with the
/// weights held fixed); a unit-norm mode takes the jointly optimal
/// (u, sigma) = (w/||w||, ||w||) per column, keeping the previous column
/// when ||w|| falls below the guard. The sweep closes with
/// sigma_i = <A, x_j u_{j,i}>, so the recorded residual is nonincreasing.
/// Stops when the factor-change metric drops to rel_change_tol or after
/// max_iters sweeps.
std::pair<FactorSet, RefineTrace> refine(const DenseTensor& a,
                                         const FactorSet& init,
                                         const AlsConfig& cfg);

}  // namespace orthocp
