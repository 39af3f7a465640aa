#pragma once

#include <cstdint>
#include <vector>

#include "orthocp/extract.hpp"
#include "orthocp/factor_set.hpp"
#include "orthocp/tensor.hpp"

namespace orthocp {

struct ApproxConfig {
    int rank = 1;             // R, number of CP components
    int num_orthonormal = 1;  // t, trailing orthonormal modes, 1 <= t <= d
    Extraction variant = Extraction::A;
    std::uint64_t seed = 0;
    int rank1_power_iters = 0;  // alternating polish sweeps after rank1_approx

    /// Throws std::invalid_argument when the configuration is infeasible for
    /// the given shape (t out of range, R exceeding an orthonormal mode's
    /// dimension or the trailing unfolding's column count).
    void validate_for(const Shape& shape) const;
};

/// Per-mode diagnostics recorded while the orthonormal factors are built:
/// the products <u_{j,i}, v_{j,i}> drive the chain bound, and the witnesses
/// y_{j,i} the contraction identity. At the top mode v_{d-1,i} is
/// lambda_i * u_{d-1,i} and there is no witness.
struct LevelDiagnostics {
    Index mode = 0;
    std::vector<double> uv;
    std::vector<Eigen::VectorXd> v;
    std::vector<Eigen::VectorXd> y;
};

struct ApproxResult {
    FactorSet factors;
    double objective = 0.0;  // G = sum_i sigma_i^2
    std::vector<LevelDiagnostics> levels;  // modes d-1 down to d-t
    bool degenerate_input = false;         // zero tensor handed in
};

/// One-pass approximation for the orthogonally-constrained CP objective:
/// the trailing factor comes from a truncated SVD of the last-mode
/// unfolding, the remaining orthonormal factors from per-component vector
/// extraction followed by a polar-decomposition gathering step, and the
/// leading (unit-norm) factors from rank-1 approximations. Requires
/// order >= 2.
ApproxResult approximate(const DenseTensor& a, const ApproxConfig& cfg);

struct Rank1Result {
    std::vector<Eigen::VectorXd> vectors;  // one unit vector per mode
    double value = 0.0;                    // <C, x_0 x ... x x_{m-1}>
};

/// Best rank-1 approximation: order 1 normalizes, order 2 takes the leading
/// singular pair, higher orders recurse into approximate() with R = 1 and
/// every mode orthonormal, followed by cfg.rank1_power_iters alternating
/// normalization sweeps (each sweep never decreases the value). Throws on a
/// zero tensor.
Rank1Result rank1_approx(const DenseTensor& c, const ApproxConfig& cfg);

}  // namespace orthocp
