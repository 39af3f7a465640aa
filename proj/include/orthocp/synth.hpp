#pragma once

#include <cstdint>
#include <optional>

#include "orthocp/factor_set.hpp"
#include "orthocp/rng.hpp"
#include "orthocp/tensor.hpp"

namespace orthocp {

/// i.i.d. standard normal entries, reproducible from the seed.
DenseTensor gaussian_tensor(const Shape& shape, std::uint64_t seed);

struct GroundTruth {
    FactorSet truth;
    double noise_level = 0.0;               // beta
    std::optional<double> incoherence;      // delta, when requested
};

struct StructuredInstance {
    DenseTensor tensor;
    GroundTruth ground_truth;
};

/// Noisy low-rank instance A = B/||B|| + beta * N/||N|| with
/// B = sum_i sigma_i (x)_j u_{j,i}; sigma, raw factors and N are uniform on
/// [-1, 1], the trailing t factors orthonormalized by QR (positive-diagonal
/// convention), the leading ones column-normalized. In exact mode beta is
/// forced to 0, sigma is drawn strictly decreasing positive on [0.5, 1.5],
/// and the unnormalized B itself is returned, so the tensor equals
/// build_cp of the ground truth bit-exactly.
StructuredInstance structured_tensor(const Shape& shape, int rank, int t,
                                     double beta, std::uint64_t seed,
                                     bool exact_mode = false);

/// Unit columns with pairwise |<u_a, u_b>| <= delta, built by shrinking a
/// random draw toward its nearest orthonormal matrix until the cap holds
/// (at most 1000 corrections). Throws when infeasible.
Eigen::MatrixXd incoherent_factor(Index n, int rank, double delta,
                                  std::uint64_t seed);

/// Columnwise orthonormal n x rank matrix from a Gaussian draw (QR with
/// positive-diagonal convention).
Eigen::MatrixXd random_orthonormal(Index n, int rank, SeededRng& rng);

}  // namespace orthocp
