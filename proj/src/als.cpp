#include "orthocp/als.hpp"

#include <chrono>
#include <stdexcept>

#include "orthocp/kernels.hpp"

namespace orthocp {

namespace {

// Column i of W_j: the tensor contracted with every other mode's column i.
Eigen::VectorXd contracted_column(const DenseTensor& a,
                                  const std::vector<Eigen::MatrixXd>& factors,
                                  Index skip_mode, Index col) {
    DenseTensor t = a;
    for (Index k = a.order() - 1; k >= 0; --k) {
        if (k == skip_mode) continue;
        t = contract_mode(t, k, factors[static_cast<std::size_t>(k)].col(col));
    }
    return t.data();
}

double cp_residual(const DenseTensor& a, const FactorSet& f) {
    const DenseTensor model = build_cp(f.sigmas, f.factors);
    return (a.data() - model.data()).norm();
}

}  // namespace

std::pair<FactorSet, RefineTrace> refine(const DenseTensor& a,
                                         const FactorSet& init,
                                         const AlsConfig& cfg) {
    if (cfg.max_iters < 1) throw std::invalid_argument("refine: max_iters < 1");
    if (cfg.rel_change_tol <= 0.0) throw std::invalid_argument("refine: tol <= 0");
    if (cfg.regularizer_eps < 0.0) throw std::invalid_argument("refine: eps < 0");
    init.validate();
    if (init.shape() != a.shape()) {
        throw std::invalid_argument("refine: factor shapes do not match tensor");
    }
    if (!a.data().allFinite()) {
        throw std::invalid_argument("refine: non-finite tensor entries");
    }

    const auto start = std::chrono::steady_clock::now();
    const Index d = a.order();
    const Index rank = init.rank();

    FactorSet cur = init;
    RefineTrace trace;
    trace.initial_residual = cp_residual(a, cur);

    for (int sweep = 1; sweep <= cfg.max_iters; ++sweep) {
        const std::vector<Eigen::MatrixXd> previous = cur.factors;

        for (Index j = 0; j < d; ++j) {
            Eigen::MatrixXd w(a.dim(j), rank);
            for (Index i = 0; i < rank; ++i) {
                w.col(i) = contracted_column(a, cur.factors, j, i);
            }
            if (!w.allFinite()) {
                throw std::runtime_error(
                    "refine: non-finite contraction at sweep " +
                    std::to_string(sweep) + ", mode " + std::to_string(j));
            }
            if (cur.mode_is_orthonormal(j)) {
                // Procrustes step on the weighted gather; exact block
                // minimizer of the residual with sigma held fixed.
                const PolarPair polar =
                    polar_decompose(w * cur.sigmas.asDiagonal());
                cur.factors[static_cast<std::size_t>(j)] =
                    polar.orthonormal_factor;
            } else {
                for (Index i = 0; i < rank; ++i) {
                    const double norm = w.col(i).norm();
                    if (norm >= cfg.regularizer_eps && norm > 0.0) {
                        cur.factors[static_cast<std::size_t>(j)].col(i) =
                            w.col(i) / norm;
                        cur.sigmas[i] = norm;
                    }
                    // Below the guard the previous column stays; the block
                    // objective is unchanged and feasibility is preserved.
                }
            }
        }

        for (Index i = 0; i < rank; ++i) {
            cur.sigmas[i] = rank1_inner(a, cur.factors, i);
        }
        if (!cur.sigmas.allFinite()) {
            throw std::runtime_error("refine: non-finite weights at sweep " +
                                     std::to_string(sweep));
        }

        double change = 0.0;
        for (Index j = 0; j < d; ++j) {
            const auto& prev = previous[static_cast<std::size_t>(j)];
            change += (cur.factors[static_cast<std::size_t>(j)] - prev).norm() /
                      prev.norm();
        }

        trace.residuals.push_back(cp_residual(a, cur));
        trace.objectives.push_back(cur.sigmas.squaredNorm());
        trace.factor_changes.push_back(change);
        trace.iterations = sweep;

        if (change <= cfg.rel_change_tol) break;
    }

    trace.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    return {std::move(cur), std::move(trace)};
}

}  // namespace orthocp
