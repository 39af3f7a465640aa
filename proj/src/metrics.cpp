#include "orthocp/metrics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace orthocp {

double objective_G(const DenseTensor& a, const FactorSet& f) {
    if (f.shape() != a.shape()) {
        throw std::invalid_argument("objective_G: shape mismatch");
    }
    double g = 0.0;
    for (Index i = 0; i < f.rank(); ++i) {
        const double s = rank1_inner(a, f.factors, i);
        g += s * s;
    }
    return g;
}

double residual_norm(const DenseTensor& a, const FactorSet& f) {
    if (f.shape() != a.shape()) {
        throw std::invalid_argument("residual_norm: shape mismatch");
    }
    const DenseTensor model = build_cp(f.sigmas, f.factors);
    return (a.data() - model.data()).norm();
}

double zeta(std::span<const Index> dims) {
    const std::size_t m = dims.size();
    if (m <= 1) return 1.0;
    Shape sorted(dims.begin(), dims.end());
    std::sort(sorted.begin(), sorted.end());
    if (m == 2) return std::sqrt(static_cast<double>(sorted[0]));
    double prod = static_cast<double>(sorted[0]);  // the extra sqrt(n_1) factor
    for (std::size_t j = 0; j < m - 2; ++j) prod *= static_cast<double>(sorted[j]);
    return std::sqrt(prod);
}

double theoretical_ratio(const Shape& shape, int rank, int num_orthonormal) {
    const Index d = static_cast<Index>(shape.size());
    if (d < 2) throw std::invalid_argument("theoretical_ratio: order < 2");
    if (num_orthonormal < 1 || num_orthonormal > d) {
        throw std::invalid_argument("theoretical_ratio: t out of [1, d]");
    }
    if (rank < 1) throw std::invalid_argument("theoretical_ratio: rank < 1");
    const double r = static_cast<double>(rank);
    if (num_orthonormal == d) {
        double denom = std::pow(r, static_cast<double>(d - 1));
        for (Index j = 1; j <= d - 2; ++j) {
            denom *= static_cast<double>(shape[static_cast<std::size_t>(j)]);
        }
        return 1.0 / denom;
    }
    const Index lead = d - num_orthonormal;
    const double z = zeta(std::span<const Index>(shape.data(),
                                                 static_cast<std::size_t>(lead)));
    double denom = std::pow(r, static_cast<double>(num_orthonormal - 1)) * z * z;
    for (Index j = lead; j <= d - 2; ++j) {
        denom *= static_cast<double>(shape[static_cast<std::size_t>(j)]);
    }
    return 1.0 / denom;
}

BoundSpec make_bound_spec(const Shape& shape, int rank, int num_orthonormal) {
    BoundSpec spec;
    spec.shape = shape;
    spec.rank = rank;
    spec.num_orthonormal = num_orthonormal;
    const Index d = static_cast<Index>(shape.size());
    spec.betas.resize(static_cast<std::size_t>(d), 1.0);
    for (Index j = 1; j <= d - 2; ++j) {
        spec.betas[static_cast<std::size_t>(j)] =
            1.0 / static_cast<double>(shape[static_cast<std::size_t>(j)]);
    }
    for (Index m = 0; m <= d; ++m) {
        spec.zetas.push_back(zeta(
            std::span<const Index>(shape.data(), static_cast<std::size_t>(m))));
    }
    spec.ratio = theoretical_ratio(shape, rank, num_orthonormal);
    return spec;
}

std::vector<Index> hungarian_assign(const Eigen::MatrixXd& cost) {
    if (cost.rows() != cost.cols() || cost.rows() < 1) {
        throw std::invalid_argument("hungarian_assign: square matrix required");
    }
    if (!cost.allFinite()) {
        throw std::invalid_argument("hungarian_assign: non-finite costs");
    }
    const Index n = cost.rows();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Potentials-and-augmenting-paths assignment, O(n^3).
    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<Index> match(static_cast<std::size_t>(n) + 1, 0);  // column -> row
    std::vector<Index> way(static_cast<std::size_t>(n) + 1, 0);

    for (Index i = 1; i <= n; ++i) {
        match[0] = i;
        Index j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n) + 1, kInf);
        std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            const Index i0 = match[static_cast<std::size_t>(j0)];
            double delta = kInf;
            Index j1 = 0;
            for (Index j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) -
                                   u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (Index j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const Index j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<Index> perm(static_cast<std::size_t>(n), 0);
    for (Index j = 1; j <= n; ++j) {
        perm[static_cast<std::size_t>(match[static_cast<std::size_t>(j)]) - 1] = j - 1;
    }
    return perm;
}

namespace {

// c(a, b) = min over sign of ||u_a -+ v_b||^2.
Eigen::MatrixXd sign_invariant_cost(const Eigen::MatrixXd& truth,
                                    const Eigen::MatrixXd& est) {
    const Index r = truth.cols();
    Eigen::MatrixXd cost(r, r);
    for (Index a = 0; a < r; ++a) {
        for (Index b = 0; b < r; ++b) {
            cost(a, b) = std::min((truth.col(a) - est.col(b)).squaredNorm(),
                                  (truth.col(a) + est.col(b)).squaredNorm());
        }
    }
    return cost;
}

}  // namespace

double relative_error(const FactorSet& truth, const FactorSet& est,
                      PermutationMode mode) {
    if (truth.order() != est.order() || truth.rank() != est.rank()) {
        throw std::invalid_argument("relative_error: rank or order mismatch");
    }
    if (truth.shape() != est.shape()) {
        throw std::invalid_argument("relative_error: shape mismatch");
    }
    const Index d = truth.order();

    std::vector<Eigen::MatrixXd> costs;
    costs.reserve(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) {
        costs.push_back(sign_invariant_cost(truth.factors[static_cast<std::size_t>(j)],
                                            est.factors[static_cast<std::size_t>(j)]));
    }

    std::vector<Index> global_perm;
    if (mode == PermutationMode::Global) {
        Eigen::MatrixXd summed = costs.front();
        for (std::size_t j = 1; j < costs.size(); ++j) summed += costs[j];
        global_perm = hungarian_assign(summed);
    }

    double total = 0.0;
    for (Index j = 0; j < d; ++j) {
        const auto& cost = costs[static_cast<std::size_t>(j)];
        const std::vector<Index> perm = (mode == PermutationMode::Global)
                                            ? global_perm
                                            : hungarian_assign(cost);
        double sq = 0.0;
        for (Index a = 0; a < truth.rank(); ++a) {
            sq += cost(a, perm[static_cast<std::size_t>(a)]);
        }
        total += std::sqrt(sq) /
                 truth.factors[static_cast<std::size_t>(j)].norm();
    }
    return total;
}

double lambda_sq_sum(const DenseTensor& a, int rank) {
    const Index d = a.order();
    if (d < 1) throw std::invalid_argument("lambda_sq_sum: order < 1");
    const Eigen::MatrixXd unfolding = unfold_mode(a, d - 1);
    if (rank < 1 || rank > std::min(unfolding.rows(), unfolding.cols())) {
        throw std::invalid_argument("lambda_sq_sum: rank out of range");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(unfolding);
    return svd.singularValues().head(rank).squaredNorm();
}

}  // namespace orthocp
