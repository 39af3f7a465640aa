#include "orthocp/factor_set.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace orthocp {

Shape FactorSet::shape() const {
    Shape s;
    s.reserve(factors.size());
    for (const auto& f : factors) s.push_back(f.rows());
    return s;
}

double FactorSet::orthonormality_residual() const {
    double worst = 0.0;
    for (Index j = 0; j < order(); ++j) {
        if (!mode_is_orthonormal(j)) continue;
        const Eigen::MatrixXd& u = factors[static_cast<std::size_t>(j)];
        const Eigen::MatrixXd gram = u.transpose() * u;
        worst = std::max(
            worst, (gram - Eigen::MatrixXd::Identity(u.cols(), u.cols())).norm());
    }
    return worst;
}

double FactorSet::unit_norm_residual() const {
    double worst = 0.0;
    for (Index j = 0; j < order(); ++j) {
        if (mode_is_orthonormal(j)) continue;
        const Eigen::MatrixXd& u = factors[static_cast<std::size_t>(j)];
        for (Index i = 0; i < u.cols(); ++i) {
            worst = std::max(worst, std::abs(u.col(i).norm() - 1.0));
        }
    }
    return worst;
}

void FactorSet::validate() const {
    if (factors.empty()) throw std::invalid_argument("FactorSet: no factors");
    const Index r = rank();
    if (sigmas.size() != r) {
        throw std::invalid_argument("FactorSet: sigma count != rank");
    }
    for (const auto& f : factors) {
        if (f.cols() != r) {
            throw std::invalid_argument("FactorSet: inconsistent factor ranks");
        }
        if (!f.allFinite()) {
            throw std::invalid_argument("FactorSet: non-finite factor entries");
        }
    }
    if (num_orthonormal < 1 || num_orthonormal > order()) {
        throw std::invalid_argument("FactorSet: num_orthonormal out of [1, d]");
    }
    for (Index j = order() - num_orthonormal; j < order(); ++j) {
        if (factors[static_cast<std::size_t>(j)].rows() < r) {
            throw std::invalid_argument(
                "FactorSet: orthonormal factor needs rows >= rank");
        }
    }
    const double orth = orthonormality_residual();
    if (orth > 1e-10 * std::sqrt(static_cast<double>(r))) {
        throw std::invalid_argument(
            "FactorSet: orthonormality residual too large: " + std::to_string(orth));
    }
    const double unit = unit_norm_residual();
    if (unit > 1e-12) {
        throw std::invalid_argument(
            "FactorSet: unit-norm residual too large: " + std::to_string(unit));
    }
}

}  // namespace orthocp
