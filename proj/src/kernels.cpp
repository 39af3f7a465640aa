#include "orthocp/kernels.hpp"

#include <Eigen/SVD>
#include <stdexcept>

namespace orthocp {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* who) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(who) + ": non-finite entries");
    }
}

// Flips each (left, right) singular pair so the left vector's
// largest-magnitude entry is positive; first index wins ties.
void fix_signs(Eigen::MatrixXd& left, Eigen::MatrixXd& right) {
    for (Eigen::Index i = 0; i < left.cols(); ++i) {
        Eigen::Index arg = 0;
        double best = std::abs(left(0, i));
        for (Eigen::Index k = 1; k < left.rows(); ++k) {
            const double mag = std::abs(left(k, i));
            if (mag > best) {
                best = mag;
                arg = k;
            }
        }
        if (left(arg, i) < 0.0) {
            left.col(i) = -left.col(i);
            right.col(i) = -right.col(i);
        }
    }
}

}  // namespace

SvdTruncation truncated_svd(const Eigen::MatrixXd& m, Eigen::Index rank) {
    require_finite(m, "truncated_svd");
    if (rank < 1 || rank > std::min(m.rows(), m.cols())) {
        throw std::invalid_argument("truncated_svd: rank out of range");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SvdTruncation out;
    out.left_vectors = svd.matrixU().leftCols(rank);
    out.singular_values = svd.singularValues().head(rank);
    out.right_vectors = svd.matrixV().leftCols(rank);
    fix_signs(out.left_vectors, out.right_vectors);
    return out;
}

PolarPair polar_decompose(const Eigen::MatrixXd& v) {
    require_finite(v, "polar_decompose");
    if (v.rows() < v.cols()) {
        throw std::invalid_argument("polar_decompose needs rows >= cols");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::MatrixXd& p = svd.matrixU();
    const Eigen::MatrixXd& q = svd.matrixV();
    PolarPair out;
    out.orthonormal_factor = p * q.transpose();
    Eigen::MatrixXd h = q * svd.singularValues().asDiagonal() * q.transpose();
    out.psd_factor = 0.5 * (h + h.transpose());  // exact symmetry
    return out;
}

double nuclear_norm(const Eigen::MatrixXd& v) {
    require_finite(v, "nuclear_norm");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
    return svd.singularValues().sum();
}

}  // namespace orthocp
