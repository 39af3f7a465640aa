#include "orthocp/extract.hpp"

#include <stdexcept>
#include <vector>

#include "orthocp/kernels.hpp"

namespace orthocp {

char to_char(Extraction v) {
    switch (v) {
        case Extraction::A: return 'A';
        case Extraction::B: return 'B';
        case Extraction::C: return 'C';
        case Extraction::D: return 'D';
    }
    return '?';
}

Extraction extraction_from_char(char c) {
    switch (c) {
        case 'A': case 'a': return Extraction::A;
        case 'B': case 'b': return Extraction::B;
        case 'C': case 'c': return Extraction::C;
        case 'D': case 'd': return Extraction::D;
    }
    throw std::invalid_argument("unknown extraction variant (expected A, B, C or D)");
}

namespace {

void require_finite(const Eigen::MatrixXd& m) {
    if (!m.allFinite()) {
        throw std::invalid_argument("extract: non-finite entries");
    }
}

ExtractionOutcome from_row(const Eigen::MatrixXd& m, Eigen::Index row,
                           double row_norm, Extraction variant) {
    ExtractionOutcome out;
    out.variant = variant;
    out.y = m.row(row).transpose() / row_norm;
    out.v = m * out.y;
    return out;
}

}  // namespace

ExtractionOutcome extract_a(const Eigen::MatrixXd& m) {
    require_finite(m);
    if (m.isZero(0.0)) throw std::invalid_argument("extract_a: zero matrix");
    const SvdTruncation svd = truncated_svd(m, 1);
    ExtractionOutcome out;
    out.variant = Extraction::A;
    out.y = svd.right_vectors.col(0);
    out.v = m * out.y;
    return out;
}

ExtractionOutcome extract_b(const Eigen::MatrixXd& m) {
    require_finite(m);
    Eigen::Index best = 0;
    double best_sq = m.row(0).squaredNorm();
    for (Eigen::Index k = 1; k < m.rows(); ++k) {
        const double sq = m.row(k).squaredNorm();
        if (sq > best_sq) {  // strict: first index wins ties
            best_sq = sq;
            best = k;
        }
    }
    if (best_sq == 0.0) throw std::invalid_argument("extract_b: zero matrix");
    return from_row(m, best, std::sqrt(best_sq), Extraction::B);
}

ExtractionOutcome extract_c(const Eigen::MatrixXd& m, SeededRng& rng) {
    require_finite(m);
    const Eigen::Index rows = m.rows();
    Eigen::Index k = static_cast<Eigen::Index>(
        rng.uniform_index(static_cast<std::uint64_t>(rows)));
    double norm = m.row(k).norm();
    if (norm == 0.0) {
        // Resample among the nonzero rows.
        std::vector<Eigen::Index> nonzero;
        for (Eigen::Index r = 0; r < rows; ++r) {
            if (m.row(r).squaredNorm() > 0.0) nonzero.push_back(r);
        }
        if (nonzero.empty()) {
            throw std::invalid_argument("extract_c: all rows are zero");
        }
        k = nonzero[rng.uniform_index(nonzero.size())];
        norm = m.row(k).norm();
    }
    return from_row(m, k, norm, Extraction::C);
}

ExtractionOutcome extract_d(const Eigen::MatrixXd& m, SeededRng& rng) {
    require_finite(m);
    ExtractionOutcome out;
    out.variant = Extraction::D;
    out.y = sample_unit_sphere(m.cols(), rng);
    out.v = m * out.y;
    return out;
}

ExtractionOutcome extract(Extraction variant, const Eigen::MatrixXd& m,
                          SeededRng& rng) {
    switch (variant) {
        case Extraction::A: return extract_a(m);
        case Extraction::B: return extract_b(m);
        case Extraction::C: return extract_c(m, rng);
        case Extraction::D: return extract_d(m, rng);
    }
    throw std::invalid_argument("unknown extraction variant");
}

Eigen::VectorXd sample_unit_sphere(Eigen::Index dim, SeededRng& rng) {
    if (dim < 1) throw std::invalid_argument("sample_unit_sphere: dim < 1");
    Eigen::VectorXd y(dim);
    double norm = 0.0;
    do {
        for (Eigen::Index k = 0; k < dim; ++k) y[k] = rng.normal();
        norm = y.norm();
    } while (norm == 0.0);
    return y / norm;
}

}  // namespace orthocp
