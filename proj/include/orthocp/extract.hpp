#pragma once

#include <Eigen/Core>
#include <string>

#include "orthocp/rng.hpp"

namespace orthocp {

/// The four vector-extraction procedures. A and B are deterministic, C and
/// D randomized.
enum class Extraction { A, B, C, D };

char to_char(Extraction v);
Extraction extraction_from_char(char c);

/// Result of extracting a representative vector from a matrix M: v = M * y
/// with ||y|| = 1. The witness y is retained for the contraction-identity
/// diagnostics.
struct ExtractionOutcome {
    Eigen::VectorXd v;  // rows(M)
    Eigen::VectorXd y;  // cols(M), unit norm
    Extraction variant = Extraction::A;
};

/// y = leading right unit singular vector (deterministic sign convention
/// from truncated_svd), so ||v|| is the largest singular value. Guarantees
/// ||v||^2 >= ||M||_F^2 / rows. Throws on a zero matrix.
ExtractionOutcome extract_a(const Eigen::MatrixXd& m);

/// y = the row of M with the largest norm, normalized; first index wins
/// ties. Guarantees ||v||^2 >= ||M||_F^2 / rows. Throws on a zero matrix.
ExtractionOutcome extract_b(const Eigen::MatrixXd& m);

/// y = a uniformly random row, normalized, so E||v||^2 >= ||M||_F^2 / rows.
/// A selected all-zero row is resampled among the nonzero rows; throws when
/// every row is zero.
ExtractionOutcome extract_c(const Eigen::MatrixXd& m, SeededRng& rng);

/// y uniform on the unit sphere (normalized Gaussian vector), so
/// E||v||^2 = ||M||_F^2 / cols.
ExtractionOutcome extract_d(const Eigen::MatrixXd& m, SeededRng& rng);

ExtractionOutcome extract(Extraction variant, const Eigen::MatrixXd& m,
                          SeededRng& rng);

/// Uniform draw from the unit sphere in R^dim.
Eigen::VectorXd sample_unit_sphere(Eigen::Index dim, SeededRng& rng);

}  // namespace orthocp
