#include "orthocp/synth.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <stdexcept>

#include "orthocp/kernels.hpp"

namespace orthocp {

namespace {

// Sub-stream ids for the structured generator.
constexpr std::uint64_t kSigmaStream = 0;
constexpr std::uint64_t kFactorStreamBase = 1;
constexpr std::uint64_t kNoiseStream = 1u << 16;

Eigen::MatrixXd uniform_matrix(Index rows, Index cols, SeededRng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Index c = 0; c < cols; ++c) {
        for (Index r = 0; r < rows; ++r) m(r, c) = rng.uniform(-1.0, 1.0);
    }
    return m;
}

// Thin QR with the positive-diagonal convention, the deterministic
// equivalent of an `orth` call.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& raw) {
    const Index n = raw.rows();
    const Index r = raw.cols();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
    const Eigen::MatrixXd rm =
        qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    for (Index i = 0; i < r; ++i) {
        if (rm(i, i) < 0.0) q.col(i) = -q.col(i);
    }
    return q;
}

}  // namespace

DenseTensor gaussian_tensor(const Shape& shape, std::uint64_t seed) {
    DenseTensor t(shape);
    SeededRng rng(seed);
    for (Index k = 0; k < t.size(); ++k) t[k] = rng.normal();
    return t;
}

StructuredInstance structured_tensor(const Shape& shape, int rank, int t,
                                     double beta, std::uint64_t seed,
                                     bool exact_mode) {
    const Index d = static_cast<Index>(shape.size());
    if (d < 1) throw std::invalid_argument("structured_tensor: empty shape");
    if (rank < 1) throw std::invalid_argument("structured_tensor: rank < 1");
    if (t < 1 || t > d) throw std::invalid_argument("structured_tensor: t out of [1, d]");
    if (beta < 0.0) throw std::invalid_argument("structured_tensor: beta < 0");
    for (Index j = d - t; j < d; ++j) {
        if (rank > shape[static_cast<std::size_t>(j)]) {
            throw std::invalid_argument(
                "structured_tensor: rank exceeds an orthonormal mode's dimension");
        }
    }

    SeededRng root(seed);
    SeededRng sigma_rng = root.stream(kSigmaStream);

    Eigen::VectorXd sigmas(rank);
    if (exact_mode) {
        // Strictly decreasing positive weights; ties are measure zero but
        // redrawn anyway.
        bool distinct = false;
        while (!distinct) {
            for (Index i = 0; i < rank; ++i) sigmas[i] = sigma_rng.uniform(0.5, 1.5);
            std::sort(sigmas.begin(), sigmas.end(), std::greater<>());
            distinct = true;
            for (Index i = 0; i + 1 < rank; ++i) {
                if (sigmas[i] == sigmas[i + 1]) distinct = false;
            }
        }
    } else {
        for (Index i = 0; i < rank; ++i) sigmas[i] = sigma_rng.uniform(-1.0, 1.0);
    }

    FactorSet truth;
    truth.num_orthonormal = t;
    truth.factors.reserve(static_cast<std::size_t>(d));
    for (Index j = 0; j < d; ++j) {
        SeededRng frng = root.stream(kFactorStreamBase + static_cast<std::uint64_t>(j));
        Eigen::MatrixXd raw =
            uniform_matrix(shape[static_cast<std::size_t>(j)], rank, frng);
        if (j >= d - t) {
            truth.factors.push_back(orthonormalize(raw));
        } else {
            for (Index i = 0; i < rank; ++i) raw.col(i).normalize();
            truth.factors.push_back(std::move(raw));
        }
    }

    DenseTensor signal = build_cp(sigmas, truth.factors);

    StructuredInstance out;
    out.ground_truth.noise_level = exact_mode ? 0.0 : beta;
    if (exact_mode) {
        truth.sigmas = sigmas;
        out.tensor = std::move(signal);
    } else {
        const double signal_norm = fnorm(signal);
        truth.sigmas = sigmas / signal_norm;
        SeededRng nrng = root.stream(kNoiseStream);
        DenseTensor noise(shape);
        for (Index k = 0; k < noise.size(); ++k) noise[k] = nrng.uniform(-1.0, 1.0);
        const double noise_norm = fnorm(noise);
        Eigen::VectorXd data =
            signal.data() / signal_norm + (beta / noise_norm) * noise.data();
        out.tensor = DenseTensor(shape, std::move(data));
    }
    out.ground_truth.truth = std::move(truth);
    return out;
}

Eigen::MatrixXd incoherent_factor(Index n, int rank, double delta,
                                  std::uint64_t seed) {
    if (rank < 1 || rank > n) {
        throw std::invalid_argument("incoherent_factor: rank out of [1, n]");
    }
    if (delta < 0.0 || delta >= 1.0) {
        throw std::invalid_argument("incoherent_factor: delta out of [0, 1)");
    }
    SeededRng rng(seed);
    Eigen::MatrixXd u(n, rank);
    for (Index c = 0; c < rank; ++c) {
        for (Index r = 0; r < n; ++r) u(r, c) = rng.normal();
        u.col(c).normalize();
    }
    if (delta == 0.0) {
        return polar_decompose(u).orthonormal_factor;
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double worst = 0.0;
        for (Index a = 0; a < rank; ++a) {
            for (Index b = a + 1; b < rank; ++b) {
                worst = std::max(worst, std::abs(u.col(a).dot(u.col(b))));
            }
        }
        if (worst <= delta) return u;
        // Shrink toward the nearest orthonormal matrix, then renormalize.
        const Eigen::MatrixXd q = polar_decompose(u).orthonormal_factor;
        u += 0.5 * (q - u);
        for (Index c = 0; c < rank; ++c) u.col(c).normalize();
    }
    throw std::runtime_error("incoherent_factor: correction did not converge");
}

Eigen::MatrixXd random_orthonormal(Index n, int rank, SeededRng& rng) {
    if (rank < 1 || rank > n) {
        throw std::invalid_argument("random_orthonormal: rank out of [1, n]");
    }
    Eigen::MatrixXd g(n, rank);
    for (Index c = 0; c < rank; ++c) {
        for (Index r = 0; r < n; ++r) g(r, c) = rng.normal();
    }
    return orthonormalize(g);
}

}  // namespace orthocp
