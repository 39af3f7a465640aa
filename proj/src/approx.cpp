#include "orthocp/approx.hpp"

#include <stdexcept>

#include "orthocp/kernels.hpp"

namespace orthocp {

namespace {

// Stream tags so extraction draws and rank-1 recursions never collide.
constexpr std::uint64_t kExtractTag = 1;
constexpr std::uint64_t kRank1Tag = 2;

Rank1Result rank1_impl(const DenseTensor& c, Extraction variant,
                       int power_iters, SeededRng rng);

double chain_value(const DenseTensor& c, const std::vector<Eigen::VectorXd>& xs) {
    DenseTensor t = c;
    for (Index j = c.order() - 1; j >= 0; --j) {
        t = contract_mode(t, j, xs[static_cast<std::size_t>(j)]);
    }
    return t.value();
}

ApproxResult approximate_impl(const DenseTensor& a, const ApproxConfig& cfg,
                              SeededRng root) {
    const Index d = a.order();
    const Index rank = cfg.rank;
    const Index t = cfg.num_orthonormal;

    ApproxResult res;
    res.factors.factors.resize(static_cast<std::size_t>(d));
    res.factors.sigmas = Eigen::VectorXd::Zero(rank);
    res.factors.num_orthonormal = static_cast<int>(t);

    if (fnorm(a) == 0.0) {
        // Degenerate input: any feasible factors with zero weights. Leading
        // modes may have fewer rows than columns, so cycle through the basis
        // there instead of truncating the identity.
        for (Index j = 0; j < d; ++j) {
            const Index nj = a.dim(j);
            if (j >= d - t) {
                res.factors.factors[static_cast<std::size_t>(j)] =
                    Eigen::MatrixXd::Identity(nj, rank);
            } else {
                Eigen::MatrixXd basis(nj, rank);
                for (Index i = 0; i < rank; ++i) {
                    basis.col(i) = Eigen::VectorXd::Unit(nj, i % nj);
                }
                res.factors.factors[static_cast<std::size_t>(j)] = std::move(basis);
            }
        }
        res.degenerate_input = true;
        return res;
    }

    const SvdTruncation svd = truncated_svd(unfold_mode(a, d - 1), rank);
    res.factors.factors[static_cast<std::size_t>(d - 1)] = svd.left_vectors;

    {
        LevelDiagnostics top;
        top.mode = d - 1;
        for (Index i = 0; i < rank; ++i) {
            top.uv.push_back(svd.singular_values[i]);
            top.v.emplace_back(svd.singular_values[i] * svd.left_vectors.col(i));
        }
        res.levels.push_back(std::move(top));
    }

    std::vector<DenseTensor> b;  // b[i] holds the running contraction per component
    b.reserve(static_cast<std::size_t>(rank));
    for (Index i = 0; i < rank; ++i) {
        b.push_back(contract_mode(a, d - 1, svd.left_vectors.col(i)));
    }

    for (Index j = d - 2; j >= d - t; --j) {
        const Index nj = a.dim(j);
        Eigen::MatrixXd gathered(nj, rank);
        LevelDiagnostics diag;
        diag.mode = j;
        for (Index i = 0; i < rank; ++i) {
            if (j > 0) {
                const Eigen::MatrixXd m = unfold_mode(b[static_cast<std::size_t>(i)], j);
                if (m.isZero(0.0)) {
                    // Degenerate component: zero column, unit witness.
                    gathered.col(i).setZero();
                    diag.v.emplace_back(Eigen::VectorXd::Zero(nj));
                    diag.y.emplace_back(Eigen::VectorXd::Unit(m.cols(), 0));
                } else {
                    SeededRng stream = root.stream(kExtractTag)
                                           .stream(static_cast<std::uint64_t>(j))
                                           .stream(static_cast<std::uint64_t>(i));
                    ExtractionOutcome out = extract(cfg.variant, m, stream);
                    gathered.col(i) = out.v;
                    diag.v.push_back(std::move(out.v));
                    diag.y.push_back(std::move(out.y));
                }
            } else {
                // Order-1 component: the contraction itself is the vector.
                gathered.col(i) = b[static_cast<std::size_t>(i)].data();
                diag.v.emplace_back(gathered.col(i));
                diag.y.emplace_back(Eigen::VectorXd::Ones(1));
            }
        }
        const PolarPair polar = polar_decompose(gathered);
        res.factors.factors[static_cast<std::size_t>(j)] = polar.orthonormal_factor;
        for (Index i = 0; i < rank; ++i) {
            diag.uv.push_back(polar.orthonormal_factor.col(i).dot(gathered.col(i)));
        }
        res.levels.push_back(std::move(diag));
        for (Index i = 0; i < rank; ++i) {
            b[static_cast<std::size_t>(i)] =
                contract_mode(b[static_cast<std::size_t>(i)], j,
                              polar.orthonormal_factor.col(i));
        }
    }

    if (t < d) {
        const Index lead = d - t;  // leading modes handled by rank-1 approximation
        for (Index j = 0; j < lead; ++j) {
            res.factors.factors[static_cast<std::size_t>(j)] =
                Eigen::MatrixXd::Zero(a.dim(j), rank);
        }
        for (Index i = 0; i < rank; ++i) {
            const DenseTensor& c = b[static_cast<std::size_t>(i)];
            if (fnorm(c) == 0.0) {
                for (Index j = 0; j < lead; ++j) {
                    res.factors.factors[static_cast<std::size_t>(j)].col(i) =
                        Eigen::VectorXd::Unit(a.dim(j), 0);
                }
                res.factors.sigmas[i] = 0.0;
                continue;
            }
            SeededRng stream =
                root.stream(kRank1Tag).stream(static_cast<std::uint64_t>(i));
            Rank1Result r1 =
                rank1_impl(c, cfg.variant, cfg.rank1_power_iters, stream);
            for (Index j = 0; j < lead; ++j) {
                res.factors.factors[static_cast<std::size_t>(j)].col(i) =
                    r1.vectors[static_cast<std::size_t>(j)];
            }
            res.factors.sigmas[i] = r1.value;
        }
    } else {
        // The loop contracted every mode; what is left per component is the
        // scalar <A, (x)_j u_{j,i}>.
        for (Index i = 0; i < rank; ++i) {
            res.factors.sigmas[i] = b[static_cast<std::size_t>(i)].value();
        }
    }

    res.objective = res.factors.sigmas.squaredNorm();
    return res;
}

Rank1Result rank1_impl(const DenseTensor& c, Extraction variant,
                       int power_iters, SeededRng rng) {
    const Index m = c.order();
    Rank1Result out;
    if (m == 1) {
        const double norm = c.data().norm();
        out.vectors.emplace_back(c.data() / norm);
        out.value = norm;
    } else if (m == 2) {
        const SvdTruncation svd = truncated_svd(unfold_mode(c, 0), 1);
        out.vectors.emplace_back(svd.left_vectors.col(0));
        out.vectors.emplace_back(svd.right_vectors.col(0));
        out.value = svd.singular_values[0];
    } else {
        ApproxConfig sub;
        sub.rank = 1;
        sub.num_orthonormal = static_cast<int>(m);
        sub.variant = variant;
        sub.rank1_power_iters = 0;
        ApproxResult inner = approximate_impl(c, sub, rng);
        out.vectors.reserve(static_cast<std::size_t>(m));
        for (const auto& f : inner.factors.factors) {
            out.vectors.emplace_back(f.col(0));
        }
        out.value = inner.factors.sigmas[0];
    }

    for (int sweep = 0; sweep < power_iters; ++sweep) {
        for (Index j = 0; j < m; ++j) {
            DenseTensor t = c;
            for (Index k = m - 1; k >= 0; --k) {
                if (k == j) continue;
                t = contract_mode(t, k, out.vectors[static_cast<std::size_t>(k)]);
            }
            const double norm = t.data().norm();
            if (norm > 0.0) {
                out.vectors[static_cast<std::size_t>(j)] = t.data() / norm;
            }
        }
    }
    if (power_iters > 0) {
        out.value = chain_value(c, out.vectors);
    }
    return out;
}

}  // namespace

void ApproxConfig::validate_for(const Shape& shape) const {
    const Index d = static_cast<Index>(shape.size());
    if (d < 2) throw std::invalid_argument("approximate needs order >= 2");
    if (num_orthonormal < 1 || num_orthonormal > d) {
        throw std::invalid_argument("num_orthonormal must be in [1, order]");
    }
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    if (rank1_power_iters < 0) {
        throw std::invalid_argument("rank1_power_iters must be >= 0");
    }
    for (Index j = d - num_orthonormal; j < d; ++j) {
        if (rank > shape[static_cast<std::size_t>(j)]) {
            throw std::invalid_argument(
                "rank exceeds the dimension of an orthonormal mode");
        }
    }
    Index cols = 1;
    for (Index j = 0; j + 1 < d; ++j) cols *= shape[static_cast<std::size_t>(j)];
    if (rank > cols) {
        throw std::invalid_argument(
            "rank exceeds the trailing unfolding's column count");
    }
}

ApproxResult approximate(const DenseTensor& a, const ApproxConfig& cfg) {
    cfg.validate_for(a.shape());
    if (!a.data().allFinite()) {
        throw std::invalid_argument("approximate: non-finite tensor entries");
    }
    return approximate_impl(a, cfg, SeededRng(cfg.seed));
}

Rank1Result rank1_approx(const DenseTensor& c, const ApproxConfig& cfg) {
    if (c.order() < 1) {
        throw std::invalid_argument("rank1_approx needs order >= 1");
    }
    if (!c.data().allFinite()) {
        throw std::invalid_argument("rank1_approx: non-finite tensor entries");
    }
    if (fnorm(c) == 0.0) {
        throw std::invalid_argument("rank1_approx: zero tensor");
    }
    return rank1_impl(c, cfg.variant, cfg.rank1_power_iters, SeededRng(cfg.seed));
}

}  // namespace orthocp
