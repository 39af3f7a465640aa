// Acceptance suite: runs the ten gate criteria end to end and prints one
// pass/fail line per criterion. Criterion 10 invokes the CLI binary, whose
// path arrives via --cli.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "orthocp/als.hpp"
#include "orthocp/approx.hpp"
#include "orthocp/extract.hpp"
#include "orthocp/kernels.hpp"
#include "orthocp/metrics.hpp"
#include "orthocp/synth.hpp"
#include "orthocp/tensor.hpp"

using namespace orthocp;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    bool pass = true;
    std::ostringstream note;
    void fail(const std::string& why) {
        pass = false;
        if (note.tellp() > 0) note << "; ";
        note << why;
    }
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols,
                              SeededRng& rng) {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = rng.normal();
    }
    return m;
}

struct RunningMean {
    double mean = 0.0;
    double m2 = 0.0;
    long n = 0;
    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / n;
        m2 += delta * (x - mean);
    }
    double stderror() const {
        return n > 1 ? std::sqrt(m2 / (n - 1) / n) : 0.0;
    }
};

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// ---------------------------------------------------------------------------
// 1. Polar/SVD kernel suite

Criterion criterion1() {
    Criterion c;
    Timer timer;
    SeededRng seeds(101);
    int violations = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index rows =
            2 + static_cast<Eigen::Index>(seeds.uniform_index(39));
        const Eigen::Index cols =
            1 + static_cast<Eigen::Index>(seeds.uniform_index(
                    static_cast<std::uint64_t>(std::min<Eigen::Index>(rows, 12))));
        SeededRng rng = seeds.stream(static_cast<std::uint64_t>(trial));
        const Eigen::MatrixXd v = random_matrix(rows, cols, rng);
        const PolarPair p = polar_decompose(v);
        const double recon =
            (p.orthonormal_factor * p.psd_factor - v).norm() /
            std::max(1e-300, v.norm());
        const double diag_min = p.psd_factor.diagonal().minCoeff();
        const double uv = (p.orthonormal_factor.array() * v.array()).sum();
        const double nuc = nuclear_norm(v);
        if (recon > 1e-10) ++violations;
        if (diag_min < -1e-12) ++violations;
        if (std::abs(uv - nuc) > 1e-10 * std::max(1.0, nuc)) ++violations;
    }
    if (violations > 0) c.fail(std::to_string(violations) + " violations");
    const double secs = timer.seconds();
    if (secs >= 5.0) c.fail("runtime " + std::to_string(secs) + "s >= 5s");
    c.note << "200 matrices, " << violations << " violations, "
           << static_cast<int>(secs * 1000) << " ms";
    return c;
}

// ---------------------------------------------------------------------------
// 2. Extraction bounds

Criterion criterion2() {
    Criterion c;
    Timer timer;
    SeededRng seeds(202);
    std::vector<Eigen::MatrixXd> panel;
    int violations_ab = 0;
    int violations_c = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::Index rows =
            2 + static_cast<Eigen::Index>(seeds.uniform_index(39));
        const Eigen::Index cols =
            2 + static_cast<Eigen::Index>(seeds.uniform_index(11));
        SeededRng rng = seeds.stream(1000 + static_cast<std::uint64_t>(trial));
        const Eigen::MatrixXd m = random_matrix(rows, cols, rng);
        const double bound = m.squaredNorm() / static_cast<double>(rows);

        if (extract_a(m).v.squaredNorm() < bound * (1 - 1e-12)) ++violations_ab;
        if (extract_b(m).v.squaredNorm() < bound * (1 - 1e-12)) ++violations_ab;

        // exact enumeration of variant C's expectation
        double expect = 0.0;
        for (Eigen::Index s = 0; s < rows; ++s) {
            const Eigen::VectorXd y = m.row(s).transpose() / m.row(s).norm();
            expect += (m * y).squaredNorm();
        }
        expect /= static_cast<double>(rows);
        if (expect < bound * (1 - 1e-12)) ++violations_c;

        if (trial % 63 == 0) panel.push_back(m);  // 8-matrix panel for D
    }
    if (violations_ab > 0) {
        c.fail("A/B bound violated " + std::to_string(violations_ab) + "x");
    }
    if (violations_c > 0) {
        c.fail("C expectation bound violated " + std::to_string(violations_c) + "x");
    }

    int violations_d = 0;
    for (std::size_t p = 0; p < panel.size(); ++p) {
        const Eigen::MatrixXd& m = panel[p];
        SeededRng rng = seeds.stream(77000 + p);
        RunningMean stat;
        for (int k = 0; k < 100000; ++k) {
            stat.add(extract_d(m, rng).v.squaredNorm());
        }
        const double target = m.squaredNorm() / static_cast<double>(m.cols());
        if (std::abs(stat.mean - target) > 3.0 * stat.stderror()) ++violations_d;
    }
    if (violations_d > 0) {
        c.fail("D Monte-Carlo mean outside 3 SE on " +
               std::to_string(violations_d) + " panel matrices");
    }

    const double secs = timer.seconds();
    if (secs >= 30.0) c.fail("runtime " + std::to_string(secs) + "s >= 30s");
    c.note << "500 matrices + " << panel.size() << "-matrix Monte Carlo panel, "
           << violations_ab + violations_c + violations_d << " violations, "
           << static_cast<int>(secs * 1000) << " ms";
    return c;
}

// ---------------------------------------------------------------------------
// 3. Unfolding contraction identity

Criterion criterion3() {
    Criterion c;
    SeededRng seeds(303);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = (trial % 2) ? 3 : 4;
        Shape shape;
        for (int k = 0; k < d; ++k) {
            shape.push_back(3 + static_cast<Index>(seeds.uniform_index(6)));
        }
        const DenseTensor a = gaussian_tensor(shape, seeds.next_u64());
        SeededRng rng = seeds.stream(9000 + static_cast<std::uint64_t>(trial));
        // random level j >= 1 and trailing unit vectors for the contraction
        const Index j = 1 + static_cast<Index>(
                                rng.uniform_index(static_cast<std::uint64_t>(d - 1)));
        DenseTensor b = a;
        for (Index k = static_cast<Index>(d) - 1; k > j; --k) {
            Eigen::VectorXd u(b.dim(k));
            for (Index q = 0; q < u.size(); ++q) u[q] = rng.normal();
            b = contract_mode(b, k, u.normalized());
        }
        const Eigen::MatrixXd m = unfold_mode(b, j);
        Eigen::VectorXd u(b.dim(j));
        for (Index q = 0; q < u.size(); ++q) u[q] = rng.normal();
        u.normalize();
        Eigen::VectorXd y(m.cols());
        for (Index q = 0; q < y.size(); ++q) y[q] = rng.normal();
        y.normalize();

        const double lhs = u.dot(m * y);
        Shape y_shape(b.shape().begin(), b.shape().begin() + j);
        const double rhs = inner(contract_mode(b, j, u), DenseTensor(y_shape, y));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    if (worst > 1e-10) {
        c.fail("identity residual " + std::to_string(worst) + " > 1e-10");
    }
    c.note << "100 triples, worst residual " << worst;
    return c;
}

// ---------------------------------------------------------------------------
// 4. Chain inequality

double level_energy(const LevelDiagnostics& level) {
    double e = 0.0;
    for (double x : level.uv) e += x * x;
    return e;
}

Criterion criterion4() {
    Criterion c;
    SeededRng seeds(404);
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = (trial % 2) ? 3 : 4;
        Shape shape;
        for (int k = 0; k < d; ++k) {
            shape.push_back(4 + static_cast<Index>(seeds.uniform_index(9)));
        }
        const int rank = 1 + static_cast<int>(seeds.uniform_index(4));
        const DenseTensor a = gaussian_tensor(shape, seeds.next_u64());
        for (Extraction variant : {Extraction::A, Extraction::B}) {
            ApproxConfig cfg;
            cfg.rank = std::min<int>(rank, static_cast<int>(
                                               *std::min_element(shape.begin(),
                                                                 shape.end())));
            cfg.num_orthonormal = d;
            cfg.variant = variant;
            const ApproxResult res = approximate(a, cfg);
            for (std::size_t l = 1; l < res.levels.size(); ++l) {
                const Index j = res.levels[l].mode;
                const double beta =
                    (j == 0) ? 1.0 : 1.0 / static_cast<double>(a.dim(j));
                if (level_energy(res.levels[l]) <
                    beta / cfg.rank * level_energy(res.levels[l - 1]) *
                        (1 - 1e-12)) {
                    ++violations;
                }
            }
        }
    }
    if (violations > 0) {
        c.fail(std::to_string(violations) + " deterministic violations");
    }

    // variant C in sample mean over 1000 seeded runs on 10 tensors
    int mc_violations = 0;
    for (int tensor_idx = 0; tensor_idx < 10; ++tensor_idx) {
        const Shape shape{6, 5, 6};
        const DenseTensor a =
            gaussian_tensor(shape, 5000 + static_cast<std::uint64_t>(tensor_idx));
        ApproxConfig cfg;
        cfg.rank = 3;
        cfg.num_orthonormal = 3;
        cfg.variant = Extraction::C;
        std::vector<RunningMean> gap(2);  // one per chained level
        for (int run = 0; run < 1000; ++run) {
            cfg.seed = static_cast<std::uint64_t>(run);
            const ApproxResult res = approximate(a, cfg);
            for (std::size_t l = 1; l < res.levels.size(); ++l) {
                const Index j = res.levels[l].mode;
                const double beta =
                    (j == 0) ? 1.0 : 1.0 / static_cast<double>(a.dim(j));
                gap[l - 1].add(level_energy(res.levels[l]) -
                               beta / cfg.rank * level_energy(res.levels[l - 1]));
            }
        }
        for (const RunningMean& g : gap) {
            if (g.mean < -3.0 * g.stderror()) ++mc_violations;
        }
    }
    if (mc_violations > 0) {
        c.fail("variant C sample mean violated the chain bound " +
               std::to_string(mc_violations) + "x");
    }
    c.note << "100 tensors x {A,B} exact, 10 tensors x 1000 runs for C";
    return c;
}

// ---------------------------------------------------------------------------
// 5. Global bound and the ratio curve

Criterion criterion5() {
    Criterion c;
    SeededRng seeds(505);
    int violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = (trial % 2) ? 3 : 4;
        Shape shape;
        for (int k = 0; k < d; ++k) {
            shape.push_back(4 + static_cast<Index>(seeds.uniform_index(9)));
        }
        const Index min_dim = *std::min_element(shape.begin(), shape.end());
        const int rank = 1 + static_cast<int>(seeds.uniform_index(
                                 static_cast<std::uint64_t>(std::min<Index>(4, min_dim))));
        const DenseTensor a = gaussian_tensor(shape, seeds.next_u64());
        const double lam = lambda_sq_sum(a, rank);
        const double ratio = theoretical_ratio(shape, rank, d);
        for (Extraction variant : {Extraction::A, Extraction::B}) {
            ApproxConfig cfg;
            cfg.rank = rank;
            cfg.num_orthonormal = d;
            cfg.variant = variant;
            const ApproxResult res = approximate(a, cfg);
            if (res.objective < ratio * lam * (1 - 1e-12)) ++violations;
            if (res.objective > lam * (1 + 1e-12)) ++violations;
        }
    }
    if (violations > 0) c.fail(std::to_string(violations) + " bound violations");

    // qualitative ratio curve: mean achieved ratio stays above both reference
    // curves on an n-sweep
    bool curve_ok = true;
    for (Index n = 4; n <= 12; ++n) {
        double mean = 0.0;
        for (int inst = 0; inst < 20; ++inst) {
            const Shape shape{n, n, n, n};
            const DenseTensor a = gaussian_tensor(
                shape, 77000 + static_cast<std::uint64_t>(n * 100 + inst));
            ApproxConfig cfg;
            cfg.rank = 2;
            cfg.num_orthonormal = 4;
            cfg.variant = Extraction::A;
            const ApproxResult res = approximate(a, cfg);
            mean += res.objective / lambda_sq_sum(a, 2);
        }
        mean /= 20.0;
        const double theo = theoretical_ratio({n, n, n, n}, 2, 4);
        const double inv_n2 = 1.0 / static_cast<double>(n * n);
        if (mean <= std::max(theo, inv_n2)) {
            curve_ok = false;
            c.fail("ratio curve dips at n = " + std::to_string(n));
        }
    }
    c.note << "100-tensor battery clean"
           << (curve_ok ? ", ratio curve above both references (n = 4..12)" : "");
    return c;
}

// ---------------------------------------------------------------------------
// 6. Exact recovery

Criterion criterion6() {
    Criterion c;
    Timer timer;
    int violations = 0;
    int instance = 0;
    for (int strata = 0; strata < 50; ++strata) {
        const int d = (strata % 2) ? 3 : 4;
        const int t = (strata % 4 < 2) ? d : d - 1;
        const Extraction variant =
            std::array{Extraction::A, Extraction::B, Extraction::C}[strata % 3];
        Shape shape(static_cast<std::size_t>(d), 15);
        const StructuredInstance inst = structured_tensor(
            shape, 4, t, 0.0, 60000 + static_cast<std::uint64_t>(strata),
            /*exact_mode=*/true);
        ApproxConfig cfg;
        cfg.rank = 4;
        cfg.num_orthonormal = t;
        cfg.variant = variant;
        cfg.seed = static_cast<std::uint64_t>(strata);
        const ApproxResult res = approximate(inst.tensor, cfg);
        ++instance;

        const double truth_g = inst.ground_truth.truth.sigmas.squaredNorm();
        if (std::abs(res.objective - truth_g) > 1e-8 * truth_g) ++violations;

        // per-column sign/permutation matching, one shared permutation
        std::vector<Eigen::MatrixXd> costs;
        Eigen::MatrixXd summed = Eigen::MatrixXd::Zero(4, 4);
        for (int j = 0; j < d; ++j) {
            Eigen::MatrixXd cost(4, 4);
            for (Index a = 0; a < 4; ++a) {
                for (Index b = 0; b < 4; ++b) {
                    const Eigen::VectorXd tr =
                        inst.ground_truth.truth.factors[static_cast<std::size_t>(j)].col(a);
                    const Eigen::VectorXd es =
                        res.factors.factors[static_cast<std::size_t>(j)].col(b);
                    cost(a, b) = std::min((tr - es).squaredNorm(),
                                          (tr + es).squaredNorm());
                }
            }
            summed += cost;
            costs.push_back(std::move(cost));
        }
        const std::vector<Index> perm = hungarian_assign(summed);
        for (int j = 0; j < d; ++j) {
            for (Index a = 0; a < 4; ++a) {
                if (std::sqrt(costs[static_cast<std::size_t>(j)](
                        a, perm[static_cast<std::size_t>(a)])) > 1e-6) {
                    ++violations;
                }
            }
        }
    }
    const double secs = timer.seconds();
    if (violations > 0) c.fail(std::to_string(violations) + " violations");
    if (secs >= 60.0) c.fail("runtime " + std::to_string(secs) + "s >= 60s");
    c.note << instance << " exact instances, " << violations << " violations, "
           << static_cast<int>(secs * 1000) << " ms";
    return c;
}

// ---------------------------------------------------------------------------
// 7. Perturbation trend

StructuredInstance incoherent_instance(const Shape& shape, int rank, int t,
                                       double beta, double delta,
                                       std::uint64_t seed) {
    SeededRng root(seed);
    SeededRng sigma_rng = root.stream(0);
    Eigen::VectorXd sigmas(rank);
    for (Index i = 0; i < rank; ++i) sigmas[i] = sigma_rng.uniform(0.5, 1.5);
    std::sort(sigmas.begin(), sigmas.end(), std::greater<>());

    const Index d = static_cast<Index>(shape.size());
    FactorSet truth;
    truth.num_orthonormal = t;
    for (Index j = 0; j < d; ++j) {
        if (j >= d - t) {
            SeededRng rng = root.stream(100 + static_cast<std::uint64_t>(j));
            truth.factors.push_back(
                random_orthonormal(shape[static_cast<std::size_t>(j)], rank, rng));
        } else {
            truth.factors.push_back(incoherent_factor(
                shape[static_cast<std::size_t>(j)], rank, delta,
                seed * 31 + static_cast<std::uint64_t>(j)));
        }
    }
    DenseTensor signal = build_cp(sigmas, truth.factors);
    const double norm = fnorm(signal);
    truth.sigmas = sigmas / norm;
    SeededRng nrng = root.stream(300);
    DenseTensor noise(shape);
    for (Index k = 0; k < noise.size(); ++k) noise[k] = nrng.uniform(-1.0, 1.0);
    StructuredInstance out;
    out.tensor =
        DenseTensor(shape, signal.data() / norm + (beta / fnorm(noise)) * noise.data());
    out.ground_truth.truth = std::move(truth);
    out.ground_truth.noise_level = beta;
    out.ground_truth.incoherence = delta;
    return out;
}

Criterion criterion7() {
    Criterion c;
    const Shape shape{12, 12, 12, 12};
    std::vector<double> err_small, err_large;
    for (int s = 0; s < 20; ++s) {
        for (const double beta : {1e-3, 1e-1}) {
            const StructuredInstance inst = structured_tensor(
                shape, 3, 4, beta, 70000 + static_cast<std::uint64_t>(s));
            ApproxConfig cfg;
            cfg.rank = 3;
            cfg.num_orthonormal = 4;
            cfg.variant = Extraction::A;
            const ApproxResult res = approximate(inst.tensor, cfg);
            const double err = relative_error(inst.ground_truth.truth, res.factors);
            (beta < 1e-2 ? err_small : err_large).push_back(err);
        }
    }
    const double med_small = median(err_small);
    const double med_large = median(err_large);
    if (med_small * 10.0 > med_large) {
        c.fail("median rel.err ratio " + std::to_string(med_large / med_small) +
               " < 10");
    }

    // single orthonormal mode with incoherent leading factors
    std::vector<double> err_t1;
    for (int s = 0; s < 20; ++s) {
        const StructuredInstance inst = incoherent_instance(
            shape, 3, 1, 1e-3, 0.05, 71000 + static_cast<std::uint64_t>(s));
        ApproxConfig cfg;
        cfg.rank = 3;
        cfg.num_orthonormal = 1;
        cfg.variant = Extraction::A;
        cfg.rank1_power_iters = 4;
        const ApproxResult res = approximate(inst.tensor, cfg);
        err_t1.push_back(relative_error(inst.ground_truth.truth, res.factors));
    }
    const double med_t1 = median(err_t1);
    if (med_t1 > 0.05) {
        c.fail("t=1 incoherent median rel.err " + std::to_string(med_t1) +
               " > 0.05");
    }
    c.note << "median rel.err " << med_small << " @ beta=1e-3 vs " << med_large
           << " @ beta=1e-1; t=1 incoherent median " << med_t1;
    return c;
}

// ---------------------------------------------------------------------------
// 8. Alternating refinement

FactorSet random_feasible(const Shape& shape, int rank, int t,
                          const DenseTensor& a, std::uint64_t seed) {
    SeededRng root(seed);
    FactorSet f;
    f.num_orthonormal = t;
    const Index d = static_cast<Index>(shape.size());
    for (Index j = 0; j < d; ++j) {
        SeededRng rng = root.stream(static_cast<std::uint64_t>(j));
        const Index n = shape[static_cast<std::size_t>(j)];
        if (j >= d - t) {
            f.factors.push_back(random_orthonormal(n, rank, rng));
        } else {
            Eigen::MatrixXd m(n, rank);
            for (Index col = 0; col < rank; ++col) {
                for (Index r = 0; r < n; ++r) m(r, col) = rng.normal();
                m.col(col).normalize();
            }
            f.factors.push_back(std::move(m));
        }
    }
    f.sigmas = Eigen::VectorXd::Zero(rank);
    for (Index i = 0; i < rank; ++i) f.sigmas[i] = rank1_inner(a, f.factors, i);
    return f;
}

Criterion criterion8() {
    Criterion c;

    // monotone residual from 50 random starts
    int monotonicity_violations = 0;
    int stop_violations = 0;
    SeededRng seeds(808);
    for (int trial = 0; trial < 50; ++trial) {
        const Shape shape{7, 6, 5};
        const StructuredInstance inst =
            structured_tensor(shape, 3, 2, 0.3, seeds.next_u64());
        const FactorSet init =
            random_feasible(shape, 3, 2, inst.tensor, seeds.next_u64());
        AlsConfig cfg;
        const auto [refined, trace] = refine(inst.tensor, init, cfg);
        double prev = trace.initial_residual;
        for (double r : trace.residuals) {
            if (r > prev + 1e-10) {
                ++monotonicity_violations;
                break;
            }
            prev = r;
        }
        const bool by_tol = trace.factor_changes.back() <= cfg.rel_change_tol;
        const bool by_cap = trace.iterations == cfg.max_iters;
        if (!by_tol && !by_cap) ++stop_violations;
    }
    if (monotonicity_violations > 0) {
        c.fail(std::to_string(monotonicity_violations) + " residual increases");
    }
    if (stop_violations > 0) {
        c.fail("stopping rule violated " + std::to_string(stop_violations) + "x");
    }

    // refinement does not hurt the initializer at beta = 0.1
    int improved = 0;
    std::vector<double> err_algo, err_random, sweeps_algo, sweeps_random;
    for (int s = 0; s < 20; ++s) {
        const Shape shape{10, 10, 10, 10};
        const StructuredInstance inst = structured_tensor(
            shape, 3, 3, 0.1, 81000 + static_cast<std::uint64_t>(s));
        ApproxConfig acfg;
        acfg.rank = 3;
        acfg.num_orthonormal = 3;
        acfg.variant = Extraction::A;
        acfg.rank1_power_iters = 2;
        const ApproxResult init = approximate(inst.tensor, acfg);
        const double before = relative_error(inst.ground_truth.truth, init.factors);
        AlsConfig cfg;
        const auto [refined, trace] = refine(inst.tensor, init.factors, cfg);
        const double after = relative_error(inst.ground_truth.truth, refined);
        if (after <= before + 1e-12) ++improved;
        err_algo.push_back(after);
        sweeps_algo.push_back(static_cast<double>(trace.iterations));

        const FactorSet rnd_init = random_feasible(
            shape, 3, 3, inst.tensor, 82000 + static_cast<std::uint64_t>(s));
        const auto [rnd_refined, rnd_trace] = refine(inst.tensor, rnd_init, cfg);
        err_random.push_back(relative_error(inst.ground_truth.truth, rnd_refined));
        sweeps_random.push_back(static_cast<double>(rnd_trace.iterations));
    }
    if (improved < 18) {  // >= 90% of 20 runs
        c.fail("refinement improved only " + std::to_string(improved) + "/20");
    }

    // Table-1 trend on paired instances: no worse in median error, strictly
    // fewer sweeps on average.
    const double med_algo = median(err_algo);
    const double med_random = median(err_random);
    const double mean_sweeps_algo =
        std::accumulate(sweeps_algo.begin(), sweeps_algo.end(), 0.0) / 20.0;
    const double mean_sweeps_random =
        std::accumulate(sweeps_random.begin(), sweeps_random.end(), 0.0) / 20.0;
    if (med_algo > med_random) {
        c.fail("algorithm-initialized median rel.err " + std::to_string(med_algo) +
               " worse than random " + std::to_string(med_random));
    }
    if (mean_sweeps_algo >= mean_sweeps_random) {
        c.fail("algorithm init did not save sweeps");
    }
    c.note << "50 monotone starts; improved " << improved
           << "/20; median rel.err " << med_algo << " (algo) vs " << med_random
           << " (random); mean sweeps " << mean_sweeps_algo << " vs "
           << mean_sweeps_random;
    return c;
}

// ---------------------------------------------------------------------------
// 9. Rank-1 specialization bound

Criterion criterion9() {
    Criterion c;
    SeededRng seeds(909);
    int violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
        const int d = (trial % 2) ? 3 : 4;
        Shape shape;
        for (int k = 0; k < d; ++k) {
            shape.push_back(2 + static_cast<Index>(seeds.uniform_index(11)));
        }
        const DenseTensor a = gaussian_tensor(shape, seeds.next_u64());
        ApproxConfig cfg;
        cfg.variant = Extraction::A;
        const Rank1Result r1 = rank1_approx(a, cfg);

        // ratio from the single-component specialization, applied to the
        // spectral surrogate lambda_1 of the trailing unfolding
        double interior = 1.0;
        for (int j = 1; j + 1 < d; ++j) {
            interior *= static_cast<double>(shape[static_cast<std::size_t>(j)]);
        }
        const double lam1 = std::sqrt(lambda_sq_sum(a, 1));
        const double target = lam1 / std::sqrt(interior);
        worst_margin = std::min(worst_margin, r1.value / target);
        if (r1.value < target * (1 - 1e-12)) ++violations;
    }
    if (violations > 0) c.fail(std::to_string(violations) + " violations");
    c.note << "100 tensors, worst value/target = " << worst_margin;
    return c;
}

// ---------------------------------------------------------------------------
// 10. CLI determinism

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    return std::string((std::istreambuf_iterator<char>(is)),
                       std::istreambuf_iterator<char>());
}

// Drops timing values: JSON "time_ms" keys and CSV time columns.
std::string strip_timing(const std::string& text) {
    std::istringstream is(text);
    std::ostringstream os;
    std::string line;
    std::vector<std::size_t> time_cols;
    bool csv_header_seen = false;
    while (std::getline(is, line)) {
        if (line.find("\"time_ms\"") != std::string::npos) continue;
        if (!csv_header_seen && line.find("time") != std::string::npos &&
            line.find(',') != std::string::npos) {
            // CSV header: remember which columns carry timings
            csv_header_seen = true;
            std::stringstream ss(line);
            std::string cell;
            std::size_t idx = 0;
            while (std::getline(ss, cell, ',')) {
                if (cell.find("time") != std::string::npos) time_cols.push_back(idx);
                ++idx;
            }
        }
        if (csv_header_seen && !time_cols.empty()) {
            std::stringstream ss(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(ss, cell, ',')) cells.push_back(cell);
            for (auto it = time_cols.rbegin(); it != time_cols.rend(); ++it) {
                if (*it < cells.size()) cells.erase(cells.begin() + static_cast<long>(*it));
            }
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (k) os << ',';
                os << cells[k];
            }
            os << '\n';
            continue;
        }
        os << line << '\n';
    }
    return os.str();
}

int run_cli(const std::string& cli, const std::string& args,
            const fs::path& stdout_file, int threads) {
    std::string cmd = "OTNS_THREADS=" + std::to_string(threads) + " \"" + cli +
                      "\" " + args + " > \"" + stdout_file.string() + "\" 2>/dev/null";
    return std::system(cmd.c_str());
}

Criterion criterion10(const std::string& cli) {
    Criterion c;
    if (cli.empty()) {
        c.fail("no --cli path given");
        return c;
    }
    const fs::path dir =
        fs::temp_directory_path() / ("orthocp_acceptance_" +
                                     std::to_string(::getpid()));
    fs::create_directories(dir);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"approx",
         "approx --gen gaussian --shape 8,8,8 --R 2 --t 3 --variant A --seed 7 "
         "--check"},
        {"approx_c",
         "approx --gen structured --shape 7,7,7,7 --R 3 --t 4 --beta 0.1 "
         "--variant C --seed 11 --check"},
        {"sweep",
         "ratio-sweep --sweep n --from 4 --to 7 --d 3 --R 2 --t 3 --variant B "
         "--instances 6 --seed 5 --check"},
        {"recover",
         "recover --gen structured --shape 8,8,8 --R 2 --t 3 --beta 0.1 "
         "--init A --reps 6 --seed 9 --check"},
        {"bench", "bench --d 3 --from 4 --to 8 --step 2 --R 2 --seed 3 --reps 2"},
    };

    for (const auto& [name, args] : commands) {
        const fs::path out1 = dir / (name + "_1.txt");
        const fs::path out2 = dir / (name + "_2.txt");
        const fs::path out4 = dir / (name + "_4threads.txt");
        if (run_cli(cli, args, out1, 1) != 0 || run_cli(cli, args, out2, 1) != 0 ||
            run_cli(cli, args, out4, 4) != 0) {
            c.fail(name + " exited nonzero");
            continue;
        }
        const std::string a = strip_timing(slurp(out1));
        const std::string b = strip_timing(slurp(out2));
        const std::string d4 = strip_timing(slurp(out4));
        if (a != b) c.fail(name + " differs across reruns");
        if (a != d4) c.fail(name + " differs under OTNS_THREADS=4");
        if (a.empty()) c.fail(name + " produced no output");
    }
    fs::remove_all(dir);
    c.note << commands.size() << " commands, rerun + thread-count comparison";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    for (int k = 1; k + 1 < argc; ++k) {
        if (std::string(argv[k]) == "--cli") cli = argv[k + 1];
    }

    const std::vector<std::pair<std::string, std::function<Criterion()>>> table = {
        {"polar/SVD kernel suite", criterion1},
        {"extraction bounds", criterion2},
        {"unfolding contraction identity", criterion3},
        {"chain inequality", criterion4},
        {"global bound and ratio curve", criterion5},
        {"exact recovery", criterion6},
        {"perturbation trend", criterion7},
        {"alternating refinement", criterion8},
        {"rank-1 specialization bound", criterion9},
        {"CLI determinism", [&cli] { return criterion10(cli); }},
    };

    int failures = 0;
    for (std::size_t k = 0; k < table.size(); ++k) {
        Criterion result;
        try {
            result = table[k].second();
        } catch (const std::exception& e) {
            result.fail(std::string("exception: ") + e.what());
        }
        if (!result.pass) ++failures;
        std::cout << (result.pass ? "[PASS]" : "[FAIL]") << " criterion "
                  << (k + 1) << ": " << table[k].first;
        const std::string note = result.note.str();
        if (!note.empty()) std::cout << " (" << note << ")";
        std::cout << std::endl;
    }
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
