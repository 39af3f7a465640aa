// Command-line front end: approximation runs, ratio sweeps, recovery
// experiments and timing benchmarks on OTNS/JSON tensor files or synthetic
// instances. All randomness flows from --seed; per-instance streams keep
// multi-threaded sweeps byte-reproducible (worker count capped by the
// OTNS_THREADS environment variable).

#include <CLI11.hpp>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "orthocp/als.hpp"
#include "orthocp/approx.hpp"
#include "orthocp/extract.hpp"
#include "orthocp/metrics.hpp"
#include "orthocp/synth.hpp"
#include "orthocp/tensor_io.hpp"

using json = nlohmann::ordered_json;
using namespace orthocp;

namespace {

// ---------------------------------------------------------------------------
// Small utilities

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

Shape parse_shape(const std::string& text) {
    Shape shape;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const long v = std::stol(tok);
        if (v < 1) throw CLI::ValidationError("--shape entries must be >= 1");
        shape.push_back(static_cast<Index>(v));
    }
    if (shape.empty()) throw CLI::ValidationError("--shape is empty");
    return shape;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return SeededRng(seed).stream(a).stream(b).next_u64();
}

// Tags separating the data stream from the algorithm stream.
constexpr std::uint64_t kDataTag = 0x0DA7A;
constexpr std::uint64_t kAlgoTag = 0xA160;
constexpr std::uint64_t kInitTag = 0x171717;

unsigned worker_count(std::size_t jobs) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("OTNS_THREADS")) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end != env && cap >= 1) hw = std::min<unsigned long>(hw, cap);
    }
    return static_cast<unsigned>(std::min<std::size_t>(hw, jobs));
}

// Runs fn(0..jobs-1) on a worker pool; results must be written into
// index-addressed slots so the output is schedule-independent.
template <typename Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    const unsigned workers = worker_count(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    os << text;
}

// ---------------------------------------------------------------------------
// Instance sources

struct SourceOptions {
    std::string input_file;
    std::string generator;  // "gaussian" | "structured"
    std::string shape_text;
    double beta = 0.1;
    bool exact_mode = false;
    std::optional<double> delta;  // incoherent leading factors
};

void add_source_flags(CLI::App* cmd, SourceOptions& src, bool generator_only) {
    if (!generator_only) {
        cmd->add_option("--in", src.input_file, "input tensor (.otns or .json)");
    }
    cmd->add_option("--gen", src.generator, "synthetic source: gaussian | structured");
    cmd->add_option("--shape", src.shape_text, "comma-separated dims, e.g. 8,8,8");
    cmd->add_option("--beta", src.beta, "noise level for --gen structured");
    cmd->add_flag("--exact-mode", src.exact_mode,
                  "noise-free structured instance with strictly sorted weights");
}

// Structured instance whose leading factors are incoherent with modulus
// delta; used by the single-orthonormal-mode recovery experiments.
StructuredInstance incoherent_instance(const Shape& shape, int rank, int t,
                                       double beta, double delta,
                                       std::uint64_t seed) {
    const Index d = static_cast<Index>(shape.size());
    SeededRng root(seed);
    SeededRng sigma_rng = root.stream(0);
    Eigen::VectorXd sigmas(rank);
    for (Index i = 0; i < rank; ++i) sigmas[i] = sigma_rng.uniform(0.5, 1.5);
    std::sort(sigmas.begin(), sigmas.end(), std::greater<>());

    FactorSet truth;
    truth.num_orthonormal = t;
    for (Index j = 0; j < d; ++j) {
        if (j >= d - t) {
            SeededRng frng = root.stream(100 + static_cast<std::uint64_t>(j));
            truth.factors.push_back(
                random_orthonormal(shape[static_cast<std::size_t>(j)], rank, frng));
        } else {
            truth.factors.push_back(
                incoherent_factor(shape[static_cast<std::size_t>(j)], rank, delta,
                                  derive_seed(seed, 200, static_cast<std::uint64_t>(j))));
        }
    }
    DenseTensor signal = build_cp(sigmas, truth.factors);
    const double signal_norm = fnorm(signal);
    truth.sigmas = sigmas / signal_norm;

    SeededRng nrng = root.stream(300);
    DenseTensor noise(shape);
    for (Index k = 0; k < noise.size(); ++k) noise[k] = nrng.uniform(-1.0, 1.0);

    StructuredInstance out;
    out.tensor = DenseTensor(
        shape, signal.data() / signal_norm + (beta / fnorm(noise)) * noise.data());
    out.ground_truth.truth = std::move(truth);
    out.ground_truth.noise_level = beta;
    out.ground_truth.incoherence = delta;
    return out;
}

struct ResolvedInstance {
    DenseTensor tensor;
    std::optional<GroundTruth> truth;
    std::string description;
};

ResolvedInstance resolve_instance(const SourceOptions& src, int rank, int t,
                                  std::uint64_t data_seed) {
    const bool has_file = !src.input_file.empty();
    const bool has_gen = !src.generator.empty();
    if (has_file == has_gen) {
        throw std::runtime_error("exactly one tensor source required (--in or --gen)");
    }
    ResolvedInstance out;
    if (has_file) {
        out.tensor = read_tensor_file(src.input_file);
        out.description = "file:" + src.input_file;
        return out;
    }
    if (src.shape_text.empty()) {
        throw std::runtime_error("--gen requires --shape");
    }
    const Shape shape = parse_shape(src.shape_text);
    if (src.generator == "gaussian") {
        out.tensor = gaussian_tensor(shape, data_seed);
        out.description = "gaussian";
    } else if (src.generator == "structured") {
        StructuredInstance inst =
            src.delta ? incoherent_instance(shape, rank, t, src.beta, *src.delta,
                                            data_seed)
                      : structured_tensor(shape, rank, t, src.beta, data_seed,
                                          src.exact_mode);
        out.tensor = std::move(inst.tensor);
        out.truth = std::move(inst.ground_truth);
        out.description = "structured";
    } else {
        throw std::runtime_error("unknown generator: " + src.generator);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Invariant battery (--check)

std::vector<std::string> check_approx_result(const DenseTensor& a,
                                             const ApproxConfig& cfg,
                                             const ApproxResult& res) {
    std::vector<std::string> issues;
    try {
        res.factors.validate();
    } catch (const std::exception& e) {
        issues.emplace_back(std::string("factor feasibility: ") + e.what());
    }

    double g_direct = 0.0;
    for (Index i = 0; i < res.factors.rank(); ++i) {
        const double s = rank1_inner(a, res.factors.factors, i);
        g_direct += s * s;
    }
    if (std::abs(g_direct - res.objective) > 1e-10 * std::max(1.0, g_direct)) {
        issues.emplace_back("objective does not match sum of squared weights");
    }

    if (!res.degenerate_input) {
        const double lam = lambda_sq_sum(a, cfg.rank);
        if (res.objective > lam * (1.0 + 1e-10)) {
            issues.emplace_back("objective exceeds the spectral surrogate");
        }
        if (cfg.variant == Extraction::A || cfg.variant == Extraction::B) {
            const double ratio = theoretical_ratio(a.shape(), cfg.rank,
                                                   cfg.num_orthonormal);
            if (res.objective < ratio * lam * (1.0 - 1e-12)) {
                issues.emplace_back("objective below the guaranteed ratio");
            }
            const auto& levels = res.levels;
            for (std::size_t l = 1; l < levels.size(); ++l) {
                double lo = 0.0, hi = 0.0;
                for (double x : levels[l].uv) lo += x * x;
                for (double x : levels[l - 1].uv) hi += x * x;
                const Index j = levels[l].mode;
                const double beta =
                    (j == 0) ? 1.0 : 1.0 / static_cast<double>(a.dim(j));
                if (lo < beta / cfg.rank * hi * (1.0 - 1e-12)) {
                    issues.emplace_back("chain inequality violated at mode " +
                                        std::to_string(j));
                }
            }
        }
    }
    return issues;
}

int report_issues(const std::vector<std::string>& issues) {
    if (issues.empty()) return 0;
    for (const auto& msg : issues) std::cerr << "check failed: " << msg << "\n";
    return 3;
}

// ---------------------------------------------------------------------------
// approx

struct ApproxCli {
    SourceOptions src;
    int rank = 1;
    int t = 1;
    std::string variant = "A";
    std::uint64_t seed = 0;
    int rank1_iters = 0;
    std::string out_prefix;
    std::string dump_prefix;
    bool check = false;
};

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Instance export: the tensor in OTNS plus a JSON sidecar with the ground
// truth, when the source provides one.
void dump_instance(const std::string& prefix, const ResolvedInstance& inst) {
    write_otns(prefix + ".otns", inst.tensor);
    if (!inst.truth) return;
    const GroundTruth& gt = *inst.truth;
    json sidecar;
    sidecar["sigmas"] = std::vector<double>(gt.truth.sigmas.begin(),
                                            gt.truth.sigmas.end());
    sidecar["num_orthonormal"] = gt.truth.num_orthonormal;
    sidecar["noise_level"] = gt.noise_level;
    if (gt.incoherence) {
        sidecar["incoherence"] = *gt.incoherence;
    } else {
        sidecar["incoherence"] = nullptr;
    }
    json factors = json::array();
    for (const auto& f : gt.truth.factors) factors.push_back(matrix_to_json(f));
    sidecar["factors"] = std::move(factors);
    std::ofstream os(prefix + "_truth.json");
    if (!os) throw std::runtime_error("cannot write " + prefix + "_truth.json");
    os << sidecar.dump(2) << "\n";
}

int run_approx(const ApproxCli& args) {
    ApproxConfig cfg;
    cfg.rank = args.rank;
    cfg.num_orthonormal = args.t;
    cfg.variant = extraction_from_char(args.variant.at(0));
    cfg.seed = derive_seed(args.seed, kAlgoTag);
    cfg.rank1_power_iters = args.rank1_iters;

    ResolvedInstance inst =
        resolve_instance(args.src, args.rank, args.t, derive_seed(args.seed, kDataTag));
    if (!args.dump_prefix.empty()) dump_instance(args.dump_prefix, inst);

    Stopwatch watch;
    const ApproxResult res = approximate(inst.tensor, cfg);
    const double elapsed = watch.ms();

    json rec;
    rec["command"] = "approx";
    rec["source"] = inst.description;
    rec["shape"] = inst.tensor.shape();
    rec["rank"] = args.rank;
    rec["num_orthonormal"] = args.t;
    rec["variant"] = std::string(1, to_char(cfg.variant));
    rec["seed"] = args.seed;
    rec["objective"] = res.objective;
    rec["sigmas"] = std::vector<double>(res.factors.sigmas.begin(),
                                        res.factors.sigmas.end());
    if (!res.degenerate_input) {
        const double lam = lambda_sq_sum(inst.tensor, args.rank);
        rec["lambda_sq_sum"] = lam;
        rec["achieved_ratio"] = lam > 0.0 ? res.objective / lam : 0.0;
    }
    rec["theoretical_ratio"] =
        theoretical_ratio(inst.tensor.shape(), args.rank, args.t);
    rec["orthonormality_residual"] = res.factors.orthonormality_residual();
    rec["unit_norm_residual"] = res.factors.unit_norm_residual();
    json levels = json::array();
    for (const auto& level : res.levels) {
        levels.push_back({{"mode", level.mode}, {"uv", level.uv}});
    }
    rec["per_level_products"] = std::move(levels);
    rec["degenerate"] = res.degenerate_input;
    if (inst.truth) {
        rec["rel_err_vs_truth"] = relative_error(inst.truth->truth, res.factors);
    }
    rec["time_ms"] = elapsed;

    std::cout << rec.dump(2) << "\n";

    if (!args.out_prefix.empty()) {
        std::ofstream os(args.out_prefix + ".json");
        if (!os) {
            throw std::runtime_error("cannot write " + args.out_prefix + ".json");
        }
        os << rec.dump(2) << "\n";
        for (Index j = 0; j < res.factors.order(); ++j) {
            write_matrix_otns(args.out_prefix + "_factor" + std::to_string(j) +
                                  ".otns",
                              res.factors.factors[static_cast<std::size_t>(j)]);
        }
    }

    if (args.check) {
        return report_issues(check_approx_result(inst.tensor, cfg, res));
    }
    return 0;
}

// ---------------------------------------------------------------------------
// ratio-sweep

struct SweepCli {
    std::string sweep = "n";  // n | R
    int from = 4;
    int to = 10;
    int step = 1;
    int d = 4;
    int n = 8;
    int rank = 2;
    int t = 0;  // 0 -> defaults to d
    std::string variant = "A";
    int instances = 50;
    std::uint64_t seed = 0;
    int rank1_iters = 0;
    std::string out;
    bool check = false;
};

int run_ratio_sweep(const SweepCli& args) {
    if (args.from < 1 || args.to < args.from || args.step < 1) {
        throw std::runtime_error("invalid sweep range");
    }
    const Extraction variant = extraction_from_char(args.variant.at(0));
    const bool deterministic =
        variant == Extraction::A || variant == Extraction::B;

    std::ostringstream csv;
    csv << "sweep_value,mean_real_ratio,theoretical_ratio\n";
    std::vector<std::string> issues;

    int point_index = 0;
    for (int value = args.from; value <= args.to; value += args.step, ++point_index) {
        Shape shape;
        int rank = args.rank;
        if (args.sweep == "n") {
            shape.assign(static_cast<std::size_t>(args.d), value);
        } else if (args.sweep == "R") {
            shape.assign(static_cast<std::size_t>(args.d), args.n);
            rank = value;
        } else {
            throw std::runtime_error("--sweep must be n or R");
        }
        const int t = args.t > 0 ? args.t : args.d;
        ApproxConfig cfg;
        cfg.rank = rank;
        cfg.num_orthonormal = t;
        cfg.variant = variant;
        cfg.rank1_power_iters = args.rank1_iters;
        cfg.validate_for(shape);

        const double theo = theoretical_ratio(shape, rank, t);
        std::vector<double> ratios(static_cast<std::size_t>(args.instances));
        std::mutex issue_mutex;
        parallel_for(ratios.size(), [&](std::size_t i) {
            const auto pt = static_cast<std::uint64_t>(point_index);
            const DenseTensor a =
                gaussian_tensor(shape, derive_seed(args.seed, kDataTag,
                                                   pt * 1000003 + i));
            ApproxConfig local = cfg;
            local.seed = derive_seed(args.seed, kAlgoTag, pt * 1000003 + i);
            const ApproxResult res = approximate(a, local);
            const double lam = lambda_sq_sum(a, rank);
            ratios[i] = res.objective / lam;
            if (args.check && deterministic &&
                res.objective < theo * lam * (1.0 - 1e-12)) {
                std::lock_guard<std::mutex> lock(issue_mutex);
                issues.emplace_back("ratio bound violated at sweep value " +
                                    std::to_string(value));
            }
        });
        double mean = 0.0;
        for (double r : ratios) mean += r;
        mean /= static_cast<double>(ratios.size());
        csv << value << "," << fmt_double(mean) << "," << fmt_double(theo) << "\n";
    }

    write_text(args.out, csv.str());
    return report_issues(issues);
}

// ---------------------------------------------------------------------------
// recover

struct RecoverCli {
    SourceOptions src;
    int rank = 3;
    int t = 0;  // 0 -> order
    std::string init = "A";  // A|B|C|D|random
    int reps = 1;
    std::uint64_t seed = 0;
    int rank1_iters = 2;
    bool global_perm = false;
    AlsConfig als;
    std::string out;
    bool check = false;
};

FactorSet random_init(const Shape& shape, int rank, int t,
                      const DenseTensor& a, std::uint64_t seed) {
    const Index d = static_cast<Index>(shape.size());
    SeededRng root(seed);
    FactorSet f;
    f.num_orthonormal = t;
    for (Index j = 0; j < d; ++j) {
        SeededRng rng = root.stream(static_cast<std::uint64_t>(j));
        const Index n = shape[static_cast<std::size_t>(j)];
        if (j >= d - t) {
            f.factors.push_back(random_orthonormal(n, rank, rng));
        } else {
            Eigen::MatrixXd m(n, rank);
            for (Index c = 0; c < rank; ++c) {
                for (Index r = 0; r < n; ++r) m(r, c) = rng.normal();
                m.col(c).normalize();
            }
            f.factors.push_back(std::move(m));
        }
    }
    f.sigmas = Eigen::VectorXd::Zero(rank);
    for (Index i = 0; i < rank; ++i) f.sigmas[i] = rank1_inner(a, f.factors, i);
    return f;
}

int run_recover(const RecoverCli& args) {
    if (args.reps < 1) throw std::runtime_error("--reps must be >= 1");
    if (args.src.generator != "structured") {
        throw std::runtime_error("recover needs --gen structured (ground truth)");
    }
    const Shape shape = parse_shape(args.src.shape_text);
    const int t = args.t > 0 ? args.t : static_cast<int>(shape.size());
    const PermutationMode perm_mode =
        args.global_perm ? PermutationMode::Global : PermutationMode::PerMode;

    struct Row {
        double err0, err1, sweeps, t0, t1;
    };
    std::vector<Row> rows(static_cast<std::size_t>(args.reps));
    std::vector<std::string> issues;
    std::mutex issue_mutex;

    parallel_for(rows.size(), [&](std::size_t i) {
        ResolvedInstance inst = resolve_instance(
            args.src, args.rank, t, derive_seed(args.seed, kDataTag, i));
        const FactorSet& truth = inst.truth->truth;

        FactorSet init;
        Stopwatch init_watch;
        if (args.init == "random") {
            init = random_init(shape, args.rank, t, inst.tensor,
                               derive_seed(args.seed, kInitTag, i));
        } else {
            ApproxConfig cfg;
            cfg.rank = args.rank;
            cfg.num_orthonormal = t;
            cfg.variant = extraction_from_char(args.init.at(0));
            cfg.seed = derive_seed(args.seed, kAlgoTag, i);
            cfg.rank1_power_iters = args.rank1_iters;
            init = approximate(inst.tensor, cfg).factors;
        }
        const double t0 = init_watch.ms();
        const double err0 = relative_error(truth, init, perm_mode);

        auto [refined, trace] = refine(inst.tensor, init, args.als);
        const double err1 = relative_error(truth, refined, perm_mode);

        rows[i] = Row{err0, err1, static_cast<double>(trace.iterations), t0,
                      trace.wall_ms};

        if (args.check) {
            std::vector<std::string> local;
            double prev = trace.initial_residual;
            for (double r : trace.residuals) {
                if (r > prev + 1e-10) {
                    local.emplace_back("residual increased in instance " +
                                       std::to_string(i));
                    break;
                }
                prev = r;
            }
            try {
                refined.validate();
            } catch (const std::exception& e) {
                local.emplace_back(std::string("refined factors infeasible: ") +
                                   e.what());
            }
            if (!local.empty()) {
                std::lock_guard<std::mutex> lock(issue_mutex);
                issues.insert(issues.end(), local.begin(), local.end());
            }
        }
    });

    std::ostringstream csv;
    csv << "instance,rel_err_init,rel_err_refined,sweeps,time_init_ms,time_refine_ms\n";
    Row mean{0, 0, 0, 0, 0};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        csv << i << "," << fmt_double(r.err0) << "," << fmt_double(r.err1) << ","
            << r.sweeps << "," << fmt_double(r.t0) << "," << fmt_double(r.t1)
            << "\n";
        mean.err0 += r.err0;
        mean.err1 += r.err1;
        mean.sweeps += r.sweeps;
        mean.t0 += r.t0;
        mean.t1 += r.t1;
    }
    const double n = static_cast<double>(rows.size());
    csv << "mean," << fmt_double(mean.err0 / n) << "," << fmt_double(mean.err1 / n)
        << "," << fmt_double(mean.sweeps / n) << "," << fmt_double(mean.t0 / n)
        << "," << fmt_double(mean.t1 / n) << "\n";

    write_text(args.out, csv.str());
    return report_issues(issues);
}

// ---------------------------------------------------------------------------
// bench

struct BenchCli {
    int d = 4;
    int from = 6;
    int to = 12;
    int step = 2;
    int rank = 2;
    int t = 0;
    std::string variant = "A";
    int reps = 3;
    std::uint64_t seed = 0;
    std::string out;
};

int run_bench(const BenchCli& args) {
    if (args.from < 1 || args.to < args.from || args.step < 1) {
        throw std::runtime_error("invalid bench range");
    }
    std::ostringstream csv;
    csv << "n,rank,num_orthonormal,variant,mean_time_ms,mean_objective\n";
    int point = 0;
    for (int n = args.from; n <= args.to; n += args.step, ++point) {
        Shape shape(static_cast<std::size_t>(args.d), n);
        const int t = args.t > 0 ? args.t : args.d;
        ApproxConfig cfg;
        cfg.rank = args.rank;
        cfg.num_orthonormal = t;
        cfg.variant = extraction_from_char(args.variant.at(0));
        cfg.validate_for(shape);

        double total_ms = 0.0;
        double total_obj = 0.0;
        for (int rep = 0; rep < args.reps; ++rep) {
            const auto id = static_cast<std::uint64_t>(point * 1000 + rep);
            const DenseTensor a =
                gaussian_tensor(shape, derive_seed(args.seed, kDataTag, id));
            ApproxConfig local = cfg;
            local.seed = derive_seed(args.seed, kAlgoTag, id);
            Stopwatch watch;
            const ApproxResult res = approximate(a, local);
            total_ms += watch.ms();
            total_obj += res.objective;
        }
        csv << n << "," << args.rank << "," << t << "," << args.variant << ","
            << fmt_double(total_ms / args.reps) << ","
            << fmt_double(total_obj / args.reps) << "\n";
    }
    write_text(args.out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Orthogonally-constrained low-rank CP approximation toolkit"};
    app.require_subcommand(1);

    ApproxCli approx_args;
    auto* approx_cmd = app.add_subcommand("approx", "run the approximation once");
    add_source_flags(approx_cmd, approx_args.src, false);
    approx_cmd->add_option("--R", approx_args.rank, "number of components");
    approx_cmd->add_option("--t", approx_args.t, "trailing orthonormal modes");
    approx_cmd->add_option("--variant", approx_args.variant, "extraction: A|B|C|D");
    approx_cmd->add_option("--seed", approx_args.seed, "master seed");
    approx_cmd->add_option("--rank1-iters", approx_args.rank1_iters,
                           "polish sweeps inside rank-1 approximations");
    approx_cmd->add_option("--out", approx_args.out_prefix,
                           "prefix for factor OTNS files + JSON metadata");
    approx_cmd->add_option("--dump-instance", approx_args.dump_prefix,
                           "export the input tensor (OTNS) and ground-truth sidecar");
    approx_cmd->add_flag("--check", approx_args.check, "run the invariant battery");

    SweepCli sweep_args;
    auto* sweep_cmd =
        app.add_subcommand("ratio-sweep", "achieved/theoretical ratio curves");
    sweep_cmd->add_option("--sweep", sweep_args.sweep, "sweep variable: n | R");
    sweep_cmd->add_option("--from", sweep_args.from, "first sweep value");
    sweep_cmd->add_option("--to", sweep_args.to, "last sweep value");
    sweep_cmd->add_option("--step", sweep_args.step, "sweep increment");
    sweep_cmd->add_option("--d", sweep_args.d, "tensor order");
    sweep_cmd->add_option("--n", sweep_args.n, "cube dimension for R-sweeps");
    sweep_cmd->add_option("--R", sweep_args.rank, "components for n-sweeps");
    sweep_cmd->add_option("--t", sweep_args.t, "orthonormal modes (default d)");
    sweep_cmd->add_option("--variant", sweep_args.variant, "extraction: A|B|C|D");
    sweep_cmd->add_option("--instances", sweep_args.instances, "instances per point");
    sweep_cmd->add_option("--seed", sweep_args.seed, "master seed");
    sweep_cmd->add_option("--rank1-iters", sweep_args.rank1_iters, "polish sweeps");
    sweep_cmd->add_option("--out", sweep_args.out, "CSV path (default stdout)");
    sweep_cmd->add_flag("--check", sweep_args.check, "verify the ratio bound");

    RecoverCli recover_args;
    auto* recover_cmd =
        app.add_subcommand("recover", "initializer + refinement experiments");
    add_source_flags(recover_cmd, recover_args.src, true);
    recover_cmd->add_option("--delta", [&recover_args](CLI::results_t vals) {
        recover_args.src.delta = std::stod(vals.at(0));
        return true;
    }, "incoherence modulus for the leading factors");
    recover_cmd->add_option("--R", recover_args.rank, "number of components");
    recover_cmd->add_option("--t", recover_args.t, "orthonormal modes (default d)");
    recover_cmd->add_option("--init", recover_args.init,
                            "initializer: A|B|C|D|random");
    recover_cmd->add_option("--reps", recover_args.reps, "instances");
    recover_cmd->add_option("--seed", recover_args.seed, "master seed");
    recover_cmd->add_option("--rank1-iters", recover_args.rank1_iters,
                            "polish sweeps in the initializer");
    recover_cmd->add_flag("--global-perm", recover_args.global_perm,
                          "match components with one shared permutation");
    recover_cmd->add_option("--als-max-iters", recover_args.als.max_iters,
                            "refinement sweep cap");
    recover_cmd->add_option("--als-tol", recover_args.als.rel_change_tol,
                            "factor-change stopping tolerance");
    recover_cmd->add_option("--als-eps", recover_args.als.regularizer_eps,
                            "division guard for unit-norm updates");
    recover_cmd->add_option("--out", recover_args.out, "CSV path (default stdout)");
    recover_cmd->add_flag("--check", recover_args.check, "run the invariant battery");

    BenchCli bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "timing sweep over cube sizes");
    bench_cmd->add_option("--d", bench_args.d, "tensor order");
    bench_cmd->add_option("--from", bench_args.from, "first cube dimension");
    bench_cmd->add_option("--to", bench_args.to, "last cube dimension");
    bench_cmd->add_option("--step", bench_args.step, "sweep increment");
    bench_cmd->add_option("--R", bench_args.rank, "number of components");
    bench_cmd->add_option("--t", bench_args.t, "orthonormal modes (default d)");
    bench_cmd->add_option("--variant", bench_args.variant, "extraction: A|B|C|D");
    bench_cmd->add_option("--reps", bench_args.reps, "repetitions per point");
    bench_cmd->add_option("--seed", bench_args.seed, "master seed");
    bench_cmd->add_option("--out", bench_args.out, "CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (approx_cmd->parsed()) return run_approx(approx_args);
        if (sweep_cmd->parsed()) return run_ratio_sweep(sweep_args);
        if (recover_cmd->parsed()) return run_recover(recover_args);
        if (bench_cmd->parsed()) return run_bench(bench_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
