// Command-line front end: degrade, restore, eval, bench, check-theorem, phantom.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bregpnp/errors.hpp"
#include "bregpnp/experiment.hpp"
#include "bregpnp/image_io.hpp"
#include "bregpnp/report.hpp"
#include "bregpnp/theorem.hpp"

namespace {

using namespace bregpnp;
using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 1, kSolverAbort = 2, kIo = 3 };

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("bad JSON in ") + path + ": " + e.what());
    }
}

// Values from the JSON config fill every option the command line left unset.
template <typename T>
void fill_from_config(const json& cfg, CLI::App& app, const std::string& flag, const std::string& key, T& value) {
    if (app.get_option(flag)->count() == 0 && cfg.contains(key)) value = cfg.at(key).get<T>();
}

struct Common {
    std::string config;
    std::string input;
    std::string output;
    std::string kernel = "uniform9";
    double peak = 8.0;
    std::uint64_t seed = 0;
};

void add_common(CLI::App& app, Common& c) {
    app.add_option("--config", c.config, "JSON file with defaults for any flag");
    app.add_option("--input", c.input, "input image");
    app.add_option("--output", c.output, "output path");
    app.add_option("--kernel", c.kernel, "uniform9 | gauss9=SIGMA | file:PATH");
    app.add_option("--peak", c.peak, "Poisson peak (maximum expected count)");
    app.add_option("--seed", c.seed, "random seed");
}

void resolve_common(const json& cfg, CLI::App& app, Common& c) {
    fill_from_config(cfg, app, "--input", "input", c.input);
    fill_from_config(cfg, app, "--output", "output", c.output);
    fill_from_config(cfg, app, "--kernel", "kernel", c.kernel);
    fill_from_config(cfg, app, "--peak", "peak", c.peak);
    fill_from_config(cfg, app, "--seed", "seed", c.seed);
    if (!(c.peak > 0.0)) throw ConfigError("--peak must be positive");
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw ConfigError(std::string(flag) + " is required");
}

struct SolverFlags {
    std::string algo = "pnp-bpgm";
    RestoreOptions options;
    bool no_safeguard = false;
    std::string report;
    std::string truth;
};

void add_solver_flags(CLI::App& app, SolverFlags& s) {
    app.add_option("--algo", s.algo, "pgm | bpgm | pnp-pgm | pnp-bpgm | red-sd | red-bsd");
    app.add_option("--href", s.options.href, "quadratic | burg | shannon");
    app.add_option("--denoiser", s.options.denoiser, "identity | smooth:ALPHA | contract:RHO | median:W");
    app.add_option("--reg", s.options.regularizer, "zero | nonneg | l1:LAMBDA (pgm/bpgm)");
    app.add_option("--gamma", s.options.gamma, "step size");
    app.add_option("--tau", s.options.tau, "RED regularization weight");
    app.add_option("--iters", s.options.iters, "maximum iterations K");
    app.add_option("--tol", s.options.tol, "relative fixed-point residual tolerance");
    app.add_flag("--no-safeguard", s.no_safeguard, "disable Burg step halving");
    app.add_option("--report", s.report, "JSON run report path");
    app.add_option("--truth", s.truth, "ground truth image for a PSNR trace");
}

void resolve_solver_flags(const json& cfg, CLI::App& app, SolverFlags& s) {
    fill_from_config(cfg, app, "--algo", "algo", s.algo);
    fill_from_config(cfg, app, "--href", "href", s.options.href);
    fill_from_config(cfg, app, "--denoiser", "denoiser", s.options.denoiser);
    fill_from_config(cfg, app, "--reg", "reg", s.options.regularizer);
    fill_from_config(cfg, app, "--gamma", "gamma", s.options.gamma);
    fill_from_config(cfg, app, "--tau", "tau", s.options.tau);
    fill_from_config(cfg, app, "--iters", "iters", s.options.iters);
    fill_from_config(cfg, app, "--tol", "tol", s.options.tol);
    fill_from_config(cfg, app, "--report", "report", s.report);
    fill_from_config(cfg, app, "--truth", "truth", s.truth);
    if (app.get_option("--no-safeguard")->count() == 0 && cfg.contains("safeguard")) {
        s.no_safeguard = !cfg.at("safeguard").get<bool>();
    }
    s.options.algorithm = parse_algorithm(s.algo);
    s.options.safeguard = !s.no_safeguard;
}

int run_degrade(CLI::App& app, Common& c) {
    resolve_common(load_config(c.config), app, c);
    require(c.input, "--input");
    require(c.output, "--output");
    const Image clean = load_ground_truth(c.input);
    const Image y = degrade(clean, parse_kernel_spec(c.kernel), c.peak, c.seed);
    save_counts_pgm(c.output, y);
    return kOk;
}

int run_restore(CLI::App& app, Common& c, SolverFlags& s) {
    const json cfg = load_config(c.config);
    resolve_common(cfg, app, c);
    resolve_solver_flags(cfg, app, s);
    require(c.input, "--input");
    s.options.seed = c.seed;
    const Image y = load_image(c.input).raw();
    std::optional<Image> truth;
    if (!s.truth.empty()) truth = load_ground_truth(s.truth);
    const RestoreResult result =
        restore(y, parse_kernel_spec(c.kernel), c.peak, s.options, truth ? &*truth : nullptr);
    if (!c.output.empty()) save_image(c.output, result.normalized, 16);
    if (!s.report.empty()) write_json(s.report, report_to_json(result.report));
    std::cout << "iterations " << result.report.iterations_used << " backtracks " << result.report.backtracks;
    if (!result.report.psnr_trace.empty()) std::cout << " psnr " << result.report.psnr_trace.back();
    std::cout << "\n";
    return kOk;
}

int run_eval(CLI::App& app, Common& c, std::string& truth_path) {
    const json cfg = load_config(c.config);
    resolve_common(cfg, app, c);
    fill_from_config(cfg, app, "--truth", "truth", truth_path);
    require(c.input, "--input");
    require(truth_path, "--truth");
    const Image truth = load_ground_truth(truth_path);
    const Image test = load_ground_truth(c.input);
    std::printf("%.4f\n", evaluate(truth, test, c.peak));
    return kOk;
}

int run_bench(CLI::App& app, Common& c, SolverFlags& s, std::vector<std::string>& images,
              unsigned& threads) {
    const json cfg = load_config(c.config);
    BenchSpec spec = cfg.contains("methods") ? bench_spec_from_json(cfg) : BenchSpec{};
    resolve_common(cfg, app, c);
    spec.kernel = c.kernel;
    spec.peak = c.peak;
    spec.seed = c.seed;
    if (!images.empty()) spec.images = images;
    if (!c.input.empty()) spec.images.insert(spec.images.begin(), c.input);
    if (app.get_option("--threads")->count() > 0) spec.threads = threads;
    if (app.get_option("--report")->count() > 0) spec.reports_dir = s.report;
    if (spec.methods.empty()) {
        resolve_solver_flags(cfg, app, s);
        spec.methods.push_back({s.algo, s.options});
    }
    if (spec.images.empty()) throw ConfigError("bench needs at least one image (--input, --images or config)");
    const BenchTable table = bench(spec);
    const std::string csv = table.to_csv();
    if (c.output.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) throw IoError("cannot write " + c.output);
        out << csv;
    }
    return kOk;
}

struct TheoremFlags {
    double mu_h = 1.0, L_h = 1.0, mu_f = 1.0, L_f = 1.0, M = 1.0;
    double gamma = 0.0;
};

int run_check_theorem(const TheoremFlags& t) {
    const TheoremCertificate cert = theorem_gate(t.mu_h, t.L_h, t.mu_f, t.L_f, t.M);
    json doc = certificate_to_json(cert);
    if (t.gamma > 0.0) {
        doc["gamma"] = t.gamma;
        doc["gamma_admissible"] = cert.admits_step(t.gamma);
    }
    std::cout << doc.dump(2) << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bregman plug-and-play and RED solvers for Poisson deblurring"};
    app.require_subcommand(1);

    Common degrade_c, restore_c, eval_c, bench_c;
    SolverFlags restore_s, bench_s;
    std::string eval_truth;
    std::vector<std::string> bench_images;
    unsigned bench_threads = 1;
    TheoremFlags theorem;
    std::string phantom_name = "blocks", phantom_output;
    std::size_t phantom_size = 64;

    auto* degrade_cmd = app.add_subcommand("degrade", "blur and Poisson-corrupt a clean image (writes 16-bit count PGM)");
    add_common(*degrade_cmd, degrade_c);

    auto* restore_cmd = app.add_subcommand("restore", "restore a count image");
    add_common(*restore_cmd, restore_c);
    add_solver_flags(*restore_cmd, restore_s);

    auto* eval_cmd = app.add_subcommand("eval", "PSNR of --input against --truth on the [0, peak] scale");
    add_common(*eval_cmd, eval_c);
    eval_cmd->add_option("--truth", eval_truth, "ground truth image");

    auto* bench_cmd = app.add_subcommand("bench", "PSNR table over images and methods (CSV)");
    add_common(*bench_cmd, bench_c);
    add_solver_flags(*bench_cmd, bench_s);
    bench_cmd->add_option("--images", bench_images, "image files or phantom:NAME[:SIZE]");
    bench_cmd->add_option("--threads", bench_threads, "worker threads");

    auto* theorem_cmd = app.add_subcommand("check-theorem", "evaluate the fixed-point convergence conditions");
    theorem_cmd->add_option("--mu-h", theorem.mu_h, "strong convexity of h");
    theorem_cmd->add_option("--L-h", theorem.L_h, "gradient Lipschitz constant of h");
    theorem_cmd->add_option("--mu-f", theorem.mu_f, "strong convexity of f");
    theorem_cmd->add_option("--L-f", theorem.L_f, "gradient Lipschitz constant of f");
    theorem_cmd->add_option("--M", theorem.M, "Lipschitz constant of the denoiser");
    theorem_cmd->add_option("--gamma", theorem.gamma, "step size to test against the interval");

    auto* phantom_cmd = app.add_subcommand("phantom", "write a synthetic test image");
    phantom_cmd->add_option("--name", phantom_name, "blocks | bump");
    phantom_cmd->add_option("--size", phantom_size, "side length in pixels");
    phantom_cmd->add_option("--output", phantom_output, "output image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*degrade_cmd) return run_degrade(*degrade_cmd, degrade_c);
        if (*restore_cmd) return run_restore(*restore_cmd, restore_c, restore_s);
        if (*eval_cmd) return run_eval(*eval_cmd, eval_c, eval_truth);
        if (*bench_cmd) return run_bench(*bench_cmd, bench_c, bench_s, bench_images, bench_threads);
        if (*theorem_cmd) return run_check_theorem(theorem);
        if (*phantom_cmd) {
            save_image(phantom_output, make_phantom(phantom_name, phantom_size), 8);
            return kOk;
        }
    } catch (const SolverAbort& e) {
        std::cerr << "solver abort: " << e.what() << "\n";
        return kSolverAbort;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
