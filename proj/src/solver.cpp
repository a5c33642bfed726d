#include "bregpnp/solver.hpp"

#include <algorithm>
#include <cmath>

#include "bregpnp/errors.hpp"
#include "bregpnp/metrics.hpp"
#include "bregpnp/random.hpp"

namespace bregpnp {

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::Pgm: return "pgm";
    case Algorithm::Bpgm: return "bpgm";
    case Algorithm::PnpPgm: return "pnp-pgm";
    case Algorithm::PnpBpgm: return "pnp-bpgm";
    case Algorithm::RedSd: return "red-sd";
    case Algorithm::RedBsd: return "red-bsd";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
    for (Algorithm a : {Algorithm::Pgm, Algorithm::Bpgm, Algorithm::PnpPgm, Algorithm::PnpBpgm,
                        Algorithm::RedSd, Algorithm::RedBsd}) {
        if (to_string(a) == name) return a;
    }
    throw ConfigError("unknown algorithm '" + name + "'");
}

bool is_bregman(Algorithm algorithm) {
    return algorithm == Algorithm::Bpgm || algorithm == Algorithm::PnpBpgm || algorithm == Algorithm::RedBsd;
}

bool uses_denoiser(Algorithm algorithm) {
    return algorithm != Algorithm::Pgm && algorithm != Algorithm::Bpgm;
}

Image initial_estimate(const Fidelity& f, const ReferenceFunction& h, double noise_std, std::uint64_t seed,
                       double eps) {
    const Image& y = f.measurements();
    Image x = y.shape() == f.op().input_shape() ? y : f.op().apply_adjoint(y);
    if (noise_std > 0.0) {
        Rng rng(seed);
        for (double& v : x.values()) v += noise_std * rng.normal();
    }
    if (h.needs_positive()) {
        for (double& v : x.values()) v = std::max(v, eps);
    }
    return x;
}

Image mirror_step(const ReferenceFunction& h, const Image& x, const Image& grad, double gamma) {
    require_same_shape(x, grad, "mirror_step");
    const Image dual = axpy(grad_h(h, x), -gamma, grad);
    if (h.kind() == ReferenceKind::BurgEntropy) {
        std::size_t bad = 0;
        for (double v : dual.values()) bad += !(v < 0.0);
        if (bad > 0) {
            throw DomainError("mirror step left the burg dual domain at " + std::to_string(bad) +
                              " coordinates (enable the safeguard or reduce gamma)");
        }
    }
    return grad_h_conj(h, dual);
}

Image burg_mirror_step(const Image& x, const Image& grad, double gamma) {
    require_same_shape(x, grad, "burg_mirror_step");
    Image z = x;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double den = 1.0 + gamma * x[i] * grad[i];
        bad += !(den > 0.0);
        z[i] = x[i] / den;
    }
    if (bad > 0) {
        throw DomainError("mirror step left the burg dual domain at " + std::to_string(bad) +
                          " coordinates (enable the safeguard or reduce gamma)");
    }
    return z;
}

BacktrackResult burg_backtrack(const Image& x, const Image& grad, double gamma, int max_halvings, double eps,
                               bool fast_path) {
    require_same_shape(x, grad, "burg_backtrack");
    if (!x.all_positive()) throw DomainError("burg_backtrack needs a strictly positive point");
    double step = gamma;
    for (int halvings = 0;; ++halvings) {
        bool feasible = true;
        for (std::size_t i = 0; i < x.size() && feasible; ++i) {
            feasible = 1.0 + step * x[i] * grad[i] > eps;
        }
        if (feasible) {
            const ReferenceFunction burg = ReferenceFunction::burg();
            Image z = fast_path ? burg_mirror_step(x, grad, step) : mirror_step(burg, x, grad, step);
            return {std::move(z), step, halvings};
        }
        if (halvings == max_halvings) {
            throw SolverAbort("positivity safeguard exhausted " + std::to_string(max_halvings) +
                              " step halvings (gamma reduced to " + std::to_string(step) + ")");
        }
        step *= 0.5;
    }
}

double red_objective(const Fidelity& f, const Denoiser& d, double tau, const Image& x) {
    return f.value(x) + tau * dot(x, x - d.apply(x));
}

namespace {

void validate(const SolverConfig& cfg) {
    if (!cfg.fidelity) throw ConfigError("solver config has no fidelity");
    if (!(cfg.gamma > 0.0)) throw ConfigError("step size gamma must be positive");
    if (cfg.max_iters < 0) throw ConfigError("iteration count must be nonnegative");
    if (!(cfg.tol >= 0.0)) throw ConfigError("tolerance must be nonnegative");
    if (cfg.max_halvings < 0) throw ConfigError("max_halvings must be nonnegative");
    if (uses_denoiser(cfg.algorithm) && !cfg.denoiser) {
        throw ConfigError(to_string(cfg.algorithm) + " needs a denoiser");
    }
    const bool red = cfg.algorithm == Algorithm::RedSd || cfg.algorithm == Algorithm::RedBsd;
    if (red && !(cfg.tau >= 0.0)) throw ConfigError("RED weight tau must be nonnegative");
    if (cfg.algorithm == Algorithm::Bpgm || cfg.algorithm == Algorithm::PnpBpgm) {
        // Same pairs relative_smoothness certifies; throws naming the pair otherwise.
        const FidelityKind fk = cfg.fidelity->kind();
        const ReferenceKind hk = cfg.h.kind();
        const bool supported = (fk == FidelityKind::Poisson && hk == ReferenceKind::BurgEntropy) ||
                               (fk == FidelityKind::Gaussian && hk == ReferenceKind::Quadratic);
        if (!supported) {
            throw ConfigError(to_string(cfg.algorithm) + ": unsupported (fidelity, reference) pair (" +
                              to_string(fk) + ", " + to_string(hk) + ")");
        }
    }
    if (cfg.ground_truth && cfg.ground_truth->shape() != cfg.fidelity->op().input_shape()) {
        throw DimensionError("ground truth shape does not match the operator input shape");
    }
}

class Iteration {
public:
    explicit Iteration(const SolverConfig& cfg)
        : cfg_(cfg), f_(*cfg.fidelity),
          geometry_(is_bregman(cfg.algorithm) ? cfg.h : ReferenceFunction::quadratic()) {}

    RunReport run() {
        RunReport report;
        report.algorithm = cfg_.algorithm;
        report.objective_label = objective_label();

        Image x = cfg_.x0 ? *cfg_.x0
                          : initial_estimate(f_, geometry_, cfg_.init_noise_std, cfg_.seed, cfg_.positivity_eps);
        if (x.shape() != f_.op().input_shape()) throw DimensionError("x0 does not match the operator input shape");
        if (geometry_.needs_positive() && !x.all_positive()) {
            throw ConfigError("x0 must be strictly positive in the " + to_string(geometry_.kind()) + " geometry");
        }

        for (int k = 0; k < cfg_.max_iters; ++k) {
            double step = cfg_.gamma;
            int halvings = 0;
            Image next = iterate(x, step, halvings);
            report.backtracks += halvings;

            const double residual = norm2(next - x) / std::max(norm2(x), 1e-12);
            report.residuals.push_back(residual);
            report.step_sizes.push_back(step);
            if (cfg_.track_objective) report.objective.push_back(objective(next));
            if (cfg_.ground_truth) report.psnr_trace.push_back(psnr(*cfg_.ground_truth, next, cfg_.psnr_peak));
            x = std::move(next);
            report.iterations_used = k + 1;
            if (cfg_.on_iterate) cfg_.on_iterate(k, x);
            if (residual < cfg_.tol) {
                report.converged = true;
                break;
            }
        }
        report.final = std::move(x);
        return report;
    }

private:
    Image search_direction(const Image& x) const {
        Image grad = f_.gradient(x);
        if (cfg_.algorithm == Algorithm::RedSd || cfg_.algorithm == Algorithm::RedBsd) {
            const Image dx = cfg_.denoiser->apply(x);
            for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += cfg_.tau * (x[i] - dx[i]);
        }
        return grad;
    }

    Image forward_step(const Image& x, const Image& grad, double& step, int& halvings) const {
        if (geometry_.kind() == ReferenceKind::BurgEntropy) {
            if (cfg_.safeguard) {
                BacktrackResult bt = burg_backtrack(x, grad, cfg_.gamma, cfg_.max_halvings, cfg_.positivity_eps,
                                                    cfg_.fast_path);
                step = bt.gamma_used;
                halvings = bt.halvings;
                return std::move(bt.z);
            }
            return cfg_.fast_path ? burg_mirror_step(x, grad, step) : mirror_step(geometry_, x, grad, step);
        }
        return mirror_step(geometry_, x, grad, step);
    }

    Image iterate(const Image& x, double& step, int& halvings) const {
        const Image grad = search_direction(x);
        Image z = forward_step(x, grad, step, halvings);
        Image next;
        switch (cfg_.algorithm) {
        case Algorithm::Pgm:
        case Algorithm::Bpgm: next = bregman_prox(geometry_, z, cfg_.regularizer, step); break;
        case Algorithm::PnpPgm:
        case Algorithm::PnpBpgm: next = cfg_.denoiser->apply(z); break;
        case Algorithm::RedSd:
        case Algorithm::RedBsd: next = std::move(z); break;
        }
        if (geometry_.needs_positive()) {
            for (double& v : next.values()) v = std::max(v, cfg_.positivity_eps);
        }
        return next;
    }

    double objective(const Image& x) const {
        switch (cfg_.algorithm) {
        case Algorithm::Pgm:
        case Algorithm::Bpgm: return f_.value(x) + regularizer_value(cfg_.regularizer, x);
        case Algorithm::PnpPgm:
        case Algorithm::PnpBpgm: return f_.value(x);
        case Algorithm::RedSd:
        case Algorithm::RedBsd: return red_objective(f_, *cfg_.denoiser, cfg_.tau, x);
        }
        return 0.0;
    }

    std::string objective_label() const {
        switch (cfg_.algorithm) {
        case Algorithm::Pgm:
        case Algorithm::Bpgm: return "f+g";
        case Algorithm::PnpPgm:
        case Algorithm::PnpBpgm: return "f";
        case Algorithm::RedSd:
        case Algorithm::RedBsd:
            return cfg_.denoiser->is_affine() && cfg_.denoiser->has_symmetric_jacobian() ? "red" : "red-surrogate";
        }
        return "";
    }

    const SolverConfig& cfg_;
    const Fidelity& f_;
    ReferenceFunction geometry_;
};

RunReport run_checked(const SolverConfig& cfg, Algorithm expected) {
    if (cfg.algorithm != expected) {
        throw ConfigError("config selects " + to_string(cfg.algorithm) + " but " + to_string(expected) +
                          " was called");
    }
    return solve(cfg);
}

} // namespace

RunReport solve(const SolverConfig& cfg) {
    validate(cfg);
    return Iteration(cfg).run();
}

RunReport pgm(const SolverConfig& cfg) { return run_checked(cfg, Algorithm::Pgm); }
RunReport bpgm(const SolverConfig& cfg) { return run_checked(cfg, Algorithm::Bpgm); }
RunReport pnp_pgm(const SolverConfig& cfg) { return run_checked(cfg, Algorithm::PnpPgm); }
RunReport pnp_bpgm(const SolverConfig& cfg) { return run_checked(cfg, Algorithm::PnpBpgm); }
RunReport red_sd(const SolverConfig& cfg) { return run_checked(cfg, Algorithm::RedSd); }
RunReport red_bsd(const SolverConfig& cfg) { return run_checked(cfg, Algorithm::RedBsd); }

} // namespace bregpnp
