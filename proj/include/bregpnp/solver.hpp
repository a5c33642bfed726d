#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bregpnp/bregman_prox.hpp"
#include "bregpnp/denoiser.hpp"
#include "bregpnp/fidelity.hpp"
#include "bregpnp/image.hpp"
#include "bregpnp/reference_function.hpp"

namespace bregpnp {

enum class Algorithm { Pgm, Bpgm, PnpPgm, PnpBpgm, RedSd, RedBsd };

std::string to_string(Algorithm algorithm);
/// "pgm", "bpgm", "pnp-pgm", "pnp-bpgm", "red-sd" or "red-bsd".
Algorithm parse_algorithm(const std::string& name);

/// Bregman variants use the configured reference function; the Euclidean
/// variants always work in the quadratic geometry.
bool is_bregman(Algorithm algorithm);
bool uses_denoiser(Algorithm algorithm);

struct SolverConfig {
    Algorithm algorithm = Algorithm::PnpBpgm;
    ReferenceFunction h = ReferenceFunction::quadratic();
    std::shared_ptr<const Fidelity> fidelity;
    Regularizer regularizer;                    ///< PGM / BPGM
    std::shared_ptr<const Denoiser> denoiser;   ///< PnP / RED
    double gamma = 0.5;
    double tau = 1e-3;                          ///< RED weight
    int max_iters = 100;
    double tol = 1e-8;                          ///< relative fixed-point residual
    bool safeguard = true;                      ///< Burg step halving
    int max_halvings = 30;
    double positivity_eps = 1e-8;
    /// Use the closed-form Burg step x / (1 + gamma x g) instead of grad_h* (grad_h - gamma g).
    bool fast_path = true;

    /// Explicit start; otherwise measurements plus seeded white noise (see initial_estimate).
    std::optional<Image> x0;
    double init_noise_std = 0.0;
    std::uint64_t seed = 0;

    std::optional<Image> ground_truth;          ///< enables the PSNR trace
    double psnr_peak = 1.0;
    bool track_objective = true;

    /// Called with (k, x^{k+1}) after every iteration.
    std::function<void(int, const Image&)> on_iterate;
};

struct RunReport {
    Algorithm algorithm = Algorithm::Pgm;
    Image final;
    std::vector<double> residuals;
    std::vector<double> objective;
    std::vector<double> psnr_trace;
    std::vector<double> step_sizes;   ///< effective gamma per iteration
    int iterations_used = 0;
    int backtracks = 0;               ///< total step halvings
    bool converged = false;
    /// "f+g", "f", "red" (exact RED objective) or "red-surrogate".
    std::string objective_label;
};

/// Default start: y (A^T y when the shapes differ) plus N(0, noise_std^2) noise,
/// clamped to >= eps when h lives on the positive orthant.
Image initial_estimate(const Fidelity& f, const ReferenceFunction& h, double noise_std, std::uint64_t seed,
                       double eps = 1e-8);

/// grad_h*(grad_h(x) - gamma grad). Throws DomainError for Burg when a dual
/// coordinate leaves the negative orthant.
Image mirror_step(const ReferenceFunction& h, const Image& x, const Image& grad, double gamma);

/// Closed form of the Burg mirror step, x / (1 + gamma x grad).
Image burg_mirror_step(const Image& x, const Image& grad, double gamma);

struct BacktrackResult {
    Image z;
    double gamma_used = 0.0;
    int halvings = 0;
};

/// Halves gamma until 1 + gamma x grad > eps everywhere, then takes the Burg
/// mirror step (closed form or generic). Throws SolverAbort after max_halvings.
BacktrackResult burg_backtrack(const Image& x, const Image& grad, double gamma, int max_halvings = 30,
                               double eps = 1e-8, bool fast_path = true);

/// f(x) + tau x^T (x - D(x)).
double red_objective(const Fidelity& f, const Denoiser& d, double tau, const Image& x);

/// Runs cfg.algorithm.
RunReport solve(const SolverConfig& cfg);

// Named entry points; each checks that cfg.algorithm matches.
RunReport pgm(const SolverConfig& cfg);
RunReport bpgm(const SolverConfig& cfg);
RunReport pnp_pgm(const SolverConfig& cfg);
RunReport pnp_bpgm(const SolverConfig& cfg);
RunReport red_sd(const SolverConfig& cfg);
RunReport red_bsd(const SolverConfig& cfg);

} // namespace bregpnp
