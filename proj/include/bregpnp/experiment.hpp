#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bregpnp/image.hpp"
#include "bregpnp/kernel.hpp"
#include "bregpnp/solver.hpp"

namespace bregpnp {

/// Synthetic test images in [0, 1]: "blocks" (piecewise constant) and "bump" (smooth).
Image make_phantom(const std::string& name, std::size_t size = 64);

/// "phantom:NAME[:SIZE]" or an image file path; returns intensities in [0, 1].
Image load_ground_truth(const std::string& source);
/// Short label for tables: phantom name or file stem.
std::string image_label(const std::string& source);

/// Scales x_clean to [0, peak], blurs it circularly and draws independent Poisson
/// counts with the given seed.
Image degrade(const Image& x_clean, const Kernel& kernel, double peak, std::uint64_t seed);

struct RestoreOptions {
    Algorithm algorithm = Algorithm::PnpBpgm;
    std::string href = "burg";
    std::string denoiser = "smooth:0.5";
    std::string regularizer = "nonneg";
    double gamma = 0.5;
    double tau = 1e-3;
    int iters = 100;
    double tol = 1e-8;
    bool safeguard = true;
    std::uint64_t seed = 0;
};

struct RestoreResult {
    Image estimate;    ///< on the [0, peak] count scale
    Image normalized;  ///< estimate / peak clipped to [0, 1], for file output
    RunReport report;
};

/// Reference function for the experiment geometry; Burg/Shannon use the box [1e-4, peak].
ReferenceFunction experiment_reference(const std::string& href, double peak);

/// Poisson deblurring of counts y. When `truth` (in [0, 1]) is given the report
/// carries a PSNR trace on the [0, peak] scale.
RestoreResult restore(const Image& y, const Kernel& kernel, double peak, const RestoreOptions& options,
                      const Image* truth = nullptr);

/// PSNR of two [0, 1] images evaluated on the [0, peak] scale.
double evaluate(const Image& truth, const Image& test, double peak);

struct MethodSpec {
    std::string name;
    RestoreOptions options;
};

struct BenchSpec {
    std::vector<std::string> images;
    std::string kernel = "uniform9";
    double peak = 8.0;
    std::uint64_t seed = 0;
    std::vector<MethodSpec> methods;
    std::string reports_dir;  ///< per-cell JSON run reports, when non-empty
    unsigned threads = 1;
};

BenchSpec bench_spec_from_json(const nlohmann::json& doc);
RestoreOptions restore_options_from_json(const nlohmann::json& doc, RestoreOptions base = {});

/// Rows are "Corrupted" followed by the methods, columns the images followed by
/// "Average". Missing cells (failed load or solver abort) are empty optionals.
struct BenchTable {
    std::vector<std::string> columns;
    std::vector<std::string> rows;
    std::vector<std::vector<std::optional<double>>> cells;

    std::optional<double> average(std::size_t row) const;
    std::string to_csv() const;
};

BenchTable bench(const BenchSpec& spec);

} // namespace bregpnp
