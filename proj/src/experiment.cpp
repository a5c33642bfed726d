#include "bregpnp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <thread>

#include "bregpnp/errors.hpp"
#include "bregpnp/image_io.hpp"
#include "bregpnp/linear_operator.hpp"
#include "bregpnp/metrics.hpp"
#include "bregpnp/random.hpp"
#include "bregpnp/report.hpp"

namespace bregpnp {

Image make_phantom(const std::string& name, std::size_t size) {
    if (size < 16) throw ConfigError("phantoms need size >= 16");
    Image img(size, size);
    const double n = static_cast<double>(size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            const double u = (static_cast<double>(c) + 0.5) / n;
            const double v = (static_cast<double>(r) + 0.5) / n;
            double value = 0.0;
            if (name == "blocks") {
                value = 0.25;
                if (u > 0.1 && u < 0.45 && v > 0.12 && v < 0.55) value = 0.8;
                if (u > 0.55 && u < 0.9 && v > 0.2 && v < 0.4) value = 0.55;
                if (u > 0.5 && u < 0.7 && v > 0.6 && v < 0.9) value = 0.05;
                const double du = u - 0.3;
                const double dv = v - 0.75;
                if (du * du + dv * dv < 0.15 * 0.15) value = 1.0;
                if (u > 0.75 && u < 0.85 && v > 0.55 && v < 0.95) value = 0.65;
            } else if (name == "bump") {
                auto bump = [&](double cu, double cv, double s) {
                    return std::exp(-((u - cu) * (u - cu) + (v - cv) * (v - cv)) / (2.0 * s * s));
                };
                value = 0.15 + 0.6 * bump(0.35, 0.4, 0.15) + 0.4 * bump(0.7, 0.65, 0.1) +
                        0.1 * std::sin(2.0 * std::numbers::pi * u);
            } else {
                throw ConfigError("unknown phantom '" + name + "' (expected blocks or bump)");
            }
            img(r, c) = std::clamp(value, 0.0, 1.0);
        }
    }
    return img;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

} // namespace

Image load_ground_truth(const std::string& source) {
    if (source.rfind("phantom:", 0) == 0) {
        const auto parts = split(source.substr(8), ':');
        if (parts.empty() || parts.size() > 2) throw ConfigError("bad phantom source '" + source + "'");
        std::size_t size = 64;
        if (parts.size() == 2) size = static_cast<std::size_t>(std::stoul(parts[1]));
        return make_phantom(parts[0], size);
    }
    return load_image(source).image;
}

std::string image_label(const std::string& source) {
    if (source.rfind("phantom:", 0) == 0) {
        std::string label = source.substr(8);
        std::replace(label.begin(), label.end(), ':', '_');
        return label;
    }
    return std::filesystem::path(source).stem().string();
}

Image degrade(const Image& x_clean, const Kernel& kernel, double peak, std::uint64_t seed) {
    if (!(peak > 0.0)) throw ConfigError("peak must be positive");
    if (!x_clean.all_finite() || !x_clean.all_nonnegative()) {
        throw ConfigError("clean image must be finite and nonnegative");
    }
    const Image blurred = conv2d_forward(peak * x_clean, kernel);
    Rng rng(seed);
    Image y = blurred;
    for (double& v : y.values()) {
        // A nonnegative kernel keeps the means nonnegative; rounding may leave -0-ish values.
        if (v < -1e-9 * peak) throw std::logic_error("negative blurred intensity in degrade");
        v = static_cast<double>(rng.poisson(std::max(v, 0.0)));
    }
    return y;
}

ReferenceFunction experiment_reference(const std::string& href, double peak) {
    switch (parse_reference_kind(href)) {
    case ReferenceKind::Quadratic: return ReferenceFunction::quadratic();
    case ReferenceKind::BurgEntropy: return ReferenceFunction::burg(1e-4, std::max(peak, 2e-4));
    case ReferenceKind::ShannonEntropy: return ReferenceFunction::shannon(1e-4, std::max(peak, 2e-4));
    }
    throw ConfigError("unsupported reference function");
}

RestoreResult restore(const Image& y, const Kernel& kernel, double peak, const RestoreOptions& options,
                      const Image* truth) {
    if (!(peak > 0.0)) throw ConfigError("peak must be positive");
    auto op = std::make_shared<ConvolutionOperator>(kernel, y.shape());
    auto fidelity = std::make_shared<Fidelity>(Fidelity::poisson(op, y));

    SolverConfig cfg;
    cfg.algorithm = options.algorithm;
    cfg.h = experiment_reference(options.href, peak);
    cfg.fidelity = fidelity;
    cfg.regularizer = parse_regularizer(options.regularizer);
    if (uses_denoiser(options.algorithm)) cfg.denoiser = parse_denoiser_spec(options.denoiser);
    cfg.gamma = options.gamma;
    cfg.tau = options.tau;
    cfg.max_iters = options.iters;
    cfg.tol = options.tol;
    cfg.safeguard = options.safeguard;
    cfg.init_noise_std = 1e-3 * peak;
    cfg.seed = options.seed;
    cfg.psnr_peak = peak;
    if (truth) cfg.ground_truth = peak * *truth;

    RestoreResult result;
    result.report = solve(cfg);
    result.estimate = result.report.final;
    result.normalized = (1.0 / peak) * result.estimate;
    for (double& v : result.normalized.values()) v = std::clamp(v, 0.0, 1.0);
    return result;
}

double evaluate(const Image& truth, const Image& test, double peak) {
    return psnr(peak * truth, peak * test, peak);
}

RestoreOptions restore_options_from_json(const nlohmann::json& doc, RestoreOptions base) {
    if (doc.contains("algo")) base.algorithm = parse_algorithm(doc.at("algo").get<std::string>());
    if (doc.contains("href")) base.href = doc.at("href").get<std::string>();
    if (doc.contains("denoiser")) base.denoiser = doc.at("denoiser").get<std::string>();
    if (doc.contains("reg")) base.regularizer = doc.at("reg").get<std::string>();
    if (doc.contains("gamma")) base.gamma = doc.at("gamma").get<double>();
    if (doc.contains("tau")) base.tau = doc.at("tau").get<double>();
    if (doc.contains("iters")) base.iters = doc.at("iters").get<int>();
    if (doc.contains("tol")) base.tol = doc.at("tol").get<double>();
    if (doc.contains("safeguard")) base.safeguard = doc.at("safeguard").get<bool>();
    if (doc.contains("seed")) base.seed = doc.at("seed").get<std::uint64_t>();
    return base;
}

BenchSpec bench_spec_from_json(const nlohmann::json& doc) {
    BenchSpec spec;
    try {
        spec.images = doc.at("images").get<std::vector<std::string>>();
        spec.kernel = doc.value("kernel", spec.kernel);
        spec.peak = doc.value("peak", spec.peak);
        spec.seed = doc.value("seed", spec.seed);
        spec.reports_dir = doc.value("reports_dir", spec.reports_dir);
        spec.threads = doc.value("threads", spec.threads);
        for (const auto& m : doc.at("methods")) {
            MethodSpec method;
            method.options = restore_options_from_json(m);
            method.name = m.value("name", to_string(method.options.algorithm));
            spec.methods.push_back(std::move(method));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad bench spec: ") + e.what());
    }
    return spec;
}

std::optional<double> BenchTable::average(std::size_t row) const {
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& cell : cells.at(row)) {
        if (cell) {
            total += *cell;
            ++count;
        }
    }
    if (count == 0) return std::nullopt;
    return total / static_cast<double>(count);
}

namespace {

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char ch : text) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string format_cell(const std::optional<double>& value) {
    if (!value) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *value);
    return buf;
}

} // namespace

std::string BenchTable::to_csv() const {
    std::string out = "method";
    for (const auto& c : columns) out += "," + csv_field(c);
    out += ",Average\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += csv_field(rows[r]);
        for (const auto& cell : cells[r]) out += "," + format_cell(cell);
        out += "," + format_cell(average(r)) + "\n";
    }
    return out;
}

BenchTable bench(const BenchSpec& spec) {
    const Kernel kernel = parse_kernel_spec(spec.kernel);
    const std::size_t n_images = spec.images.size();
    const std::size_t n_methods = spec.methods.size();

    BenchTable table;
    table.rows.push_back("Corrupted");
    for (const auto& m : spec.methods) table.rows.push_back(m.name);
    for (const auto& src : spec.images) table.columns.push_back(image_label(src));
    table.cells.assign(table.rows.size(), std::vector<std::optional<double>>(n_images));

    // Degradation is sequential and cheap; it fixes every cell's input before any solver runs.
    std::vector<std::optional<Image>> truths(n_images);
    std::vector<std::optional<Image>> measurements(n_images);
    for (std::size_t i = 0; i < n_images; ++i) {
        try {
            Image truth = load_ground_truth(spec.images[i]);
            Image y = degrade(truth, kernel, spec.peak, spec.seed + i);
            table.cells[0][i] = psnr(spec.peak * truth, y, spec.peak);
            truths[i] = std::move(truth);
            measurements[i] = std::move(y);
        } catch (const std::exception&) {
            // Recorded as NA for the whole column.
        }
    }

    if (!spec.reports_dir.empty()) std::filesystem::create_directories(spec.reports_dir);

    const std::size_t n_cells = n_images * n_methods;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t cell = next++; cell < n_cells; cell = next++) {
            const std::size_t i = cell / n_methods;
            const std::size_t m = cell % n_methods;
            if (!measurements[i]) continue;
            try {
                RestoreOptions options = spec.methods[m].options;
                options.seed = spec.seed + i;
                RestoreResult result = restore(*measurements[i], kernel, spec.peak, options, &*truths[i]);
                table.cells[m + 1][i] = psnr(spec.peak * *truths[i], result.estimate, spec.peak);
                if (!spec.reports_dir.empty()) {
                    const std::string name = table.columns[i] + "__" + spec.methods[m].name + ".json";
                    write_json((std::filesystem::path(spec.reports_dir) / name).string(),
                               report_to_json(result.report));
                }
            } catch (const std::exception&) {
                // NA cell; the batch continues.
            }
        }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(n_cells)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return table;
}

} // namespace bregpnp
