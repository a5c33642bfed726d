#include "bregpnp/report.hpp"

#include <cmath>
#include <fstream>

#include "bregpnp/errors.hpp"

namespace bregpnp {

namespace {

// JSON has no infinity; the indicator regularizer can produce one.
nlohmann::json trace(const std::vector<double>& values) {
    nlohmann::json out = nlohmann::json::array();
    for (double v : values) {
        if (std::isfinite(v)) {
            out.push_back(v);
        } else {
            out.push_back(nullptr);
        }
    }
    return out;
}

} // namespace

nlohmann::json report_to_json(const RunReport& report) {
    return {
        {"algorithm", to_string(report.algorithm)},
        {"iterations_used", report.iterations_used},
        {"converged", report.converged},
        {"backtracks", report.backtracks},
        {"objective_label", report.objective_label},
        {"width", report.final.width()},
        {"height", report.final.height()},
        {"residuals", trace(report.residuals)},
        {"objective", trace(report.objective)},
        {"psnr", trace(report.psnr_trace)},
        {"step_sizes", trace(report.step_sizes)},
    };
}

nlohmann::json certificate_to_json(const TheoremCertificate& cert) {
    nlohmann::json doc = {
        {"mu_h", cert.mu_h},
        {"L_h", cert.L_h},
        {"mu_f", cert.mu_f},
        {"L_f", cert.L_f},
        {"M", cert.M},
        {"satisfied", cert.satisfied},
    };
    doc["m_bound"] = cert.m_bound ? nlohmann::json(*cert.m_bound) : nlohmann::json("unbounded");
    if (cert.gamma_interval_empty()) {
        doc["gamma_interval"] = "empty";
    } else {
        doc["gamma_interval"] = {cert.gamma_lower, cert.gamma_upper};
    }
    return doc;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << doc.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + path);
}

} // namespace bregpnp
