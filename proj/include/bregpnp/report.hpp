#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "bregpnp/solver.hpp"
#include "bregpnp/theorem.hpp"

namespace bregpnp {

/// Traces and summary of a run; the final image itself is not embedded.
nlohmann::json report_to_json(const RunReport& report);
nlohmann::json certificate_to_json(const TheoremCertificate& cert);

/// Writes pretty-printed JSON followed by a newline. Throws IoError.
void write_json(const std::string& path, const nlohmann::json& doc);

} // namespace bregpnp
