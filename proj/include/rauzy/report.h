#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rauzy/drill.h"
#include "rauzy/spectral.h"
#include "rauzy/verify.h"

namespace rauzy {

inline constexpr const char* kReportSchema = "rauzy-report/1";

nlohmann::json to_json(const Substitution& s);
nlohmann::json to_json(const SpectralData& sd);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const CoincidenceResult& r);
nlohmann::json to_json(const IdentityReport& r);
nlohmann::json to_json(const RasterConfig& r);
/// All fields of the record, the exact images of tau and theta, and the
/// eigenvector chain v -> v (power) -> w -> z.
nlohmann::json to_json(const DrillRecord& r);

/// Output of `check`: primitivity, determinant, characteristic polynomial,
/// Pisot classification (when primitive) and strong coincidence.
nlohmann::json check_report(const Substitution& s, int coincidence_depth = kDefaultCoincidenceDepth);

/// Envelope with the schema tag and a kind field.
nlohmann::json report_envelope(const std::string& kind);

}  // namespace rauzy
