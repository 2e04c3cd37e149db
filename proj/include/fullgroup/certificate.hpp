#pragma once

// Serialization of synthesis certificates (JSON and plain text). The JSON
// layout is documented in docs/certificate.schema.json.

#include <string>

#include <json.hpp>

#include "fullgroup/synthesis.hpp"

namespace fullgroup {

inline constexpr const char* kCertificateFormat = "fullgroup-certificate/1";

nlohmann::ordered_json to_json(const SynthesisCertificate& certificate);
SynthesisCertificate certificate_from_json(const nlohmann::ordered_json& j);

std::string to_text(const SynthesisCertificate& certificate);

nlohmann::ordered_json system_to_json(const RotationSystem& system);
SystemPtr system_from_json(const nlohmann::ordered_json& j);

}  // namespace fullgroup
