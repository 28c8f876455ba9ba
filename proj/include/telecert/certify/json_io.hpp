#pragma once

#include "telecert/certify/certificate.hpp"

#include "json.hpp"

#include <string>

namespace telecert {

using Json = nlohmann::ordered_json;

// Tower in the tower-spec document layout (without summands).
Json tower_to_json(const Tower& t);

Json certificate_to_json(const Certificate& cert);
Json certificate_to_json(const ZeilbergerCertificate& cert);

std::string certificate_to_text(const Certificate& cert);
std::string certificate_to_text(const ZeilbergerCertificate& cert);

}  // namespace telecert
