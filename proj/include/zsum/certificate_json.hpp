#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "zsum/builder.hpp"

namespace zsum {

// Certificate wire format. Object keys are sorted, every integer is a decimal
// string, and the document is one line of UTF-8:
//
//   {"L":"2","blocks":[{"indices":["0","6"],"level":"1","seq":"1","values":["1","7"],"z":"2"},...],
//    "m":"1","n":"2","sequences":[{"hash":"...","id":"1","length":"30"}],"surrogate":"mod:3","version":"1"}
nlohmann::json certificate_to_json(const ConfigCertificate& cert);
ConfigCertificate certificate_from_json(const nlohmann::json& doc);

std::string serialize_certificate(const ConfigCertificate& cert);
// Throws InvalidArgument on malformed input.
ConfigCertificate parse_certificate(std::string_view text);

std::string decimal(std::uint64_t v);
// Strict: digits only, must fit in 64 bits.
std::uint64_t parse_decimal(const nlohmann::json& field, const char* name);

}  // namespace zsum
