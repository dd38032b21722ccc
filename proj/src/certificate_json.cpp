#include "zsum/certificate_json.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

namespace zsum {

using nlohmann::json;

std::string decimal(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_decimal(const json& field, const char* name) {
  if (!field.is_string()) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be a decimal string");
  const auto& s = field.get_ref<const std::string&>();
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidArgument, std::string(name) + " is not a 64-bit decimal: \"" + s + "\"");
  }
  return out;
}

namespace {

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorKind::InvalidArgument, std::string("certificate is missing \"") + key + "\"");
  }
  return obj.at(key);
}

const json& array_member(const json& obj, const char* key) {
  const auto& v = member(obj, key);
  if (!v.is_array()) throw Error(ErrorKind::InvalidArgument, std::string(key) + " must be an array");
  return v;
}

template <class T>
json decimal_array(const std::vector<T>& xs) {
  json out = json::array();
  for (auto x : xs) out.push_back(decimal(x));
  return out;
}

}  // namespace

json certificate_to_json(const ConfigCertificate& cert) {
  json blocks = json::array();
  auto sorted = cert.blocks;
  std::sort(sorted.begin(), sorted.end(),
            [](const Block& a, const Block& b) { return std::tie(a.level, a.seq) < std::tie(b.level, b.seq); });
  for (const auto& b : sorted) {
    blocks.push_back({{"level", decimal(b.level)},
                      {"seq", decimal(b.seq)},
                      {"indices", decimal_array(b.indices)},
                      {"values", decimal_array(b.values)},
                      {"z", decimal(b.z)}});
  }
  json seqs = json::array();
  for (const auto& s : cert.sequences) {
    seqs.push_back({{"id", decimal(s.id)}, {"length", decimal(s.length)}, {"hash", decimal(s.hash)}});
  }
  return {{"version", decimal(cert.version)}, {"n", decimal(cert.n.value())},   {"m", decimal(cert.m)},
          {"L", decimal(cert.levels)},        {"surrogate", cert.surrogate},     {"sequences", seqs},
          {"blocks", blocks}};
}

ConfigCertificate certificate_from_json(const json& doc) {
  ConfigCertificate cert;
  cert.version = parse_decimal(member(doc, "version"), "version");
  if (cert.version != ConfigCertificate::kVersion) {
    throw Error(ErrorKind::InvalidArgument, "unsupported certificate version " + std::to_string(cert.version));
  }
  cert.n = Modulus(parse_decimal(member(doc, "n"), "n"));
  cert.m = parse_decimal(member(doc, "m"), "m");
  cert.levels = parse_decimal(member(doc, "L"), "L");
  const auto& surrogate = member(doc, "surrogate");
  if (!surrogate.is_string()) throw Error(ErrorKind::InvalidArgument, "surrogate must be a string");
  cert.surrogate = surrogate.get<std::string>();

  for (const auto& s : array_member(doc, "sequences")) {
    cert.sequences.push_back({parse_decimal(member(s, "id"), "id"), parse_decimal(member(s, "length"), "length"),
                              parse_decimal(member(s, "hash"), "hash")});
  }
  for (const auto& b : array_member(doc, "blocks")) {
    Block block;
    block.level = parse_decimal(member(b, "level"), "level");
    block.seq = parse_decimal(member(b, "seq"), "seq");
    for (const auto& i : array_member(b, "indices")) block.indices.push_back(parse_decimal(i, "index"));
    for (const auto& v : array_member(b, "values")) block.values.push_back(parse_decimal(v, "value"));
    block.z = parse_decimal(member(b, "z"), "z");
    cert.blocks.push_back(std::move(block));
  }
  return cert;
}

std::string serialize_certificate(const ConfigCertificate& cert) { return certificate_to_json(cert).dump() + "\n"; }

ConfigCertificate parse_certificate(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("certificate is not valid JSON: ") + e.what());
  }
  return certificate_from_json(doc);
}

}  // namespace zsum
