#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zsum/builder.hpp"
#include "zsum/setstruct.hpp"
#include "zsum/zerosum.hpp"

namespace zsum {

enum class Format { Text, Json, Csv };

// JSON output is canonical: sorted keys, integers as decimal strings.
// CSV output always starts with a header row.

std::string render_witness(std::span<const Value> values, const std::optional<ZeroSumWitness>& w, Modulus n,
                           Format format);
std::string render_partition(std::span<const Value> values, const PartitionResult& result, Format format);
std::string render_davenport(Modulus n, std::uint64_t d, Format format);

struct SetCheckOutcome {
  std::string description;
  std::string property;  // member | thick | syndetic | pws
  bool holds = false;
  std::optional<Value> member_query;
  std::optional<StructureWitness> witness;
  std::optional<Value> uncovered;
  std::uint64_t bound = 0;
};
std::string render_set_check(const SetCheckOutcome& outcome, Format format);

std::string render_chain_report(const ChainSumReport& report, Format format);
std::string render_build_summary(const ConfigCertificate& cert, const std::string& path, Format format);

}  // namespace zsum
