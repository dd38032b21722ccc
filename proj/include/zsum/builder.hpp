#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zsum/central.hpp"
#include "zsum/core.hpp"

namespace zsum {

// F_{i,j} with its translate z_{i,j}. Indices are positions into sequence j.
struct Block {
  std::size_t level = 0;  // i, 1-based
  std::size_t seq = 0;    // j, 1-based
  std::vector<std::size_t> indices;
  std::vector<Value> values;
  Value z = 0;

  bool operator==(const Block&) const = default;
};

struct SequenceFingerprint {
  std::size_t id = 0;
  std::uint64_t length = 0;
  std::uint64_t hash = 0;  // FNV-1a over the little-endian 64-bit terms

  bool operator==(const SequenceFingerprint&) const = default;
};

SequenceFingerprint fingerprint(const InputSequence& seq);

struct ConfigCertificate {
  static constexpr std::uint64_t kVersion = 1;

  std::uint64_t version = kVersion;
  Modulus n{1};
  std::size_t m = 0;
  std::size_t levels = 0;
  std::string surrogate;  // CentralSurrogate::spec()
  std::vector<SequenceFingerprint> sequences;
  std::vector<Block> blocks;  // sorted by (level, seq)

  // nullptr when absent
  const Block* find(std::size_t level, std::size_t seq) const;

  bool operator==(const ConfigCertificate&) const = default;
};

// Levels consume contiguous panels of (2n-1)|G| terms from every sequence.
// Throws InsufficientElements, TranslationNotFound, BudgetExceeded.
ConfigCertificate build_configuration(std::span<const InputSequence> sequences, Modulus n,
                                      const CentralSurrogate& surrogate, std::size_t levels,
                                      std::uint64_t budget = kDefaultBudget);

// All elements of every Minkowski sum of translated blocks along chains of
// strictly increasing levels <= levels_upto, deduplicated and sorted.
std::vector<Value> enumerate_chain_sums(const ConfigCertificate& cert, std::size_t levels_upto,
                                        std::uint64_t budget = kDefaultBudget);

// (m+1)^L - 1, saturating.
std::uint64_t expected_chain_count(std::size_t m, std::size_t levels);

enum class Clause {
  Shape,            // header/block bookkeeping is inconsistent
  BlockSize,        // |F_{i,j}| != n
  IndexRange,       // index past the end of sequence j
  ValueMismatch,    // stored value differs from the sequence term
  Disjointness,     // an index reused within sequence j
  Congruence,       // untranslated block sum not 0 mod n
  ChainMembership,  // some chain-sum element outside B
};

const char* to_string(Clause clause);

struct ClauseFailure {
  Clause clause;
  std::string detail;
};

struct ChainFailure {
  std::vector<std::pair<std::size_t, std::size_t>> chain;  // (level, seq) per chosen level
  Value sum = 0;                                           // least offending element
};

struct ChainSumReport {
  std::uint64_t visited = 0;
  std::uint64_t expected = 0;
  std::vector<ClauseFailure> failures;
  std::vector<ChainFailure> chain_failures;

  bool valid() const { return failures.empty() && chain_failures.empty() && visited == expected; }
  // First violated clause in the order block checks, then chain membership.
  std::optional<Clause> first_violation() const;
};

using BaseSet = std::function<bool(Value)>;

// Membership in B (not B*) for a surrogate spec string.
BaseSet base_set(const std::string& surrogate_spec);

// Checks conclusions 1-3 of the configuration against B. Shares no code with
// build_configuration. Throws FingerprintMismatch and BudgetExceeded.
ChainSumReport verify_certificate(std::span<const InputSequence> sequences, const ConfigCertificate& cert,
                                  const BaseSet& in_b, std::uint64_t budget = kDefaultBudget);

// Drops level L. Requires L >= 2.
ConfigCertificate truncate_top_level(const ConfigCertificate& cert);

}  // namespace zsum
