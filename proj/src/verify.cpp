// Certificate verification. Deliberately independent of builder.cpp: every
// clause is recomputed from the raw sequences and the stored blocks.

#include <algorithm>
#include <map>
#include <set>

#include "zsum/builder.hpp"

namespace zsum {

const char* to_string(Clause clause) {
  switch (clause) {
    case Clause::Shape: return "shape";
    case Clause::BlockSize: return "block size";
    case Clause::IndexRange: return "index range";
    case Clause::ValueMismatch: return "value mismatch";
    case Clause::Disjointness: return "disjointness";
    case Clause::Congruence: return "congruence mod n";
    case Clause::ChainMembership: return "chain sum membership";
  }
  return "?";
}

std::optional<Clause> ChainSumReport::first_violation() const {
  if (!failures.empty()) return failures.front().clause;
  if (!chain_failures.empty()) return Clause::ChainMembership;
  if (visited != expected) return Clause::Shape;
  return std::nullopt;
}

BaseSet base_set(const std::string& surrogate_spec) {
  const auto s = CentralSurrogate::parse(surrogate_spec);
  if (s.kind() == CentralSurrogate::Kind::Modulus) {
    return [d = s.d()](Value x) { return x != 0 && x % d == 0; };
  }
  return [gens = s.generators()](Value x) {
    if (x == 0) return false;
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
      if (x >= *it) x -= *it;
    }
    return x == 0;
  };
}

namespace {

struct ChainWalker {
  const ConfigCertificate& cert;
  const std::map<std::pair<std::size_t, std::size_t>, const Block*>& blocks;
  const BaseSet& in_b;
  ChainSumReport& report;
  std::vector<std::pair<std::size_t, std::size_t>> chain;

  void walk(std::size_t level, const std::vector<Value>& sums) {
    if (level > cert.levels) {
      if (chain.empty()) return;
      ++report.visited;
      auto bad = std::find_if(sums.begin(), sums.end(), [&](Value v) { return !in_b(v); });
      if (bad != sums.end()) report.chain_failures.push_back({chain, *bad});
      return;
    }
    walk(level + 1, sums);
    for (std::size_t j = 1; j <= cert.m; ++j) {
      const Block& b = *blocks.at({level, j});
      std::vector<Value> next;
      next.reserve(sums.size() * b.values.size());
      for (Value s : sums) {
        for (Value v : b.values) next.push_back(checked_add(checked_add(s, v), b.z));
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      chain.emplace_back(level, j);
      walk(level + 1, next);
      chain.pop_back();
    }
  }
};

}  // namespace

ChainSumReport verify_certificate(std::span<const InputSequence> sequences, const ConfigCertificate& cert,
                                  const BaseSet& in_b, std::uint64_t budget) {
  if (cert.sequences.size() != sequences.size()) {
    throw Error(ErrorKind::FingerprintMismatch, "certificate lists " + std::to_string(cert.sequences.size()) +
                                                    " sequences, " + std::to_string(sequences.size()) + " supplied");
  }
  for (std::size_t j = 0; j < sequences.size(); ++j) {
    if (fingerprint(sequences[j]) != cert.sequences[j]) {
      throw Error(ErrorKind::FingerprintMismatch, "sequence " + std::to_string(j + 1) + " does not match the certificate");
    }
  }

  ChainSumReport report;
  report.expected = expected_chain_count(cert.m, cert.levels);
  auto fail = [&](Clause c, std::string detail) { report.failures.push_back({c, std::move(detail)}); };
  auto where = [](const Block& b) {
    return "block (" + std::to_string(b.level) + ", " + std::to_string(b.seq) + ")";
  };

  const std::uint64_t n = cert.n.value();
  if (cert.version != ConfigCertificate::kVersion) fail(Clause::Shape, "unsupported version");
  if (cert.m != sequences.size()) fail(Clause::Shape, "m differs from the number of sequences");
  if (cert.levels == 0) fail(Clause::Shape, "no levels");

  std::map<std::pair<std::size_t, std::size_t>, const Block*> blocks;
  for (const auto& b : cert.blocks) {
    if (b.level < 1 || b.level > cert.levels || b.seq < 1 || b.seq > cert.m) {
      fail(Clause::Shape, where(b) + " outside the level/sequence grid");
      continue;
    }
    if (!blocks.emplace(std::pair{b.level, b.seq}, &b).second) fail(Clause::Shape, where(b) + " appears twice");
    if (b.indices.size() != b.values.size()) fail(Clause::Shape, where(b) + " has unequal index and value counts");
  }
  if (blocks.size() != cert.m * cert.levels) fail(Clause::Shape, "missing blocks");

  // conclusions 1 and 2, plus consistency with the sequences
  std::vector<std::set<std::size_t>> used(sequences.size());
  for (const auto& [key, bp] : blocks) {
    const Block& b = *bp;
    const auto& terms = sequences[b.seq - 1].terms;
    if (b.indices.size() != n) {
      fail(Clause::BlockSize, where(b) + " has " + std::to_string(b.indices.size()) + " elements, expected " +
                                  std::to_string(n));
    }
    for (std::size_t k = 0; k < b.indices.size() && k < b.values.size(); ++k) {
      const auto idx = b.indices[k];
      if (idx >= terms.size()) {
        fail(Clause::IndexRange, where(b) + " index " + std::to_string(idx) + " out of range");
        continue;
      }
      if (terms[idx] != b.values[k]) {
        fail(Clause::ValueMismatch, where(b) + " stores " + std::to_string(b.values[k]) + " at index " +
                                        std::to_string(idx) + " where the sequence has " + std::to_string(terms[idx]));
      }
      if (!used[b.seq - 1].insert(idx).second) {
        fail(Clause::Disjointness, where(b) + " reuses index " + std::to_string(idx) + " of sequence " +
                                       std::to_string(b.seq));
      }
    }
    Value residue = 0;
    for (Value v : b.values) residue = (residue + v % n) % n;
    if (residue != 0) {
      fail(Clause::Congruence, where(b) + " sums to " + std::to_string(residue) + " mod " + std::to_string(n));
    }
  }

  // conclusion 3
  const bool shape_ok = std::none_of(report.failures.begin(), report.failures.end(),
                                     [](const ClauseFailure& f) { return f.clause == Clause::Shape; });
  if (shape_ok) {
    unsigned __int128 work = 1;
    for (std::size_t i = 0; i < cert.levels && work <= budget; ++i) work *= 1 + cert.m * n;
    if (work - 1 > budget) {
      throw Error(ErrorKind::BudgetExceeded, "chain enumeration exceeds the budget of " + std::to_string(budget));
    }
    ChainWalker walker{cert, blocks, in_b, report, {}};
    walker.walk(1, {0});
    std::sort(report.chain_failures.begin(), report.chain_failures.end(),
              [](const ChainFailure& a, const ChainFailure& b) { return a.chain < b.chain; });
  }
  return report;
}

}  // namespace zsum
