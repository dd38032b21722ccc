#include "zsum/builder.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "zsum/zerosum.hpp"

namespace zsum {

SequenceFingerprint fingerprint(const InputSequence& seq) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Value v : seq.terms) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  }
  return {seq.id, seq.terms.size(), h};
}

const Block* ConfigCertificate::find(std::size_t level, std::size_t seq) const {
  auto it = std::find_if(blocks.begin(), blocks.end(),
                         [&](const Block& b) { return b.level == level && b.seq == seq; });
  return it == blocks.end() ? nullptr : &*it;
}

std::uint64_t expected_chain_count(std::size_t m, std::size_t levels) {
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    acc *= m + 1;
    if (acc > ~std::uint64_t{0}) return ~std::uint64_t{0};
  }
  return static_cast<std::uint64_t>(acc) - 1;
}

namespace {

// Sum over chains of the product of block sizes: (1 + m n)^levels - 1.
std::uint64_t chain_element_count(std::size_t m, std::uint64_t n, std::size_t levels, std::uint64_t cap) {
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < levels; ++i) {
    acc *= 1 + static_cast<unsigned __int128>(m) * n;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc) - 1;
}

std::vector<Value> sorted_union(const std::vector<Value>& a, const std::vector<Value>& b) {
  std::vector<Value> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Z_l = Z_{l-1} ∪ T_l ∪ (Z_{l-1} + T_l), where T_l is every translated element at level l.
std::vector<Value> extend_chain_sums(const std::vector<Value>& z, const std::vector<Value>& translated) {
  std::vector<Value> sums;
  sums.reserve(z.size() * translated.size());
  for (Value a : z) {
    for (Value b : translated) sums.push_back(checked_add(a, b));
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sorted_union(sorted_union(z, translated), sums);
}

std::vector<Value> translated_level(const ConfigCertificate& cert, std::size_t level) {
  std::vector<Value> out;
  for (const auto& b : cert.blocks) {
    if (b.level != level) continue;
    for (Value v : b.values) out.push_back(checked_add(v, b.z));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Value> enumerate_chain_sums(const ConfigCertificate& cert, std::size_t levels_upto,
                                        std::uint64_t budget) {
  if (levels_upto > cert.levels) {
    throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(levels_upto) + " beyond certificate depth " +
                                                std::to_string(cert.levels));
  }
  if (chain_element_count(cert.m, cert.n.value(), levels_upto, budget) > budget) {
    throw Error(ErrorKind::BudgetExceeded, "combinatorial blowup: chain sums up to level " +
                                               std::to_string(levels_upto) + " exceed the budget");
  }
  std::vector<Value> z;
  for (std::size_t level = 1; level <= levels_upto; ++level) z = extend_chain_sums(z, translated_level(cert, level));
  return z;
}

ConfigCertificate build_configuration(std::span<const InputSequence> sequences, Modulus n,
                                      const CentralSurrogate& surrogate, std::size_t levels, std::uint64_t budget) {
  if (sequences.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one sequence");
  if (levels == 0) throw Error(ErrorKind::InvalidArgument, "need at least one level");
  const auto& g = surrogate.translations();
  const std::uint64_t pool = 2 * n.value() - 1;
  const std::uint64_t panel = pool * g.size();
  for (std::size_t j = 0; j < sequences.size(); ++j) {
    if (sequences[j].id != j + 1) {
      throw Error(ErrorKind::InvalidArgument, "sequence ids must run 1..m in order");
    }
    if (sequences[j].terms.size() < levels * panel) {
      throw Error(ErrorKind::InsufficientElements,
                  "insufficient sequence length: sequence " + std::to_string(j + 1) + " has " +
                      std::to_string(sequences[j].terms.size()) + " terms, " + std::to_string(levels * panel) +
                      " needed");
    }
  }
  if (chain_element_count(sequences.size(), n.value(), levels, budget) > budget) {
    throw Error(ErrorKind::BudgetExceeded, "combinatorial blowup: chain sums for " + std::to_string(levels) +
                                               " levels exceed the budget");
  }

  ConfigCertificate cert;
  cert.n = n;
  cert.m = sequences.size();
  cert.levels = levels;
  cert.surrogate = surrogate.spec();
  for (const auto& s : sequences) cert.sequences.push_back(fingerprint(s));

  std::vector<Value> z_set;  // chain sums over levels built so far
  for (std::size_t level = 1; level <= levels; ++level) {
    const auto core = core_after_shifts(surrogate, z_set);
    const std::size_t offset = (level - 1) * panel;

    // One x for the fresh panels of all sequences together.
    std::vector<Value> fresh;
    for (const auto& s : sequences) {
      fresh.insert(fresh.end(), s.terms.begin() + static_cast<std::ptrdiff_t>(offset),
                   s.terms.begin() + static_cast<std::ptrdiff_t>(offset + panel));
    }
    const auto tr = translate_into_core(surrogate, fresh, core, budget);
    if (!tr) {
      throw Error(ErrorKind::TranslationNotFound,
                  "translation not found within budget at level " + std::to_string(level));
    }

    for (std::size_t j = 0; j < sequences.size(); ++j) {
      // pigeonhole over t: the smallest t whose class reaches 2n-1 terms
      std::map<Value, std::vector<std::size_t>> by_t;
      for (std::size_t k = 0; k < panel; ++k) by_t[tr->t[j * panel + k]].push_back(offset + k);
      auto chosen = std::find_if(by_t.begin(), by_t.end(), [&](const auto& kv) { return kv.second.size() >= pool; });
      if (chosen == by_t.end()) throw Error(ErrorKind::Internal, "EGZ pool too small");

      const auto& positions = chosen->second;
      std::vector<Value> pool_values;
      for (std::uint64_t k = 0; k < pool; ++k) pool_values.push_back(sequences[j].terms[positions[k]]);
      const auto w = egz_solve(pool_values, n);

      Block block;
      block.level = level;
      block.seq = j + 1;
      block.z = checked_add(tr->x, chosen->first);
      for (auto li : w.indices) {
        block.indices.push_back(positions[li]);
        block.values.push_back(pool_values[li]);
        if (!core(checked_add(pool_values[li], block.z))) {
          throw Error(ErrorKind::Internal, "translated block element left the core");
        }
      }
      cert.blocks.push_back(std::move(block));
    }
    z_set = extend_chain_sums(z_set, translated_level(cert, level));
  }
  return cert;
}

ConfigCertificate truncate_top_level(const ConfigCertificate& cert) {
  if (cert.levels < 2) throw Error(ErrorKind::InvalidArgument, "cannot truncate a single-level certificate");
  ConfigCertificate out = cert;
  out.levels = cert.levels - 1;
  std::erase_if(out.blocks, [&](const Block& b) { return b.level > out.levels; });
  return out;
}

}  // namespace zsum
