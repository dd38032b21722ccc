#include "zsum/zerosum.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "zsum/residue_set.hpp"

namespace zsum {

namespace {

// Hard cap on the DP table (words); about 1 GiB.
constexpr std::uint64_t kDpTableWordLimit = std::uint64_t{1} << 27;

// C(n, k), saturating at cap + 1.
std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<Value> gather(std::span<const Value> values, std::span<const std::size_t> positions) {
  std::vector<Value> out;
  out.reserve(positions.size());
  for (auto p : positions) out.push_back(values[p]);
  return out;
}

void require_egz_size(std::size_t have, std::uint64_t need, const char* what) {
  if (have < need) {
    throw Error(ErrorKind::InsufficientElements, std::string(what) + " needs at least " + std::to_string(need) +
                                                     " values, got " + std::to_string(have));
  }
}

}  // namespace

std::optional<ZeroSumWitness> find_zero_sum_subset_bruteforce(std::span<const Value> values, Modulus n,
                                                              std::uint64_t budget) {
  const std::uint64_t k = n.value();
  const std::size_t len = values.size();
  if (k > len) return std::nullopt;
  if (binomial_capped(len, k, budget) > budget) {
    throw Error(ErrorKind::BudgetExceeded, "C(" + std::to_string(len) + ", " + std::to_string(k) +
                                               ") subsets exceed the enumeration budget of " +
                                               std::to_string(budget));
  }
  const auto residues = normalize_residues(values, n);
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (;;) {
    Value sum = 0;
    for (auto i : idx) sum = add_mod(sum, residues[i], k);
    if (sum == 0) return ZeroSumWitness{idx, n};

    // advance to the next combination in lexicographic order
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == len - k + (pos - 1)) --pos;
    if (pos == 0) return std::nullopt;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < k; ++q) idx[q] = idx[q - 1] + 1;
  }
}

std::optional<ZeroSumWitness> find_zero_sum_subset_dp(std::span<const Value> values, Modulus n) {
  const std::uint64_t k = n.value();
  const std::size_t len = values.size();
  if (k > len) return std::nullopt;

  const std::size_t words = ResidueSet::words_for(k);
  const std::uint64_t cells = (static_cast<std::uint64_t>(len) + 1) * (k + 1);
  if (cells > kDpTableWordLimit / words) {
    throw Error(ErrorKind::BudgetExceeded, "DP table for " + std::to_string(len) + " values at modulus " +
                                               std::to_string(k) + " exceeds the memory limit");
  }
  const auto residues = normalize_residues(values, n);

  // reach[i][c]: residues attainable by choosing exactly c values from positions i..len-1
  std::vector<std::uint64_t> table(static_cast<std::size_t>(cells) * words, 0);
  auto cell = [&](std::size_t i, std::uint64_t c) {
    return std::span<std::uint64_t>(table.data() + (i * (k + 1) + c) * words, words);
  };
  cell(len, 0)[0] = 1;
  for (std::size_t i = len; i-- > 0;) {
    const std::uint64_t max_c = std::min<std::uint64_t>(k, len - i);
    auto below = cell(i + 1, 0);
    std::copy(below.begin(), below.end(), cell(i, 0).begin());
    for (std::uint64_t c = 1; c <= max_c; ++c) {
      auto dst = cell(i, c);
      auto skip = cell(i + 1, c);
      std::copy(skip.begin(), skip.end(), dst.begin());
      ResidueSet::rotate_or(cell(i + 1, c - 1), residues[i], k, dst);
    }
  }

  auto has = [&](std::size_t i, std::uint64_t c, Value r) { return (cell(i, c)[r / 64] >> (r % 64)) & 1u; };
  if (!has(0, k, 0)) return std::nullopt;

  // Greedy walk: take position i whenever the remainder can still be completed.
  ZeroSumWitness w{{}, n};
  w.indices.reserve(k);
  std::uint64_t need = k;
  Value target = 0;
  for (std::size_t i = 0; i < len && need > 0; ++i) {
    const Value rest = (target + k - residues[i]) % k;
    if (has(i + 1, need - 1, rest)) {
      w.indices.push_back(i);
      --need;
      target = rest;
    }
  }
  if (need != 0) throw Error(ErrorKind::Internal, "DP reconstruction ended early");
  return w;
}

ZeroSumWitness egz_solve(std::span<const Value> values, Modulus n) {
  require_egz_size(values.size(), 2 * n.value() - 1, "egz_solve");
  auto w = find_zero_sum_subset_dp(values, n);
  if (!w) throw Error(ErrorKind::Internal, "no zero-sum n-subset among 2n-1 values");
  return *w;
}

ZeroSumWitness egz_compose(std::span<const Value> values, Modulus m, Modulus n) {
  const std::uint64_t mv = m.value();
  const std::uint64_t nv = n.value();
  const Modulus mn{mv * nv};
  require_egz_size(values.size(), 2 * mv * nv - 1, "egz_compose");

  std::vector<std::size_t> unused(values.size());
  std::iota(unused.begin(), unused.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> groups;
  std::vector<Value> quotients;
  for (std::uint64_t g = 0; g < 2 * nv - 1; ++g) {
    const std::span<const std::size_t> window(unused.data(), 2 * mv - 1);
    const auto pool = gather(values, window);
    const auto local = egz_solve(pool, m);

    std::vector<std::size_t> group;
    Value residue = 0;
    for (auto li : local.indices) {
      group.push_back(window[li]);
      residue = add_mod(residue, values[window[li]], mn.value());
    }
    // group sum is 0 mod m, so (sum mod mn) / m == (sum / m) mod n
    quotients.push_back(residue / mv);
    for (auto it = local.indices.rbegin(); it != local.indices.rend(); ++it) {
      unused.erase(unused.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    groups.push_back(std::move(group));
  }

  const auto chosen = egz_solve(quotients, n);
  ZeroSumWitness w{{}, mn};
  for (auto gi : chosen.indices) w.indices.insert(w.indices.end(), groups[gi].begin(), groups[gi].end());
  std::sort(w.indices.begin(), w.indices.end());
  return w;
}

std::uint64_t partition_size_required(Modulus n, unsigned r, Threshold threshold) {
  const std::uint64_t nv = n.value();
  return threshold == Threshold::Linear ? (2 * nv - 1) * r : r * nv * nv;
}

PartitionResult partition_zero_sum(std::span<const Value> values, const Coloring& coloring, Modulus n,
                                   Threshold threshold) {
  if (coloring.size() != values.size()) {
    throw Error(ErrorKind::InvalidArgument, "coloring covers " + std::to_string(coloring.size()) +
                                                " positions but there are " + std::to_string(values.size()) +
                                                " values");
  }
  const unsigned r = coloring.colors_count();
  require_egz_size(values.size(), partition_size_required(n, r, threshold), "partition_zero_sum");

  std::vector<std::vector<std::size_t>> classes(r + 1);
  for (std::size_t p = 0; p < values.size(); ++p) classes[coloring.color_of(p)].push_back(p);

  // pigeonhole: some color holds at least 2n-1 positions; take the smallest such color
  for (unsigned c = 1; c <= r; ++c) {
    if (classes[c].size() < 2 * n.value() - 1) continue;
    const auto local = egz_solve(gather(values, classes[c]), n);
    PartitionResult out{c, ZeroSumWitness{{}, n}};
    for (auto li : local.indices) out.witness.indices.push_back(classes[c][li]);
    return out;
  }
  throw Error(ErrorKind::Internal, "pigeonhole found no color class of size 2n-1");
}

namespace {

struct DavenportSearch {
  std::uint64_t n;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  std::uint64_t longest = 0;

  // sums: nonempty subset sums of the current zero-sum-free sequence
  void extend(const ResidueSet& sums, std::uint64_t depth, std::uint64_t min_residue) {
    if (++nodes > budget) {
      throw Error(ErrorKind::BudgetExceeded, "Davenport search for n=" + std::to_string(n) +
                                                 " exceeded " + std::to_string(budget) + " nodes");
    }
    longest = std::max(longest, depth);
    for (std::uint64_t a = min_residue; a < n; ++a) {
      ResidueSet next = sums.with_shifted(a);
      next.set(a);
      if (next.test(0)) continue;
      extend(next, depth + 1, a);
    }
  }
};

}  // namespace

std::uint64_t davenport_constant(Modulus n, std::uint64_t budget) {
  // Zero-sum-free sequences are closed under deletion, so the answer is one
  // more than the longest zero-sum-free sequence. Residue 0 is never allowed.
  DavenportSearch search{n.value(), budget};
  search.extend(ResidueSet(n.value()), 0, 1);
  return search.longest + 1;
}

WitnessReport verify_witness(std::span<const Value> values, const ZeroSumWitness& w, Modulus n) {
  auto fail = [](std::string why) { return WitnessReport{false, std::move(why)}; };
  if (w.modulus != n) {
    return fail("witness modulus " + std::to_string(w.modulus.value()) + " differs from " +
                std::to_string(n.value()));
  }
  for (auto i : w.indices) {
    if (i >= values.size()) return fail("index " + std::to_string(i) + " out of range");
  }
  std::vector<std::size_t> sorted = w.indices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return fail("duplicate index");
  if (w.indices.size() != n.value()) {
    return fail("witness has " + std::to_string(w.indices.size()) + " indices, expected " +
                std::to_string(n.value()));
  }
  Value sum = 0;
  for (auto i : w.indices) sum = add_mod(sum, values[i], n.value());
  if (sum != 0) return fail("sum is " + std::to_string(sum) + " mod " + std::to_string(n.value()) + ", not 0");
  return {true, {}};
}

}  // namespace zsum
