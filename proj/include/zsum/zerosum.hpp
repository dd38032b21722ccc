#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "zsum/core.hpp"

namespace zsum {

// Exhaustive search over all C(|values|, n) index sets in lexicographic order.
// Throws BudgetExceeded up front when C(|values|, n) > budget.
std::optional<ZeroSumWitness> find_zero_sum_subset_bruteforce(std::span<const Value> values, Modulus n,
                                                              std::uint64_t budget = kDefaultBudget);

// Same answer as the brute-force search (lexicographically smallest n-subset
// with sum = 0 mod n) via a suffix table over (chosen count, residue).
std::optional<ZeroSumWitness> find_zero_sum_subset_dp(std::span<const Value> values, Modulus n);

// Requires |values| >= 2n-1; a witness always exists.
ZeroSumWitness egz_solve(std::span<const Value> values, Modulus n);

// Witness of size m*n for modulus m*n from 2mn-1 values, built from 2n-1
// disjoint m-groups (each zero-sum mod m) and one EGZ pass over the
// group quotients.
ZeroSumWitness egz_compose(std::span<const Value> values, Modulus m, Modulus n);

enum class Threshold { Linear, Quadratic };

struct PartitionResult {
  unsigned color = 0;
  ZeroSumWitness witness;
};

// Minimum list size demanded by the threshold: (2n-1)r or r*n^2.
std::uint64_t partition_size_required(Modulus n, unsigned r, Threshold threshold);

PartitionResult partition_zero_sum(std::span<const Value> values, const Coloring& coloring, Modulus n,
                                   Threshold threshold);

// Least d such that every length-d sequence over Z_n has a nonempty zero-sum
// subsequence. Search nodes are charged against the budget.
std::uint64_t davenport_constant(Modulus n, std::uint64_t budget = kDefaultBudget);

struct WitnessReport {
  bool valid = false;
  std::string violation;  // empty when valid

  explicit operator bool() const noexcept { return valid; }
};

WitnessReport verify_witness(std::span<const Value> values, const ZeroSumWitness& w, Modulus n);

}  // namespace zsum
