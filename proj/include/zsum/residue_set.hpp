#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zsum {

// Subset of Z_n stored as a packed bitset. The span-level helpers operate on
// externally owned word arrays so DP tables can stay flat.
class ResidueSet {
 public:
  explicit ResidueSet(std::uint64_t n) : n_(n), words_(words_for(n), 0) {}

  static std::size_t words_for(std::uint64_t n) { return static_cast<std::size_t>((n + 63) / 64); }

  std::uint64_t modulus() const noexcept { return n_; }
  bool test(std::uint64_t r) const { return (words_[r / 64] >> (r % 64)) & 1u; }
  void set(std::uint64_t r) { words_[r / 64] |= std::uint64_t{1} << (r % 64); }
  bool any() const;

  // this | (this + shift)
  ResidueSet with_shifted(std::uint64_t shift) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  // dst |= rotate(src, shift) over Z_n; src must have no bits >= n set.
  static void rotate_or(std::span<const std::uint64_t> src, std::uint64_t shift, std::uint64_t n,
                        std::span<std::uint64_t> dst);

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> words_;
};

}  // namespace zsum
