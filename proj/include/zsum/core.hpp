#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace zsum {

using Value = std::uint64_t;

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

enum class ErrorKind {
  InvalidArgument,
  InsufficientElements,
  BudgetExceeded,
  TranslationNotFound,
  ShiftOutsideStar,
  FingerprintMismatch,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// The n of every "sum = 0 (mod n)" condition.
class Modulus {
 public:
  explicit Modulus(std::uint64_t n) : n_(n) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 1");
  }
  std::uint64_t value() const noexcept { return n_; }
  auto operator<=>(const Modulus&) const = default;

 private:
  std::uint64_t n_;
};

struct InputSequence {
  std::size_t id = 1;  // 1-based sequence label j
  std::vector<Value> terms;
};

// Positions into an input list, kept sorted ascending.
struct ZeroSumWitness {
  std::vector<std::size_t> indices;
  Modulus modulus{1};

  bool operator==(const ZeroSumWitness&) const = default;
};

// Colors are 1..r, one per position of the list being colored.
class Coloring {
 public:
  Coloring(std::vector<unsigned> colors, unsigned r);

  unsigned colors_count() const noexcept { return r_; }
  unsigned color_of(std::size_t position) const { return colors_.at(position); }
  std::size_t size() const noexcept { return colors_.size(); }
  std::span<const unsigned> colors() const noexcept { return colors_; }

 private:
  std::vector<unsigned> colors_;
  unsigned r_;
};

std::vector<Value> normalize_residues(std::span<const Value> values, Modulus n);
std::vector<Value> normalize_residues(std::span<const std::int64_t> values, Modulus n);

// (a + b) mod n without overflow.
inline Value add_mod(Value a, Value b, Value n) {
  a %= n;
  b %= n;
  return a >= n - b ? a - (n - b) : a + b;
}

// Throws Internal on 64-bit overflow.
Value checked_add(Value a, Value b);

}  // namespace zsum
