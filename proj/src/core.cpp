#include "zsum/core.hpp"

#include <algorithm>

namespace zsum {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::InsufficientElements: return "insufficient elements";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::TranslationNotFound: return "translation not found within budget";
    case ErrorKind::ShiftOutsideStar: return "shift outside star set";
    case ErrorKind::FingerprintMismatch: return "fingerprint mismatch";
    case ErrorKind::Internal: return "internal error";
  }
  return "unknown error";
}

Coloring::Coloring(std::vector<unsigned> colors, unsigned r) : colors_(std::move(colors)), r_(r) {
  if (r == 0) throw Error(ErrorKind::InvalidArgument, "coloring needs at least one color");
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (colors_[i] < 1 || colors_[i] > r) {
      throw Error(ErrorKind::InvalidArgument, "color " + std::to_string(colors_[i]) + " at position " +
                                                  std::to_string(i) + " outside 1.." + std::to_string(r));
    }
  }
}

std::vector<Value> normalize_residues(std::span<const Value> values, Modulus n) {
  std::vector<Value> out(values.size());
  std::transform(values.begin(), values.end(), out.begin(), [d = n.value()](Value v) { return v % d; });
  return out;
}

std::vector<Value> normalize_residues(std::span<const std::int64_t> values, Modulus n) {
  std::vector<Value> out(values.size());
  const auto d = n.value();
  std::transform(values.begin(), values.end(), out.begin(), [d](std::int64_t v) {
    if (v >= 0) return static_cast<Value>(v) % d;
    // |v| as unsigned avoids overflow at INT64_MIN
    const Value mag = static_cast<Value>(-(v + 1)) + 1;
    const Value r = mag % d;
    return r == 0 ? Value{0} : d - r;
  });
  return out;
}

Value checked_add(Value a, Value b) {
  Value out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorKind::Internal, "64-bit overflow adding " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

}  // namespace zsum
