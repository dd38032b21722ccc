#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/core.hpp"

namespace zsum {

// Computable stand-in for a central set B and its star core B*.
//
//   mod:d            B = B* = dN, translation set G = {1, ..., d}
//   ip:a1,...,ak     B = B* = nonempty subset sums of a superincreasing
//                    generator list, G = {1}
//   ip:a1,...,ak/g   same with G = {1, ..., g}
//
// Superincreasing generators give every subset sum a unique support, so
// "disjoint support" is well defined.
class CentralSurrogate {
 public:
  enum class Kind { Modulus, IP };

  static CentralSurrogate modulus_oracle(std::uint64_t d);
  static CentralSurrogate ip_oracle(std::vector<Value> generators, std::uint64_t g = 1);
  static CentralSurrogate parse(std::string_view spec);

  std::string spec() const;
  Kind kind() const noexcept { return kind_; }
  std::uint64_t d() const noexcept { return d_; }
  const std::vector<Value>& generators() const noexcept { return generators_; }
  // G, ascending
  const std::vector<Value>& translations() const noexcept { return translations_; }

  // Bitmask of generator positions summing to x; nullopt when x is not a
  // nonempty subset sum. IP only.
  std::optional<std::uint64_t> support(Value x) const;

  // Largest member of B*, if B* is finite.
  std::optional<Value> star_ceiling() const;

  bool operator==(const CentralSurrogate&) const = default;

 private:
  CentralSurrogate() = default;

  Kind kind_ = Kind::Modulus;
  std::uint64_t d_ = 1;
  std::vector<Value> generators_;
  std::vector<Value> translations_;
};

bool star_membership(const CentralSurrogate& s, Value x);

// Membership predicate for C = B* ∩ (−z + B*) over all z in Z.
class CorePredicate {
 public:
  bool operator()(Value x) const;
  const CentralSurrogate& surrogate() const noexcept { return surrogate_; }
  std::uint64_t forbidden_support() const noexcept { return forbidden_; }

 private:
  friend CorePredicate core_after_shifts(const CentralSurrogate&, std::span<const Value>);
  CorePredicate(CentralSurrogate s, std::uint64_t forbidden) : surrogate_(std::move(s)), forbidden_(forbidden) {}

  CentralSurrogate surrogate_;
  std::uint64_t forbidden_ = 0;
};

// Throws ShiftOutsideStar when some z is not in B*.
CorePredicate core_after_shifts(const CentralSurrogate& s, std::span<const Value> shifts);

struct Translation {
  Value x = 0;
  std::vector<Value> t;  // t[k] in G chosen for e[k] (least one that works)
};

// Least x in [1, bound] such that every e has some t in G with core(e + x + t).
// Duplicates in e are allowed.
std::optional<Translation> translate_into_core(const CentralSurrogate& s, std::span<const Value> e,
                                               const CorePredicate& core, std::uint64_t bound);

}  // namespace zsum
