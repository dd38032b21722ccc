#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "zsum/core.hpp"

namespace zsum {

// Symbolic subset of N = {1, 2, ...}. Immutable; copies share structure.
//
// DSL:  expr   := term ('|' term)*
//       term   := factor ('&' factor)*
//       factor := '!' factor | '(' expr ')' | atom
//       atom   := <d>'N'['+'<r>]     residue class r mod d, e.g. 2N+0, 3N+1, 2N
//               | 'I'<b>            union over k >= 1 of [b^k, b^k + k]
//               | '{' a,b,... '}'   explicit finite set
class SetDescription {
 public:
  static SetDescription modular(std::uint64_t d, std::set<std::uint64_t> residues);
  static SetDescription interval_family(std::uint64_t base);
  static SetDescription explicit_set(std::set<Value> members);
  static SetDescription union_of(std::vector<SetDescription> parts);
  static SetDescription intersection_of(std::vector<SetDescription> parts);
  static SetDescription complement_of(SetDescription inner);

  static SetDescription parse(std::string_view dsl);

  // False for x = 0, which is not in N.
  bool contains(Value x) const;
  std::string to_string() const;

  struct Node;

 private:
  explicit SetDescription(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline bool membership(const SetDescription& a, Value x) { return a.contains(x); }

enum class StructureKind { Thick, Syndetic, PiecewiseSyndetic };

const char* to_string(StructureKind kind);

// Re-checkable evidence produced by the analyzers.
struct StructureWitness {
  StructureKind kind = StructureKind::Thick;
  Value x = 0;                // translation (thick, pws)
  std::vector<Value> f;       // finite set that was translated (thick, pws)
  std::vector<Value> g;       // translation set (syndetic, pws)
  std::uint64_t bound = 0;    // x search bound, or syndetic window
};

// Smallest x in [1, bound] with F + x inside A. Absence says nothing about
// thickness beyond the bound.
std::optional<StructureWitness> thick_witness(const SetDescription& a, const std::vector<Value>& f,
                                              std::uint64_t bound);

struct SyndeticResult {
  bool holds = false;
  std::optional<Value> uncovered;  // least y in the window with no y + t in A
  StructureWitness witness;        // meaningful when holds
};

// Every y in [1, window] has some t in G with y + t in A.
SyndeticResult syndetic_check(const SetDescription& a, const std::vector<Value>& g, std::uint64_t window);

// Smallest x in [1, bound] such that each f in F has some t in G with f + x + t in A.
std::optional<StructureWitness> pws_witness(const SetDescription& a, const std::vector<Value>& g,
                                            const std::vector<Value>& f, std::uint64_t bound);

// Independent re-check by membership queries only.
bool verify_structure_witness(const SetDescription& a, const StructureWitness& w);

}  // namespace zsum
