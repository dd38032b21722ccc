#include "zsum/setstruct.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <variant>

namespace zsum {

struct Modular {
  std::uint64_t d;
  std::set<std::uint64_t> residues;
};
struct IntervalFamily {
  std::uint64_t base;
};
struct Explicit {
  std::set<Value> members;
};
struct Union {
  std::vector<SetDescription> parts;
};
struct Intersection {
  std::vector<SetDescription> parts;
};
struct Complement {
  SetDescription inner;
};

struct SetDescription::Node {
  std::variant<Modular, IntervalFamily, Explicit, Union, Intersection, Complement> v;
};

namespace {

bool in_interval_family(std::uint64_t base, Value x) {
  std::uint64_t power = base;
  for (std::uint64_t k = 1; power <= x; ++k) {
    if (x - power <= k) return true;
    if (power > x / base) break;
    power *= base;
  }
  return false;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<Value> sorted_unique(std::vector<Value> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void require_nonempty(const std::vector<Value>& v, const char* name) {
  if (v.empty()) throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be nonempty");
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  SetDescription parse_all() {
    auto out = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return out;
  }

 private:
  SetDescription expr() {
    std::vector<SetDescription> parts{term()};
    while (eat('|')) parts.push_back(term());
    return parts.size() == 1 ? parts.front() : SetDescription::union_of(std::move(parts));
  }

  SetDescription term() {
    std::vector<SetDescription> parts{factor()};
    while (eat('&')) parts.push_back(factor());
    return parts.size() == 1 ? parts.front() : SetDescription::intersection_of(std::move(parts));
  }

  SetDescription factor() {
    if (eat('!')) return SetDescription::complement_of(factor());
    if (eat('(')) {
      auto inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    return atom();
  }

  SetDescription atom() {
    skip_ws();
    if (eat('I')) return SetDescription::interval_family(number());
    if (eat('{')) {
      std::set<Value> members;
      if (!eat('}')) {
        do {
          members.insert(number());
        } while (eat(','));
        if (!eat('}')) fail("expected '}'");
      }
      return SetDescription::explicit_set(std::move(members));
    }
    const auto d = number();
    if (!eat('N')) fail("expected 'N' after modulus");
    std::uint64_t r = 0;
    if (eat('+')) r = number();
    return SetDescription::modular(d, {r});
  }

  std::uint64_t number() {
    skip_ws();
    std::uint64_t out = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return out;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::InvalidArgument,
                "set description \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetDescription SetDescription::modular(std::uint64_t d, std::set<std::uint64_t> residues) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "modular set needs d >= 1");
  if (residues.empty()) throw Error(ErrorKind::InvalidArgument, "modular set needs a residue");
  if (*residues.rbegin() >= d) {
    throw Error(ErrorKind::InvalidArgument,
                "residue " + std::to_string(*residues.rbegin()) + " not below modulus " + std::to_string(d));
  }
  return SetDescription(std::make_shared<const Node>(Node{Modular{d, std::move(residues)}}));
}

SetDescription SetDescription::interval_family(std::uint64_t base) {
  if (base < 2) throw Error(ErrorKind::InvalidArgument, "interval family base must be >= 2");
  return SetDescription(std::make_shared<const Node>(Node{IntervalFamily{base}}));
}

SetDescription SetDescription::explicit_set(std::set<Value> members) {
  return SetDescription(std::make_shared<const Node>(Node{Explicit{std::move(members)}}));
}

SetDescription SetDescription::union_of(std::vector<SetDescription> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "union of nothing");
  return SetDescription(std::make_shared<const Node>(Node{Union{std::move(parts)}}));
}

SetDescription SetDescription::intersection_of(std::vector<SetDescription> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "intersection of nothing");
  return SetDescription(std::make_shared<const Node>(Node{Intersection{std::move(parts)}}));
}

SetDescription SetDescription::complement_of(SetDescription inner) {
  return SetDescription(std::make_shared<const Node>(Node{Complement{std::move(inner)}}));
}

SetDescription SetDescription::parse(std::string_view dsl) { return Parser(dsl).parse_all(); }

bool SetDescription::contains(Value x) const {
  if (x == 0) return false;
  return std::visit(overloaded{
                        [x](const Modular& m) { return m.residues.count(x % m.d) != 0; },
                        [x](const IntervalFamily& f) { return in_interval_family(f.base, x); },
                        [x](const Explicit& e) { return e.members.count(x) != 0; },
                        [x](const Union& u) {
                          return std::any_of(u.parts.begin(), u.parts.end(),
                                             [x](const SetDescription& p) { return p.contains(x); });
                        },
                        [x](const Intersection& i) {
                          return std::all_of(i.parts.begin(), i.parts.end(),
                                             [x](const SetDescription& p) { return p.contains(x); });
                        },
                        [x](const Complement& c) { return !c.inner.contains(x); },
                    },
                    node_->v);
}

std::string SetDescription::to_string() const {
  auto join = [](const std::vector<SetDescription>& parts, char op) {
    std::string out = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out += op;
      out += parts[i].to_string();
    }
    return out + ")";
  };
  return std::visit(overloaded{
                        [](const Modular& m) {
                          std::string out;
                          for (auto r : m.residues) {
                            if (!out.empty()) out += '|';
                            out += std::to_string(m.d) + "N+" + std::to_string(r);
                          }
                          return m.residues.size() == 1 ? out : "(" + out + ")";
                        },
                        [](const IntervalFamily& f) { return "I" + std::to_string(f.base); },
                        [](const Explicit& e) {
                          std::string out = "{";
                          for (auto it = e.members.begin(); it != e.members.end(); ++it) {
                            if (it != e.members.begin()) out += ',';
                            out += std::to_string(*it);
                          }
                          return out + "}";
                        },
                        [&](const Union& u) { return join(u.parts, '|'); },
                        [&](const Intersection& i) { return join(i.parts, '&'); },
                        [](const Complement& c) { return "!" + c.inner.to_string(); },
                    },
                    node_->v);
}

const char* to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::Thick: return "thick";
    case StructureKind::Syndetic: return "syndetic";
    case StructureKind::PiecewiseSyndetic: return "pws";
  }
  return "?";
}

std::optional<StructureWitness> thick_witness(const SetDescription& a, const std::vector<Value>& f,
                                              std::uint64_t bound) {
  require_nonempty(f, "F");
  const auto fs = sorted_unique(f);
  for (Value x = 1; x <= bound; ++x) {
    const bool fits = std::all_of(fs.begin(), fs.end(), [&](Value e) { return a.contains(checked_add(e, x)); });
    if (fits) return StructureWitness{StructureKind::Thick, x, fs, {}, bound};
  }
  return std::nullopt;
}

SyndeticResult syndetic_check(const SetDescription& a, const std::vector<Value>& g, std::uint64_t window) {
  require_nonempty(g, "G");
  const auto gs = sorted_unique(g);
  for (Value y = 1; y <= window; ++y) {
    const bool covered = std::any_of(gs.begin(), gs.end(), [&](Value t) { return a.contains(checked_add(y, t)); });
    if (!covered) return SyndeticResult{false, y, {}};
  }
  return SyndeticResult{true, std::nullopt, StructureWitness{StructureKind::Syndetic, 0, {}, gs, window}};
}

std::optional<StructureWitness> pws_witness(const SetDescription& a, const std::vector<Value>& g,
                                            const std::vector<Value>& f, std::uint64_t bound) {
  require_nonempty(g, "G");
  require_nonempty(f, "F");
  const auto gs = sorted_unique(g);
  const auto fs = sorted_unique(f);
  for (Value x = 1; x <= bound; ++x) {
    const bool fits = std::all_of(fs.begin(), fs.end(), [&](Value e) {
      const Value base = checked_add(e, x);
      return std::any_of(gs.begin(), gs.end(), [&](Value t) { return a.contains(checked_add(base, t)); });
    });
    if (fits) return StructureWitness{StructureKind::PiecewiseSyndetic, x, fs, gs, bound};
  }
  return std::nullopt;
}

bool verify_structure_witness(const SetDescription& a, const StructureWitness& w) {
  switch (w.kind) {
    case StructureKind::Thick:
      if (w.x < 1 || w.x > w.bound || w.f.empty()) return false;
      for (auto e : w.f) {
        if (!membership(a, e + w.x)) return false;
      }
      return true;
    case StructureKind::Syndetic:
      if (w.g.empty()) return false;
      for (Value y = 1; y <= w.bound; ++y) {
        bool hit = false;
        for (auto t : w.g) hit = hit || membership(a, y + t);
        if (!hit) return false;
      }
      return true;
    case StructureKind::PiecewiseSyndetic:
      if (w.x < 1 || w.x > w.bound || w.f.empty() || w.g.empty()) return false;
      for (auto e : w.f) {
        bool hit = false;
        for (auto t : w.g) hit = hit || membership(a, e + w.x + t);
        if (!hit) return false;
      }
      return true;
  }
  return false;
}

}  // namespace zsum
