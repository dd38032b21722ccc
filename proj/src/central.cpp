#include "zsum/central.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace zsum {

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view spec) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::InvalidArgument, "bad number \"" + std::string(text) + "\" in surrogate \"" +
                                                std::string(spec) + "\"");
  }
  return out;
}

std::vector<Value> one_to(std::uint64_t g) {
  std::vector<Value> out(g);
  std::iota(out.begin(), out.end(), Value{1});
  return out;
}

}  // namespace

CentralSurrogate CentralSurrogate::modulus_oracle(std::uint64_t d) {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "modulus oracle needs d >= 1");
  CentralSurrogate s;
  s.kind_ = Kind::Modulus;
  s.d_ = d;
  s.translations_ = one_to(d);
  return s;
}

CentralSurrogate CentralSurrogate::ip_oracle(std::vector<Value> generators, std::uint64_t g) {
  if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "IP oracle needs generators");
  if (generators.size() > 64) throw Error(ErrorKind::InvalidArgument, "IP oracle supports at most 64 generators");
  if (g == 0) throw Error(ErrorKind::InvalidArgument, "IP oracle translation set must be nonempty");
  Value prefix = 0;
  for (auto a : generators) {
    if (a <= prefix || a == 0) {
      throw Error(ErrorKind::InvalidArgument,
                  "IP generators must be superincreasing; " + std::to_string(a) + " <= " + std::to_string(prefix));
    }
    prefix = checked_add(prefix, a);
  }
  CentralSurrogate s;
  s.kind_ = Kind::IP;
  s.generators_ = std::move(generators);
  s.translations_ = one_to(g);
  return s;
}

CentralSurrogate CentralSurrogate::parse(std::string_view spec) {
  if (spec.starts_with("mod:")) return modulus_oracle(parse_u64(spec.substr(4), spec));
  if (spec.starts_with("ip:")) {
    std::string_view body = spec.substr(3);
    std::uint64_t g = 1;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
      g = parse_u64(body.substr(slash + 1), spec);
      body = body.substr(0, slash);
    }
    std::vector<Value> gens;
    while (!body.empty()) {
      const auto comma = body.find(',');
      gens.push_back(parse_u64(body.substr(0, comma), spec));
      if (comma == std::string_view::npos) break;
      body = body.substr(comma + 1);
      if (body.empty()) throw Error(ErrorKind::InvalidArgument, "trailing ',' in surrogate \"" + std::string(spec) + "\"");
    }
    return ip_oracle(std::move(gens), g);
  }
  throw Error(ErrorKind::InvalidArgument, "surrogate must be mod:<d> or ip:<a1,...>, got \"" + std::string(spec) + "\"");
}

std::string CentralSurrogate::spec() const {
  if (kind_ == Kind::Modulus) return "mod:" + std::to_string(d_);
  std::string out = "ip:";
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(generators_[i]);
  }
  if (translations_.size() != 1) out += "/" + std::to_string(translations_.size());
  return out;
}

std::optional<std::uint64_t> CentralSurrogate::support(Value x) const {
  if (kind_ != Kind::IP || x == 0) return std::nullopt;
  std::uint64_t mask = 0;
  for (std::size_t i = generators_.size(); i-- > 0;) {
    if (x >= generators_[i]) {
      x -= generators_[i];
      mask |= std::uint64_t{1} << i;
    }
  }
  if (x != 0) return std::nullopt;
  return mask;
}

std::optional<Value> CentralSurrogate::star_ceiling() const {
  if (kind_ == Kind::Modulus) return std::nullopt;
  return std::accumulate(generators_.begin(), generators_.end(), Value{0});
}

bool star_membership(const CentralSurrogate& s, Value x) {
  if (x == 0) return false;
  if (s.kind() == CentralSurrogate::Kind::Modulus) return x % s.d() == 0;
  return s.support(x).has_value();
}

bool CorePredicate::operator()(Value x) const {
  if (surrogate_.kind() == CentralSurrogate::Kind::Modulus) return star_membership(surrogate_, x);
  const auto sup = surrogate_.support(x);
  return sup && (*sup & forbidden_) == 0;
}

CorePredicate core_after_shifts(const CentralSurrogate& s, std::span<const Value> shifts) {
  std::uint64_t forbidden = 0;
  for (auto z : shifts) {
    if (!star_membership(s, z)) {
      throw Error(ErrorKind::ShiftOutsideStar, "shift " + std::to_string(z) + " is not in the star set of " + s.spec());
    }
    // dN absorbs its own shifts; IP cores exclude every support already used
    if (s.kind() == CentralSurrogate::Kind::IP) forbidden |= *s.support(z);
  }
  return CorePredicate(s, forbidden);
}

std::optional<Translation> translate_into_core(const CentralSurrogate& s, std::span<const Value> e,
                                               const CorePredicate& core, std::uint64_t bound) {
  if (e.empty()) throw Error(ErrorKind::InvalidArgument, "translate_into_core needs a nonempty set");
  const auto& g = s.translations();
  const Value e_min = *std::min_element(e.begin(), e.end());
  const auto ceiling = s.star_ceiling();

  Translation out;
  out.t.resize(e.size());
  for (Value x = 1; x <= bound; ++x) {
    // past the largest star element nothing can land in the core
    if (ceiling && checked_add(checked_add(e_min, x), g.front()) > *ceiling) break;
    bool all = true;
    for (std::size_t k = 0; k < e.size() && all; ++k) {
      const Value base = checked_add(e[k], x);
      auto hit = std::find_if(g.begin(), g.end(), [&](Value t) { return core(checked_add(base, t)); });
      if (hit == g.end()) {
        all = false;
      } else {
        out.t[k] = *hit;
      }
    }
    if (all) {
      out.x = x;
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace zsum
