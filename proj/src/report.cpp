#include "zsum/report.hpp"

#include <sstream>

#include "zsum/certificate_json.hpp"

namespace zsum {

using nlohmann::json;

namespace {

std::string join(const std::vector<Value>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

json witness_json(const std::optional<ZeroSumWitness>& w, Modulus n) {
  json out = {{"modulus", decimal(n.value())}};
  if (!w) {
    out["indices"] = nullptr;
    return out;
  }
  json idx = json::array();
  for (auto i : w->indices) idx.push_back(decimal(i));
  out["indices"] = idx;
  return out;
}

json structure_json(const StructureWitness& w) {
  json f = json::array(), g = json::array();
  for (auto v : w.f) f.push_back(decimal(v));
  for (auto v : w.g) g.push_back(decimal(v));
  return {{"kind", to_string(w.kind)}, {"x", decimal(w.x)}, {"F", f}, {"G", g}, {"bound", decimal(w.bound)}};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_witness(std::span<const Value> values, const std::optional<ZeroSumWitness>& w, Modulus n,
                           Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << witness_json(w, n).dump() << "\n";
      break;
    case Format::Csv:
      os << "index,value,residue\n";
      if (w) {
        for (auto i : w->indices) os << i << "," << values[i] << "," << values[i] % n.value() << "\n";
      }
      break;
    case Format::Text:
      if (!w) {
        os << "no zero-sum subset of size n exists (n=" << n.value() << ")\n";
        break;
      }
      std::vector<Value> idx(w->indices.begin(), w->indices.end()), picked;
      Value sum = 0;
      for (auto i : w->indices) {
        picked.push_back(values[i]);
        sum = add_mod(sum, values[i], n.value());
      }
      os << "zero-sum subset (n=" << n.value() << "): indices " << join(idx, " ") << "; values "
         << join(picked, " ") << "; sum = " << sum << " mod " << n.value() << "\n";
      break;
  }
  return os.str();
}

std::string render_partition(std::span<const Value> values, const PartitionResult& result, Format format) {
  const Modulus n = result.witness.modulus;
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << json{{"color", decimal(result.color)}, {"witness", witness_json(result.witness, n)}}.dump() << "\n";
      break;
    case Format::Csv:
      os << "color,index,value\n";
      for (auto i : result.witness.indices) os << result.color << "," << i << "," << values[i] << "\n";
      break;
    case Format::Text:
      os << "color " << result.color << ": " << render_witness(values, result.witness, n, Format::Text);
      break;
  }
  return os.str();
}

std::string render_davenport(Modulus n, std::uint64_t d, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << json{{"davenport", decimal(d)}, {"modulus", decimal(n.value())}}.dump() << "\n";
      break;
    case Format::Csv:
      os << "modulus,davenport\n" << n.value() << "," << d << "\n";
      break;
    case Format::Text:
      os << "D(Z_" << n.value() << ") = " << d << "\n";
      break;
  }
  return os.str();
}

std::string render_set_check(const SetCheckOutcome& o, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json: {
      json out = {{"description", o.description}, {"property", o.property}, {"holds", o.holds},
                  {"bound", decimal(o.bound)}};
      if (o.member_query) out["x"] = decimal(*o.member_query);
      if (o.witness) out["witness"] = structure_json(*o.witness);
      if (o.uncovered) out["uncovered"] = decimal(*o.uncovered);
      os << out.dump() << "\n";
      break;
    }
    case Format::Csv:
      os << "description,property,holds,x,uncovered,bound\n"
         << csv_escape(o.description) << "," << o.property << "," << (o.holds ? "true" : "false") << ",";
      if (o.member_query) {
        os << *o.member_query;
      } else if (o.witness && o.witness->kind != StructureKind::Syndetic) {
        os << o.witness->x;
      }
      os << ",";
      if (o.uncovered) os << *o.uncovered;
      os << "," << o.bound << "\n";
      break;
    case Format::Text:
      if (o.property == "member") {
        os << *o.member_query << (o.holds ? " is in " : " is not in ") << o.description << "\n";
      } else if (o.property == "syndetic") {
        os << o.description << " syndetic on [1, " << o.bound << "]: " << (o.holds ? "true" : "false");
        if (o.uncovered) os << " (first uncovered y = " << *o.uncovered << ")";
        os << "\n";
      } else if (o.witness) {
        os << o.property << " witness for " << o.description << ": x = " << o.witness->x << " (F = {"
           << join(o.witness->f, ",") << "}";
        if (!o.witness->g.empty()) os << ", G = {" << join(o.witness->g, ",") << "}";
        os << ")\n";
      } else {
        os << "no " << o.property << " witness for " << o.description << " within bound " << o.bound << "\n";
      }
      break;
  }
  return os.str();
}

std::string render_chain_report(const ChainSumReport& r, Format format) {
  std::ostringstream os;
  auto chain_text = [](const ChainFailure& f) {
    std::string out;
    for (auto [level, seq] : f.chain) {
      if (!out.empty()) out += " ";
      out += "(" + std::to_string(level) + "," + std::to_string(seq) + ")";
    }
    return out;
  };
  switch (format) {
    case Format::Json: {
      json failures = json::array(), chains = json::array();
      for (const auto& f : r.failures) failures.push_back({{"clause", to_string(f.clause)}, {"detail", f.detail}});
      for (const auto& f : r.chain_failures) {
        json chain = json::array();
        for (auto [level, seq] : f.chain) chain.push_back({decimal(level), decimal(seq)});
        chains.push_back({{"chain", chain}, {"sum", decimal(f.sum)}});
      }
      os << json{{"valid", r.valid()},
                 {"chains_visited", decimal(r.visited)},
                 {"chains_expected", decimal(r.expected)},
                 {"failures", failures},
                 {"chain_failures", chains}}
                .dump()
         << "\n";
      break;
    }
    case Format::Csv:
      os << "clause,detail\n";
      os << "summary,chains visited " << r.visited << " / " << r.expected << "\n";
      for (const auto& f : r.failures) os << csv_escape(to_string(f.clause)) << "," << csv_escape(f.detail) << "\n";
      for (const auto& f : r.chain_failures) {
        os << csv_escape(to_string(Clause::ChainMembership)) << ","
           << csv_escape("chain " + chain_text(f) + " reaches " + std::to_string(f.sum)) << "\n";
      }
      break;
    case Format::Text:
      os << "chains visited: " << r.visited << " / " << r.expected << "\n";
      for (const auto& f : r.failures) os << "  violated " << to_string(f.clause) << ": " << f.detail << "\n";
      for (const auto& f : r.chain_failures) {
        os << "  violated " << to_string(Clause::ChainMembership) << ": chain " << chain_text(f) << " reaches "
           << f.sum << "\n";
      }
      if (r.valid()) {
        os << "certificate valid\n";
      } else {
        os << "certificate INVALID (first violated clause: " << to_string(*r.first_violation()) << ")\n";
      }
      break;
  }
  return os.str();
}

std::string render_build_summary(const ConfigCertificate& cert, const std::string& path, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::Json:
      os << json{{"path", path},
                 {"n", decimal(cert.n.value())},
                 {"m", decimal(cert.m)},
                 {"L", decimal(cert.levels)},
                 {"surrogate", cert.surrogate},
                 {"blocks", decimal(cert.blocks.size())}}
                .dump()
         << "\n";
      break;
    case Format::Csv:
      os << "path,n,m,L,surrogate,blocks\n"
         << csv_escape(path) << "," << cert.n.value() << "," << cert.m << "," << cert.levels << ","
         << csv_escape(cert.surrogate) << "," << cert.blocks.size() << "\n";
      break;
    case Format::Text:
      os << "wrote certificate (n=" << cert.n.value() << ", m=" << cert.m << ", L=" << cert.levels
         << ", surrogate " << cert.surrogate << ", " << cert.blocks.size() << " blocks) to " << path << "\n";
      break;
  }
  return os.str();
}

}  // namespace zsum
