#include "zsum/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "zsum/builder.hpp"
#include "zsum/central.hpp"
#include "zsum/certificate_json.hpp"
#include "zsum/setstruct.hpp"

namespace zsum::cli {

namespace {

constexpr auto kU64Max = std::numeric_limits<std::uint64_t>::max();

Value parse_term(std::string_view token, const std::string& where) {
  if (!token.empty() && token.front() == '-') {
    throw UsageError(where + ": negative value " + std::string(token) + " is not allowed");
  }
  Value out = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw UsageError(where + ": \"" + std::string(token) + "\" is not a nonnegative 64-bit integer");
  }
  return out;
}

std::vector<Value> parse_whitespace_terms(std::istream& in, const std::string& where, std::size_t& total) {
  std::vector<Value> out;
  std::string token;
  while (in >> token) {
    if (++total > kMaxFileTerms) throw UsageError(where + ": more than 1000000 terms");
    out.push_back(parse_term(token, where));
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return in;
}

std::vector<Value> load_values(const ValueSource& src) {
  if (!src.file) return src.inline_values;
  auto in = open_input(*src.file);
  std::size_t total = 0;
  return parse_whitespace_terms(in, *src.file, total);
}

std::vector<InputSequence> affine_sequences(std::size_t m, const std::vector<std::size_t>& lengths) {
  std::vector<InputSequence> out;
  for (std::size_t j = 1; j <= m; ++j) {
    InputSequence s{j, {}};
    for (std::size_t i = 1; i <= lengths[j - 1]; ++i) s.terms.push_back(j * i + (j - 1));
    out.push_back(std::move(s));
  }
  return out;
}

// default_lengths supplies per-sequence lengths when --affine has no --length.
std::vector<InputSequence> load_sequences(const SequenceSource& src, const std::vector<std::size_t>& default_lengths) {
  std::vector<InputSequence> out;
  if (src.affine) {
    std::vector<std::size_t> lengths(*src.affine, src.length.value_or(0));
    if (!src.length) {
      if (default_lengths.size() != *src.affine) throw UsageError("--affine: sequence count does not match");
      lengths = default_lengths;
    }
    return affine_sequences(*src.affine, lengths);
  }
  if (src.file) {
    auto in = open_input(*src.file);
    std::size_t total = 0;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      auto terms = parse_whitespace_terms(ls, *src.file, total);
      if (!terms.empty()) out.push_back({out.size() + 1, std::move(terms)});
    }
  } else {
    for (const auto& terms : src.inline_sequences) out.push_back({out.size() + 1, terms});
  }
  if (out.empty()) throw UsageError("no sequences supplied");
  return out;
}

std::string read_file(const std::string& path) {
  auto in = open_input(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  return Format::Text;
}

template <class T>
void require_one_source(const std::string& sub, const T& inline_flag, const std::optional<std::string>& file) {
  if (inline_flag.empty() == !file.has_value()) {
    throw UsageError(sub + ": exactly one of --values or --file is required");
  }
}

}  // namespace

std::vector<Value> parse_value_list(const std::string& text, const std::string& flag) {
  std::vector<Value> out;
  std::string_view rest = text;
  if (rest.empty()) return out;
  for (;;) {
    const auto comma = rest.find(',');
    auto token = rest.substr(0, comma);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    out.push_back(parse_term(token, flag));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

Command parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Zero-sum solvers, set-structure analyzers and configuration certificates", "zsum"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string format = "text";
  std::optional<std::uint64_t> budget_flag;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--budget", budget_flag, "Enumeration budget (overrides ZS_BUDGET)")
      ->check(CLI::Range(std::uint64_t{1}, kU64Max));

  const auto modulus_range = CLI::Range(std::uint64_t{1}, kU64Max);
  std::uint64_t modulus = 0;
  std::string values_text, file;
  std::optional<std::string> file_opt;

  auto* solve = app.add_subcommand("egz-solve", "Find n values summing to 0 mod n");
  std::string method = "dp";
  std::optional<std::uint64_t> split;
  solve->add_option("--modulus", modulus, "Modulus n")->required()->check(modulus_range);
  solve->add_option("--values", values_text, "Comma-separated values");
  solve->add_option("--file", file_opt, "File of whitespace-separated values");
  solve->add_option("--method", method, "Solver")->check(CLI::IsMember({"dp", "brute"}));
  solve->add_option("--split", split, "Compose from factors split and n/split")->check(modulus_range);

  auto* part = app.add_subcommand("egz-partition", "Zero-sum subset inside one color class");
  std::string colors_text, threshold = "linear";
  std::optional<unsigned> r_flag;
  part->add_option("--modulus", modulus, "Modulus n")->required()->check(modulus_range);
  part->add_option("--values", values_text, "Comma-separated values");
  part->add_option("--file", file_opt, "File of whitespace-separated values");
  part->add_option("--colors", colors_text, "Comma-separated color per position (1..r)")->required();
  part->add_option("--r", r_flag, "Number of colors (default: largest color used)")
      ->check(CLI::Range(1u, std::numeric_limits<unsigned>::max()));
  part->add_option("--threshold", threshold, "Size threshold")->check(CLI::IsMember({"linear", "quadratic"}));

  auto* dav = app.add_subcommand("davenport", "Davenport constant of Z_n by exhaustive search");
  dav->add_option("--modulus", modulus, "Modulus n")->required()->check(modulus_range);

  auto* sets = app.add_subcommand("sets-check", "Window analyzers for thick / syndetic / piecewise syndetic sets");
  SetsCheck sc;
  std::string property = "member", f_text, g_text;
  sets->add_option("--desc", sc.desc, "Set description, e.g. \"2N+0 & I2\"")->required();
  sets->add_option("--property", property, "Property")
      ->check(CLI::IsMember({"member", "thick", "syndetic", "pws"}));
  sets->add_option("--f", f_text, "Finite set F (comma-separated)");
  sets->add_option("--g", g_text, "Translation set G (comma-separated)");
  sets->add_option("--window", sc.window, "Syndeticity window")->check(modulus_range);
  sets->add_option("--bound", sc.bound, "Search bound for x")->check(modulus_range);
  sets->add_option("--x", sc.x, "Membership query");

  ConfigBuild cb;
  std::vector<std::string> seq_texts;
  std::optional<std::size_t> affine, length;
  std::size_t levels = 0;
  auto add_sequence_flags = [&](CLI::App* sub) {
    sub->add_option("--seq", seq_texts, "Inline sequence (repeatable)")->allow_extra_args(false);
    sub->add_option("--file", file_opt, "File with one whitespace-separated sequence per line");
    sub->add_option("--affine", affine, "Generate m sequences x_{i,j} = j*i + (j-1)")
        ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
    sub->add_option("--length", length, "Terms per generated sequence");
  };
  auto* build = app.add_subcommand("config-build", "Build a block-and-translate configuration certificate");
  build->add_option("--modulus", modulus, "Modulus n")->required()->check(modulus_range);
  build->add_option("--surrogate", cb.surrogate, "mod:<d> or ip:<a1,...>[/g]")->required();
  build->add_option("--levels", levels, "Level count L")->required()->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  build->add_option("--out", cb.out, "Certificate path (default: stdout)");
  add_sequence_flags(build);

  ConfigVerify cv;
  auto* verify = app.add_subcommand("config-verify", "Verify a certificate against its sequences");
  verify->add_option("--cert", cv.cert, "Certificate path")->required();
  add_sequence_flags(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  Command cmd;
  cmd.format = parse_format(format);
  if (const char* env = std::getenv("ZS_BUDGET"); env != nullptr && *env != '\0') {
    cmd.budget = parse_term(env, "ZS_BUDGET");
    if (cmd.budget == 0) throw UsageError("ZS_BUDGET must be >= 1");
  }
  if (budget_flag) cmd.budget = *budget_flag;

  auto sequence_source = [&](const std::string& sub) {
    SequenceSource src;
    const int given = (!seq_texts.empty()) + file_opt.has_value() + affine.has_value();
    if (given != 1) throw UsageError(sub + ": exactly one of --seq, --file or --affine is required");
    if (length && !affine) throw UsageError(sub + ": --length only applies to --affine");
    for (const auto& t : seq_texts) src.inline_sequences.push_back(parse_value_list(t, "--seq"));
    src.file = file_opt;
    src.affine = affine;
    src.length = length;
    return src;
  };

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  if (name == "egz-solve") {
    require_one_source(name, values_text, file_opt);
    EgzSolve c{Modulus(modulus), {parse_value_list(values_text, "--values"), file_opt},
               method == "brute" ? SolveMethod::Brute : SolveMethod::Dp, split};
    if (split && modulus % *split != 0) throw UsageError("--split: " + std::to_string(*split) + " does not divide --modulus");
    if (split && method == "brute") throw UsageError("--split: only the dp method composes");
    cmd.sub = c;
  } else if (name == "egz-partition") {
    require_one_source(name, values_text, file_opt);
    EgzPartition c{Modulus(modulus), {parse_value_list(values_text, "--values"), file_opt}, {}, 0,
                   threshold == "quadratic" ? Threshold::Quadratic : Threshold::Linear};
    for (auto v : parse_value_list(colors_text, "--colors")) {
      if (v == 0 || v > std::numeric_limits<unsigned>::max()) throw UsageError("--colors: colors run from 1 to r");
      c.colors.push_back(static_cast<unsigned>(v));
    }
    if (c.colors.empty()) throw UsageError("--colors: empty coloring");
    const unsigned max_color = *std::max_element(c.colors.begin(), c.colors.end());
    c.r = r_flag.value_or(max_color);
    if (max_color > c.r) throw UsageError("--colors: color " + std::to_string(max_color) + " exceeds --r");
    cmd.sub = c;
  } else if (name == "davenport") {
    cmd.sub = Davenport{Modulus(modulus)};
  } else if (name == "sets-check") {
    sc.property = property == "thick"      ? SetProperty::Thick
                  : property == "syndetic" ? SetProperty::Syndetic
                  : property == "pws"      ? SetProperty::Pws
                                           : SetProperty::Member;
    sc.f = parse_value_list(f_text, "--f");
    sc.g = parse_value_list(g_text, "--g");
    const bool needs_f = sc.property == SetProperty::Thick || sc.property == SetProperty::Pws;
    const bool needs_g = sc.property == SetProperty::Syndetic || sc.property == SetProperty::Pws;
    if (needs_f && sc.f.empty()) throw UsageError("--f: required for --property " + property);
    if (needs_g && sc.g.empty()) throw UsageError("--g: required for --property " + property);
    try {
      SetDescription::parse(sc.desc);
    } catch (const Error& e) {
      throw UsageError(std::string("--desc: ") + e.what());
    }
    cmd.sub = sc;
  } else if (name == "config-build") {
    cb.n = Modulus(modulus);
    cb.levels = levels;
    try {
      CentralSurrogate::parse(cb.surrogate);
    } catch (const Error& e) {
      throw UsageError(std::string("--surrogate: ") + e.what());
    }
    cb.sequences = sequence_source(name);
    cmd.sub = cb;
  } else {
    cv.sequences = sequence_source(name);
    cmd.sub = cv;
  }
  return cmd;
}

namespace {

struct Executor {
  const Command& cmd;
  std::ostream& out;

  int operator()(const EgzSolve& c) const {
    const auto values = load_values(c.values);
    std::optional<ZeroSumWitness> w;
    if (c.split) {
      w = egz_compose(values, Modulus(*c.split), Modulus(c.n.value() / *c.split));
    } else if (c.method == SolveMethod::Brute) {
      w = find_zero_sum_subset_bruteforce(values, c.n, cmd.budget);
    } else {
      w = find_zero_sum_subset_dp(values, c.n);
    }
    out << render_witness(values, w, c.n, cmd.format);
    return w ? kSuccess : kNotFound;
  }

  int operator()(const EgzPartition& c) const {
    const auto values = load_values(c.values);
    const auto result = partition_zero_sum(values, Coloring(c.colors, c.r), c.n, c.threshold);
    out << render_partition(values, result, cmd.format);
    return kSuccess;
  }

  int operator()(const Davenport& c) const {
    out << render_davenport(c.n, davenport_constant(c.n, cmd.budget), cmd.format);
    return kSuccess;
  }

  int operator()(const SetsCheck& c) const {
    const auto a = SetDescription::parse(c.desc);
    SetCheckOutcome o;
    o.description = a.to_string();
    switch (c.property) {
      case SetProperty::Member:
        o.property = "member";
        o.member_query = c.x;
        o.holds = membership(a, c.x);
        break;
      case SetProperty::Thick:
        o.property = "thick";
        o.bound = c.bound;
        o.witness = thick_witness(a, c.f, c.bound);
        o.holds = o.witness.has_value();
        break;
      case SetProperty::Syndetic: {
        o.property = "syndetic";
        o.bound = c.window;
        const auto r = syndetic_check(a, c.g, c.window);
        o.holds = r.holds;
        o.uncovered = r.uncovered;
        if (r.holds) o.witness = r.witness;
        break;
      }
      case SetProperty::Pws:
        o.property = "pws";
        o.bound = c.bound;
        o.witness = pws_witness(a, c.g, c.f, c.bound);
        o.holds = o.witness.has_value();
        break;
    }
    out << render_set_check(o, cmd.format);
    return o.holds ? kSuccess : kNotFound;
  }

  int operator()(const ConfigBuild& c) const {
    const auto surrogate = CentralSurrogate::parse(c.surrogate);
    const std::size_t need = c.levels * (2 * c.n.value() - 1) * surrogate.translations().size();
    const std::size_t m = c.sequences.affine.value_or(0);
    const auto sequences = load_sequences(c.sequences, std::vector<std::size_t>(m, need));
    const auto cert = build_configuration(sequences, c.n, surrogate, c.levels, cmd.budget);
    if (!c.out) {
      out << serialize_certificate(cert);
      return kSuccess;
    }
    std::ofstream file(*c.out);
    if (!file) throw UsageError("cannot write " + *c.out);
    file << serialize_certificate(cert);
    out << render_build_summary(cert, *c.out, cmd.format);
    return kSuccess;
  }

  int operator()(const ConfigVerify& c) const {
    const auto cert = parse_certificate(read_file(c.cert));
    std::vector<std::size_t> lengths;
    for (const auto& s : cert.sequences) lengths.push_back(s.length);
    const auto sequences = load_sequences(c.sequences, lengths);
    const auto report = verify_certificate(sequences, cert, base_set(cert.surrogate), cmd.budget);
    out << render_chain_report(report, cmd.format);
    return report.valid() ? kSuccess : kNotFound;
  }
};

}  // namespace

int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
  try {
    return std::visit(Executor{cmd, out}, cmd.sub);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::BudgetExceeded: return kBudget;
      case ErrorKind::InvalidArgument:
      case ErrorKind::InsufficientElements: return kUsage;
      default: return kNotFound;
    }
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kSuccess;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return execute(cmd, out, err);
}

}  // namespace zsum::cli
