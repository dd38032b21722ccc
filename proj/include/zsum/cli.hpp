#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zsum/core.hpp"
#include "zsum/report.hpp"
#include "zsum/zerosum.hpp"

namespace zsum::cli {

// Exit code contract shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kNotFound = 1,  // no witness / property fails / verification failed
  kUsage = 2,
  kBudget = 3,
};

inline constexpr std::size_t kMaxFileTerms = 1'000'000;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by parse_args for --help; carries the help text.
struct HelpRequested {
  std::string text;
};

// Inline list or a file of whitespace-separated nonnegative integers.
struct ValueSource {
  std::vector<Value> inline_values;
  std::optional<std::string> file;
};

// Sequences for config-build / config-verify.
struct SequenceSource {
  std::vector<std::vector<Value>> inline_sequences;  // --seq, repeatable
  std::optional<std::string> file;                   // one sequence per line
  std::optional<std::size_t> affine;                 // x_{i,j} = j*i + (j-1), j = 1..m
  std::optional<std::size_t> length;                 // terms per affine sequence
};

enum class SolveMethod { Dp, Brute };

struct EgzSolve {
  Modulus n{1};
  ValueSource values;
  SolveMethod method = SolveMethod::Dp;
  std::optional<std::uint64_t> split;  // compose from factors split * (n / split)
};

struct EgzPartition {
  Modulus n{1};
  ValueSource values;
  std::vector<unsigned> colors;
  unsigned r = 0;
  Threshold threshold = Threshold::Linear;
};

struct Davenport {
  Modulus n{1};
};

enum class SetProperty { Member, Thick, Syndetic, Pws };

struct SetsCheck {
  std::string desc;
  SetProperty property = SetProperty::Member;
  std::vector<Value> f;
  std::vector<Value> g;
  std::uint64_t window = 1000;
  std::uint64_t bound = 1000;
  Value x = 1;
};

struct ConfigBuild {
  Modulus n{1};
  std::string surrogate;
  std::size_t levels = 1;
  SequenceSource sequences;
  std::optional<std::string> out;
};

struct ConfigVerify {
  std::string cert;
  SequenceSource sequences;
};

struct Command {
  std::variant<EgzSolve, EgzPartition, Davenport, SetsCheck, ConfigBuild, ConfigVerify> sub;
  Format format = Format::Text;
  std::uint64_t budget = kDefaultBudget;  // ZS_BUDGET, then --budget
};

// args excludes the program name. Throws UsageError naming the offending flag.
Command parse_args(const std::vector<std::string>& args);

// Runs a parsed command; returns the exit code.
int execute(const Command& cmd, std::ostream& out, std::ostream& err);

// parse_args + execute with the full exit-code mapping.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Comma-separated nonnegative integers; negatives are rejected.
std::vector<Value> parse_value_list(const std::string& text, const std::string& flag);

}  // namespace zsum::cli
