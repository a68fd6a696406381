#ifndef PIEX_TOOLS_CLI_H_
#define PIEX_TOOLS_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "piex/parse_match.h"
#include "piex/string_match.h"

namespace piex::cli {

enum class Method { kExact, kFuzzy, kInflect, kParse };
enum class Format { kTsv, kJson, kTable };

struct RunConfig {
    std::string subcommand;

    std::vector<std::string> lexicons;
    std::string corpus;
    std::string parses;          // isolated PIE parses
    std::string in_context;      // example index directory
    std::string example_parses;  // parses of example sentences
    std::string gold;
    std::string extractions;
    std::vector<std::string> inputs;  // combine
    std::string review;
    std::string exceptions;
    std::string labels;
    std::string sentences;
    std::string pairs_out;
    std::string sheet;
    std::string morphology;

    Method method = Method::kExact;
    MatchOptions match;
    RelaxationLevel level = RelaxationLevel::kFull;
    bool match_articles = false;

    bool intersect = false;
    bool expand_placeholders = false;
    bool parentheticals = true;

    bool order_restriction = true;
    bool gap_restriction = true;
    int max_gap = 3;
    std::size_t top_n = 0;

    std::string output;  // empty: standard output
    Format format = Format::kTsv;
    unsigned jobs = 1;
};

// Thrown for flag combinations that do not make sense together.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses argv. Returns nullopt after printing help; throws UsageError or the
// CLI11 parse error otherwise.
std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out);

// Executes a validated config. Output goes to config.output or `out`.
void run(const RunConfig& config, std::ostream& out, std::ostream& log);

// Full entry point: 0 success, 1 input or usage error, 2 internal error.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace piex::cli

#endif  // PIEX_TOOLS_CLI_H_
