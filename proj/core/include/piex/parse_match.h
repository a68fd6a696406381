#ifndef PIEX_PARSE_MATCH_H_
#define PIEX_PARSE_MATCH_H_

#include <map>
#include <string>
#include <vector>

#include "piex/extraction.h"
#include "piex/lexicon.h"
#include "piex/sentence.h"

namespace piex {

enum class NodeKind {
    kLiteral,
    kAnyWord,            // —
    kPossessiveSomeone,  // someone's, something's
    kPossessiveOne,      // one's
    kObject,             // someone, something
};

enum class Provenance { kIsolated, kInContext, kBackoff };
enum class RelaxationLevel { kFull, kNoLabels, kNoDirection };

std::string_view to_string(NodeKind kind);
std::string_view to_string(Provenance provenance);
std::string_view to_string(RelaxationLevel level);

struct PatternNode {
    NodeKind kind = NodeKind::kLiteral;
    std::string lemma;  // lowercase; empty for wildcards
    std::string upos;
    bool is_article = false;

    bool operator==(const PatternNode&) const = default;
};

struct PatternEdge {
    int head = 0;  // node indices
    int dependent = 0;
    std::string deprel;

    bool operator==(const PatternEdge&) const = default;
};

struct PiePattern {
    std::string entry_id;
    std::vector<PatternNode> nodes;
    std::vector<PatternEdge> edges;
    int root = 0;
    Provenance provenance = Provenance::kIsolated;

    // Connected tree over all nodes with root as its only source.
    bool is_tree() const;
    bool operator==(const PiePattern&) const = default;
};

// Pattern for an entry from a parse that contains the entry's words as a
// contiguous run of tokens. An em dash in the entry aligns with whatever
// filler word the parse has in its place. Throws InputError when the words
// are not found or do not form one connected subtree.
PiePattern build_pattern(const PieEntry& entry, const DepSentence& parse,
                         Provenance provenance = Provenance::kIsolated);

struct ParseMatchOptions {
    RelaxationLevel level = RelaxationLevel::kFull;
    // Keep article nodes and require them like any other word.
    bool match_articles = false;
};

std::string parse_method_tag(const ParseMatchOptions& options, bool in_context);

// Pattern actually matched: articles spliced out unless match_articles.
PiePattern effective_pattern(const PiePattern& pattern, bool match_articles);

// Whether sentence token `token` may stand for pattern node `node`.
bool admits(const PatternNode& node, const DepSentence& sentence, int token, bool match_articles);

// Whether sentence edge head->dep satisfies a pattern edge label, with the
// passive rule for objects.
bool label_matches(std::string_view pattern_label, const DepSentence& sentence, int head, int dep);

// The pattern must already be effective (see effective_pattern).
std::vector<Extraction> subtree_match(const DepSentence& sentence, const PiePattern& pattern,
                                      const ParseMatchOptions& options,
                                      const std::string& method = "parse");

// Convenience overload that applies article handling itself.
std::vector<Extraction> subtree_match(const DepSentence& sentence, const PiePattern& pattern,
                                      RelaxationLevel level);

// Isolated parses are matched to entries by a "# pie_id = ID" comment, or by
// sentence id when that comment is missing. Entries without a parse are
// reported through `missing`.
std::map<std::string, PiePattern> patterns_from_parses(const Lexicon& lexicon,
                                                       const std::vector<DepSentence>& parses,
                                                       std::vector<std::string>* missing = nullptr);

class ParseMatcher {
 public:
    ParseMatcher(std::vector<PiePattern> patterns, ParseMatchOptions options, bool in_context);

    std::vector<Extraction> match(const DepSentence& sentence) const;
    std::vector<Extraction> match_corpus(const std::vector<DepSentence>& corpus,
                                         unsigned jobs = 1) const;

 private:
    ParseMatchOptions options_;
    std::string method_;
    std::vector<PiePattern> patterns_;  // effective
};

}  // namespace piex

#endif  // PIEX_PARSE_MATCH_H_
