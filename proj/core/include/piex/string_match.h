#ifndef PIEX_STRING_MATCH_H_
#define PIEX_STRING_MATCH_H_

#include <string>
#include <vector>

#include "piex/extraction.h"
#include "piex/lexicon.h"
#include "piex/morphology.h"
#include "piex/sentence.h"

namespace piex {

enum class MatchMode { kExact, kFuzzy, kInflect };

std::string_view to_string(MatchMode mode);

struct MatchOptions {
    int max_intervening = 0;  // 0..3
    bool case_sensitive = false;
    MatchMode mode = MatchMode::kExact;
};

// Throws InputError when max_intervening is outside [0, 3].
void validate(const MatchOptions& options);

// "exact-1word", "inflect-cs-0word", ...
std::string method_tag(const MatchOptions& options);

enum class UnitKind { kLiteral, kAnyWord, kAnyNominal };

struct PatternUnit {
    std::string text;  // literal text; case folded unless case sensitive
    UnitKind kind = UnitKind::kLiteral;
    // Fuzzy suffixing applies only to literal content words.
    bool suffixable = false;

    bool operator==(const PatternUnit&) const = default;
    auto operator<=>(const PatternUnit&) const = default;
};

struct StringPattern {
    std::string entry_id;
    std::vector<PatternUnit> units;
};

// One pattern per distinct surface the mode admits: placeholder variants for
// every mode, multiplied by inflectional variants in INFLECT mode.
std::vector<StringPattern> compile_patterns(const PieEntry& entry, const MatchOptions& options,
                                            const Morphology& morphology);

// Inclusive token spans of every in-order occurrence of the pattern.
struct Span {
    int first = 0;
    int last = 0;
    bool operator==(const Span&) const = default;
    auto operator<=>(const Span&) const = default;
};
std::vector<Span> match_units(const std::vector<Unit>& units, const StringPattern& pattern,
                              const MatchOptions& options);

// Single-sentence entry points used by the tests and the CLI.
std::vector<Extraction> exact_match(const DepSentence& sentence, const PieEntry& entry,
                                    const MatchOptions& options);
std::vector<Extraction> fuzzy_match(const DepSentence& sentence, const PieEntry& entry,
                                    const MatchOptions& options);
std::vector<Extraction> inflect_match(const DepSentence& sentence, const PieEntry& entry,
                                      const MatchOptions& options, const Morphology& morphology);

class StringMatcher {
 public:
    StringMatcher(const Lexicon& lexicon, MatchOptions options,
                  const Morphology& morphology = Morphology::builtin());

    std::vector<Extraction> match(const DepSentence& sentence) const;
    // Sorted, deduplicated; identical for any `jobs`.
    std::vector<Extraction> match_corpus(const std::vector<DepSentence>& corpus,
                                         unsigned jobs = 1) const;

    const MatchOptions& options() const { return options_; }

 private:
    MatchOptions options_;
    std::string method_;
    std::vector<StringPattern> patterns_;
};

}  // namespace piex

#endif  // PIEX_STRING_MATCH_H_
