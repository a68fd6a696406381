// Brute-force reference implementations used to check the real matchers.
#ifndef PIEX_TESTS_ORACLES_H_
#define PIEX_TESTS_ORACLES_H_

#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "piex/extraction.h"
#include "piex/lexicon.h"
#include "piex/morphology.h"
#include "piex/parse_match.h"
#include "piex/sentence.h"
#include "piex/string_match.h"

namespace piex::support {

// (doc, sent, entry, first, last)
using Hit = std::tuple<std::string, std::string, std::string, int, int>;

std::set<Hit> hits_of(const std::vector<Extraction>& rows);

// Every subsequence of sentence units, filtered by the per-unit predicate of
// the mode and the gap bound.
std::set<Hit> brute_force_string(const std::vector<DepSentence>& corpus, const Lexicon& lexicon,
                                 const MatchOptions& options, const Morphology& morphology);

// Every injective mapping from pattern nodes to sentence tokens. `pattern`
// must already have its articles removed.
std::set<std::pair<int, int>> brute_force_subtree(const DepSentence& sentence, const PiePattern& pattern,
                                                  RelaxationLevel level, bool match_articles = false);

// Full-matrix edit distance with substitution cost 2, over code points.
std::size_t dp_levenshtein(const std::string& a, const std::string& b);

// Random labelled tree over a small vocabulary, so patterns built from one
// tree often occur in another.
DepSentence random_tree(std::mt19937& rng, int n_tokens, const std::string& sent_id);

// Connected random pattern of 2..max_nodes nodes cut out of a tree, with
// occasional wildcards, label changes and reversed edges.
PiePattern random_pattern(std::mt19937& rng, const DepSentence& source, int max_nodes,
                          const std::string& entry_id);

}  // namespace piex::support

#endif  // PIEX_TESTS_ORACLES_H_
