#ifndef PIEX_OVERLAP_H_
#define PIEX_OVERLAP_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "piex/lexicon.h"

namespace piex {

// Edit distance over code points: insertion and deletion cost 1,
// substitution cost 2.
std::size_t weighted_levenshtein(std::string_view a, std::string_view b);

// (|a| + |b| - D) / (|a| + |b|); 1.0 for two empty strings.
double levenshtein_ratio(std::string_view a, std::string_view b);

enum class Heuristic { kSubstringGapped = 1, kWordSubset = 2, kLevRatio = 4 };
std::string heuristics_string(unsigned mask);  // "h1,h3"

struct ExactOverlap {
    std::size_t count = 0;
    double percent_of_a = 0;
    double percent_of_b = 0;
};
ExactOverlap exact_overlap(const Lexicon& a, const Lexicon& b);

struct CandidatePair {
    std::string a_id;
    std::string b_id;
    std::string a_surface;
    std::string b_surface;
    unsigned heuristics = 0;  // Heuristic bits

    bool operator==(const CandidatePair&) const = default;
};

// Heuristic building blocks, on lowercased surfaces.
bool gapped_subsequence(const std::vector<std::string>& shorter, const std::vector<std::string>& longer);
bool word_subset(const std::vector<std::string>& a, const std::vector<std::string>& b);
unsigned pair_heuristics(std::string_view a_surface, std::string_view b_surface);

// Pairs flagged by any heuristic, excluding exact (case-insensitive) matches.
// Sorted by (a id, b id).
std::vector<CandidatePair> candidate_pairs(const Lexicon& a, const Lexicon& b);

enum class Decision { kAccept, kReject };
struct ReviewKey {
    std::string a_id;
    std::string b_id;
    auto operator<=>(const ReviewKey&) const = default;
};
using ReviewDecisions = std::map<ReviewKey, Decision>;
ReviewDecisions read_review(std::istream& in, const std::string& label = "<review>");
ReviewDecisions load_review(const std::filesystem::path& path);

struct OverlapCell {
    std::size_t exact = 0;
    std::size_t accepted = 0;    // only with decisions
    std::size_t candidates = 0;  // candidate pairs touching resource i
    double percent = 0;          // covered entries of i / |i| * 100
};

struct OverlapMatrix {
    std::vector<std::string> names;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<OverlapCell>> cells;  // [i][j]
    bool with_decisions = false;
};

// Decisions are keyed by the ids of an emitted pair of the two resources
// involved; referencing a pair that no resource pair emitted is an error.
OverlapMatrix overlap_matrix(const std::vector<Lexicon>& resources,
                             const ReviewDecisions* decisions = nullptr, unsigned jobs = 1);

void write_matrix_tsv(const OverlapMatrix& m, std::ostream& out);
void write_matrix_table(const OverlapMatrix& m, std::ostream& out);
void write_candidate_pairs(const std::vector<CandidatePair>& pairs, std::ostream& out);

}  // namespace piex

#endif  // PIEX_OVERLAP_H_
