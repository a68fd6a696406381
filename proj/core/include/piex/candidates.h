#ifndef PIEX_CANDIDATES_H_
#define PIEX_CANDIDATES_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "piex/lexicon.h"
#include "piex/morphology.h"
#include "piex/sentence.h"

namespace piex {

struct CandidateOptions {
    // Entries without a verb must show their words in dictionary order.
    bool order_restriction = true;
    // Entries made of prepositions, determiners and one noun allow at most
    // `max_gap` tokens between consecutive matched words.
    bool gap_restriction = true;
    int max_gap = 3;
};

struct Candidate {
    std::string entry_id;
    std::string document_id;
    std::string sentence_id;
    std::vector<int> positions;  // strictly increasing token ids
    bool order_restricted = false;
    bool gap_restricted = false;

    bool operator==(const Candidate&) const = default;
};

// Words that must be present: everything but determiners, punctuation and
// placeholder slots.
std::vector<std::size_t> defining_words(const PieEntry& entry);
bool has_verb(const PieEntry& entry);
// ADP/DET words plus exactly one NOUN.
bool is_preposition_noun_shape(const PieEntry& entry);

class CandidateExtractor {
 public:
    CandidateExtractor(const Lexicon& lexicon, CandidateOptions options = {},
                       const Morphology& morphology = Morphology::builtin());

    std::vector<Candidate> extract(const DepSentence& sentence) const;
    // Sorted like extractions: document, sentence, first position, entry.
    std::vector<Candidate> extract_corpus(const std::vector<DepSentence>& corpus,
                                          unsigned jobs = 1) const;

 private:
    struct Slot {
        std::vector<std::string> forms;  // lowercased
        std::string lemma;
        WordClass cls = WordClass::kNoun;
        bool inflects = false;
    };
    struct Rule {
        const PieEntry* entry;
        std::vector<Slot> slots;
        bool ordered;
        bool gap_limited;
    };
    CandidateOptions options_;
    const Morphology* morphology_;
    std::vector<Rule> rules_;
};

// Header plus one row per candidate; matched tokens appear as [[token]].
void render_annotation_sheet(const std::vector<Candidate>& candidates,
                             const std::vector<DepSentence>& corpus, const Lexicon& lexicon,
                             std::ostream& out);

}  // namespace piex

#endif  // PIEX_CANDIDATES_H_
