#ifndef PIEX_EXAMPLE_INDEX_H_
#define PIEX_EXAMPLE_INDEX_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piex/error.h"
#include "piex/lexicon.h"
#include "piex/parse_match.h"
#include "piex/sentence.h"

namespace piex {

// Whitespace split, then quotes, brackets and trailing punctuation are
// peeled off into tokens of their own.
std::vector<std::string> plain_tokenize(std::string_view text);

// Token positions that lie strictly between a matched pair of quotes of the
// same family (straight or typographic, double or single).
std::vector<bool> quoted_positions(const std::vector<std::string>& tokens);

// Plain-text example corpus: `sentences.txt` (one sentence per line, the
// line number is the sentence id) and `index.tsv` (lowercased token, then
// comma-separated sentence ids).
class ExampleIndex {
 public:
    static void build(const std::vector<std::string>& sentences, const std::filesystem::path& dir);
    static ExampleIndex open(const std::filesystem::path& dir);
    static ExampleIndex from_sentences(std::vector<std::string> sentences);

    std::size_t size() const { return sentences_.size(); }
    const std::string& sentence(int id) const { return sentences_.at(static_cast<std::size_t>(id - 1)); }

    // Sentences containing the exact dictionary form outside quotation marks.
    std::vector<int> find(const PieEntry& entry) const;
    // Shortest such sentence by token count; ties go to the smaller id.
    std::optional<int> select(const PieEntry& entry) const;

 private:
    std::vector<std::string> sentences_;
    std::vector<std::vector<std::string>> tokens_;  // lowercased
    std::map<std::string, std::vector<int>> postings_;
};

class ParseSourceUnavailable : public InputError {
 public:
    explicit ParseSourceUnavailable(const std::string& what) : InputError(what) {}
};

// Supplies dependency parses for example sentences.
class ParseSource {
 public:
    virtual ~ParseSource() = default;
    virtual DepSentence parse(int sentence_id, const std::string& text) const = 0;
};

// Parses produced ahead of time, keyed by sent_id. A missing file or a
// missing sentence raises ParseSourceUnavailable.
class ConlluParseSource : public ParseSource {
 public:
    explicit ConlluParseSource(const std::filesystem::path& path);
    DepSentence parse(int sentence_id, const std::string& text) const override;

 private:
    std::filesystem::path path_;
    bool available_ = false;
    std::map<std::string, DepSentence> parses_;
};

// Pattern from the parse of the shortest example sentence. Falls back to
// the isolated pattern (provenance BACKOFF) when no sentence is found or the
// words do not form one subtree there; throws InputError when that fallback
// is needed but `isolated` is null.
PiePattern acquire_in_context(const PieEntry& entry, const ExampleIndex& index,
                              const ParseSource& source, const PiePattern* isolated);

}  // namespace piex

#endif  // PIEX_EXAMPLE_INDEX_H_
