#ifndef PIEX_SENTENCE_H_
#define PIEX_SENTENCE_H_

#include <string>
#include <string_view>
#include <vector>

namespace piex {

struct Token {
    int id = 0;  // 1-based
    std::string form;
    std::string lemma;
    std::string upos;
    std::string xpos;
    std::string feats;
    int head = 0;  // 0 = root
    std::string deprel;
    std::string misc;

    bool operator==(const Token&) const = default;
};

struct DepSentence {
    std::string document_id;
    std::string sentence_id;
    std::vector<Token> tokens;
    // Extra sentence-level comments (without "# "), kept for round trips.
    std::vector<std::string> comments;

    const Token& token(int id) const { return tokens[static_cast<std::size_t>(id - 1)]; }
    std::vector<int> children(int id) const;
    // Space-joined token forms.
    std::string text() const;

    bool operator==(const DepSentence&) const = default;
};

// Piece of a token as seen by the string matchers. Hyphenated tokens are
// split into their parts and a trailing possessive 's becomes its own unit.
struct Unit {
    std::string text;
    int token = 0;  // id of the token it came from
    std::string upos;
};

std::vector<Unit> make_units(const DepSentence& sentence);
// Same splitting applied to one bare string (used for dictionary words).
std::vector<std::string> split_units(std::string_view token);

bool is_clitic_unit(std::string_view text);

}  // namespace piex

#endif  // PIEX_SENTENCE_H_
