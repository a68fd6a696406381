#ifndef PIEX_LEXICON_H_
#define PIEX_LEXICON_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace piex {

// Generic slots that dictionaries use in citation forms.
enum class PlaceholderKind {
    kPossessiveOne,       // one's
    kPossessiveSomeone,   // someone's, something's
    kObjectSomeone,       // someone
    kObjectSomething,     // something
    kAnyWord,             // —
};

std::string_view to_string(PlaceholderKind kind);

// How a dictionary word is compared against corpus tokens.
enum class WordKind {
    kLiteral,
    kAnyWord,      // "—": exactly one token
    kAnyPossessor, // "—'s": any token carrying a possessive marker
    kAnyNominal,   // "—NOUN": any noun, proper noun or pronoun
};

inline constexpr std::string_view kAnyPossessorToken = "\xE2\x80\x94's";
inline constexpr std::string_view kAnyNominalToken = "\xE2\x80\x94NOUN";

inline constexpr std::array<std::string_view, 7> kPossessivePronouns = {
    "my", "your", "his", "her", "its", "our", "their"};
inline constexpr std::array<std::string_view, 7> kObjectivePronouns = {
    "me", "you", "him", "her", "it", "us", "them"};

// a, an, the (lowercase input).
bool is_article(std::string_view lower);

struct Word {
    std::string text;
    std::string pos;  // universal POS tag, empty when untagged
    bool is_determiner = false;
    bool is_punctuation = false;
    WordKind kind = WordKind::kLiteral;

    bool operator==(const Word&) const = default;
};

struct Placeholder {
    std::size_t position = 0;
    PlaceholderKind kind = PlaceholderKind::kAnyWord;

    bool operator==(const Placeholder&) const = default;
};

struct PieEntry {
    std::string id;
    std::string source;
    std::string surface;
    std::vector<Word> words;
    std::vector<Placeholder> placeholders;

    // True when every word carries a POS tag.
    bool tagged() const;
    // Lowercased, whitespace-normalized surface used for identity.
    std::string key() const;
    // Number of words that are not punctuation.
    std::size_t content_length() const;
    // "word/POS word/POS ...", empty unless tagged().
    std::string tagged_form() const;
    const Placeholder* placeholder_at(std::size_t position) const;

    bool operator==(const PieEntry&) const = default;
};

// Splits a dictionary form into words: whitespace separated, with
// clause punctuation (",", ";", "!", ...) detached into its own word.
std::vector<std::string> tokenize_dictionary_form(std::string_view surface);

std::string surface_key(std::string_view surface);

// Derives words, flags and placeholder slots from the raw fields.
// `tagged` is the optional "word/POS ..." column; throws InputError when it
// does not align with the surface tokens.
PieEntry make_entry(std::string id, std::string_view surface, std::string source,
                    std::string_view tagged = {});

class Lexicon {
 public:
    Lexicon() = default;
    explicit Lexicon(std::string name) : name_(std::move(name)) {}

    // Returns false (and keeps the existing entry) when an entry with the
    // same surface key is already present. Throws InputError when the id is
    // taken by a different surface.
    bool add(PieEntry entry);

    const std::vector<PieEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::string& name() const { return name_; }

    const PieEntry* find(std::string_view id) const;
    const PieEntry* find_by_key(std::string_view key) const;

    bool operator==(const Lexicon& other) const {
        return name_ == other.name_ && entries_ == other.entries_;
    }

 private:
    std::string name_;
    std::vector<PieEntry> entries_;
    std::unordered_map<std::string, std::size_t> by_id_;
    std::unordered_map<std::string, std::size_t> by_key_;
};

// Reads the lexicon TSV (`id<TAB>surface<TAB>source[<TAB>tagged]`). A line
// without tabs is a bare dictionary form; its id is derived from the surface.
// Case-insensitive duplicate surfaces collapse onto the first occurrence and
// single-word entries are dropped.
Lexicon read_lexicon(std::istream& in, const std::string& source_name,
                     const std::string& label = "<lexicon>");
Lexicon load_lexicon(const std::filesystem::path& path, const std::string& source_name);

void write_lexicon(const Lexicon& lexicon, std::ostream& out);

// Hand-written expansions that override the parenthetical rules, keyed by
// the whitespace-normalized raw form. File format: `raw<TAB>v1|v2|...`.
using ParentheticalExceptions = std::map<std::string, std::vector<std::string>>;
ParentheticalExceptions load_parenthetical_exceptions(const std::filesystem::path& path);

// All variants of a dictionary form with parenthesised material. "(or X)"
// alternates with the preceding word group; other groups are optional.
// Output order: leftmost choice varies slowest, inclusion before exclusion,
// original wording before alternatives.
std::vector<std::string> expand_parentheticals(std::string_view raw_form);
std::vector<std::string> expand_parentheticals(std::string_view raw_form,
                                               const ParentheticalExceptions& exceptions);

// Replaces placeholder slots with concrete fillers and wildcards for the
// string matchers. Entries without placeholders come back unchanged.
std::vector<PieEntry> expand_placeholders(const PieEntry& entry);

// Entries whose surface occurs in every input lexicon. Needs at least two.
Lexicon intersect(const std::vector<Lexicon>& lexicons);

struct ExpandOptions {
    bool parentheticals = true;
    bool placeholders = false;
    const ParentheticalExceptions* exceptions = nullptr;
};

// Serializable expansion: variant rows take the parent id plus "#n".
Lexicon expand_lexicon(const Lexicon& lexicon, const ExpandOptions& options);

}  // namespace piex

#endif  // PIEX_LEXICON_H_
