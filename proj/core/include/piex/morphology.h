#ifndef PIEX_MORPHOLOGY_H_
#define PIEX_MORPHOLOGY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace piex {

struct PieEntry;

enum class WordClass { kNoun, kVerb };

// NOUN and VERB map to a word class; every other tag is uninflected.
std::optional<WordClass> word_class_for_tag(std::string_view upos);

struct InflectionSet {
    std::string lemma;
    WordClass pos = WordClass::kNoun;
    // Distinct forms in slot order: singular, plural for nouns; base,
    // 3rd singular, past, past participle, gerund for verbs.
    std::vector<std::string> forms;

    bool contains(std::string_view form) const;
};

// Rule-based English inflection with an irregular-forms table.
// Immutable after construction.
class Morphology {
 public:
    // Table compiled into the library from core/data/irregular_forms.tsv.
    static const Morphology& builtin();

    // Reads `lemma<TAB>pos<TAB>form1,form2,...` rows.
    static Morphology from_file(const std::filesystem::path& path);
    static Morphology from_tsv(std::string_view tsv, const std::string& label = "<irregular>");

    // Base form of a lowercase token; unknown patterns come back unchanged.
    std::string analyze(std::string_view form, WordClass pos) const;

    InflectionSet generate(std::string_view lemma, WordClass pos) const;

    std::size_t irregular_count(WordClass pos) const;

 private:
    using Key = std::pair<std::string, WordClass>;

    std::vector<std::string> regular_forms(const std::string& lemma, WordClass pos) const;
    std::vector<std::string> analysis_candidates(const std::string& form, WordClass pos) const;

    std::map<Key, std::vector<std::string>> table_;
    std::map<Key, std::vector<std::string>> reverse_;  // form -> lemmas
};

// Surface variants of a tagged entry: the cartesian product of per-word
// inflections (nouns and verbs only), dictionary form first and the first
// word varying fastest. Throws InputError for untagged entries.
std::vector<std::string> variant_forms(const PieEntry& entry, const Morphology& morphology);

// Forms a single dictionary word can take, original spelling first.
// Handles capitalisation and inflects only the last part of hyphenated words.
std::vector<std::string> word_forms(std::string_view word, std::string_view upos,
                                    const Morphology& morphology);

}  // namespace piex

#endif  // PIEX_MORPHOLOGY_H_
