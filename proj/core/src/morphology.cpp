#include "piex/morphology.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "piex/error.h"
#include "piex/lexicon.h"
#include "piex/text.h"

namespace piex::detail {
extern const std::string_view kIrregularFormsTsv;
}

namespace piex {

std::optional<WordClass> word_class_for_tag(std::string_view upos) {
    if (upos == "NOUN") return WordClass::kNoun;
    if (upos == "VERB") return WordClass::kVerb;
    return std::nullopt;
}

bool InflectionSet::contains(std::string_view form) const {
    return std::find(forms.begin(), forms.end(), form) != forms.end();
}

namespace {

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Vowel letters, with "u" after "q" counted as a consonant and "y" as a
// vowel when it follows a consonant.
std::vector<bool> vowel_mask(std::string_view w) {
    std::vector<bool> mask(w.size(), false);
    for (std::size_t i = 0; i < w.size(); ++i) {
        char c = w[i];
        if (c == 'u' && i > 0 && w[i - 1] == 'q') continue;
        if (is_vowel(c)) mask[i] = true;
        else if (c == 'y' && i > 0 && !mask[i - 1] && i + 1 == w.size()) mask[i] = true;
    }
    return mask;
}

std::size_t vowel_groups(std::string_view w) {
    auto mask = vowel_mask(w);
    std::size_t groups = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i] && (i == 0 || !mask[i - 1])) ++groups;
    }
    return groups;
}

// consonant-vowel-consonant ending, final consonant not w/x/y
bool cvc_end(std::string_view w) {
    if (w.size() < 3) return false;
    auto mask = vowel_mask(w);
    std::size_t n = w.size();
    char last = w[n - 1];
    if (last == 'w' || last == 'x' || last == 'y') return false;
    return !mask[n - 1] && mask[n - 2] && !mask[n - 3];
}

bool doubles_final(std::string_view w) {
    return cvc_end(w) && vowel_groups(w) == 1;
}

bool consonant_y(std::string_view w) {
    return w.size() >= 2 && w.back() == 'y' && !is_vowel(w[w.size() - 2]);
}

bool sibilant_end(std::string_view w) {
    return ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "z") ||
           ends_with(w, "ch") || ends_with(w, "sh");
}

std::string noun_plural(const std::string& w) {
    if (sibilant_end(w)) return w + "es";
    if (consonant_y(w)) return w.substr(0, w.size() - 1) + "ies";
    return w + "s";
}

std::string third_singular(const std::string& w) {
    if (sibilant_end(w)) return w + "es";
    if (consonant_y(w)) return w.substr(0, w.size() - 1) + "ies";
    if (w.size() >= 2 && w.back() == 'o' && !is_vowel(w[w.size() - 2])) return w + "es";
    return w + "s";
}

std::string past(const std::string& w) {
    if (ends_with(w, "e")) return w + "d";
    if (consonant_y(w)) return w.substr(0, w.size() - 1) + "ied";
    if (doubles_final(w)) return w + w.back() + "ed";
    return w + "ed";
}

std::string gerund(const std::string& w) {
    if (ends_with(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
    if (ends_with(w, "e") && w.size() > 2 && !ends_with(w, "ee") && !ends_with(w, "ye") &&
        !ends_with(w, "oe")) {
        return w.substr(0, w.size() - 1) + "ing";
    }
    if (doubles_final(w)) return w + w.back() + "ing";
    return w + "ing";
}

void push_unique(std::vector<std::string>& v, std::string s) {
    if (s.empty()) return;
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

// Stem endings after which a dropped "e" is restored ("judg" -> "judge").
bool wants_final_e(const std::string& stem) {
    if (stem.size() < 2) return false;
    char last = stem.back();
    char prev = stem[stem.size() - 2];
    if (last == 'v' || last == 'c' || last == 'u' || last == 'z') return true;
    if (last == 's' && prev != 's') return true;
    if (ends_with(stem, "dg")) return true;
    if (doubles_final(stem)) return true;
    if (vowel_groups(stem) >= 2 && cvc_end(stem)) {
        static const char* const kTails[] = {"at", "ut", "ur", "ir", "ar", "il", "ul",
                                             "in", "ap", "ib", "id", "ud", "od", "ok",
                                             "om", "um", "ag"};
        for (const char* t : kTails) {
            if (ends_with(stem, t)) return true;
        }
    }
    return false;
}

bool doubled_consonant(const std::string& stem) {
    if (stem.size() < 3) return false;
    char a = stem[stem.size() - 1];
    char b = stem[stem.size() - 2];
    if (a != b || is_vowel(a)) return false;
    return a != 'l' && a != 's' && a != 'z' && a != 'f';
}

// Candidate bases for a verb stem left after removing -ed or -ing.
void stem_candidates(const std::string& stem, std::vector<std::string>& out) {
    if (stem.empty()) return;
    if (doubled_consonant(stem)) push_unique(out, stem.substr(0, stem.size() - 1));
    if (wants_final_e(stem)) {
        push_unique(out, stem + "e");
        push_unique(out, stem);
    } else {
        push_unique(out, stem);
        push_unique(out, stem + "e");
    }
    if (stem.size() >= 3 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
        push_unique(out, stem.substr(0, stem.size() - 1));
    }
}

}  // namespace

Morphology Morphology::from_tsv(std::string_view tsv, const std::string& label) {
    Morphology m;
    std::istringstream in{std::string(tsv)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 3) {
            throw FormatError(label, line_no, "expected lemma<TAB>pos<TAB>forms");
        }
        std::string lemma = to_lower(trim(fields[0]));
        auto cls = word_class_for_tag(trim(fields[1]));
        if (!cls) throw FormatError(label, line_no, "pos must be NOUN or VERB");
        std::vector<std::string> forms;
        push_unique(forms, lemma);
        for (const auto& f : split(fields[2], ',')) push_unique(forms, to_lower(trim(f)));
        std::size_t limit = *cls == WordClass::kNoun ? 2 : 5;
        if (forms.size() > limit) {
            throw FormatError(label, line_no, "too many forms for '" + lemma + "'");
        }
        Key key{lemma, *cls};
        if (m.table_.count(key)) throw FormatError(label, line_no, "duplicate lemma '" + lemma + "'");
        for (const auto& f : forms) m.reverse_[{f, *cls}].push_back(lemma);
        m.table_.emplace(std::move(key), std::move(forms));
    }
    return m;
}

Morphology Morphology::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open irregular forms file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_tsv(buffer.str(), path.string());
}

const Morphology& Morphology::builtin() {
    static const Morphology instance = from_tsv(detail::kIrregularFormsTsv, "irregular_forms.tsv");
    return instance;
}

std::size_t Morphology::irregular_count(WordClass pos) const {
    return static_cast<std::size_t>(std::count_if(
        table_.begin(), table_.end(), [pos](const auto& kv) { return kv.first.second == pos; }));
}

std::vector<std::string> Morphology::regular_forms(const std::string& lemma, WordClass pos) const {
    std::vector<std::string> forms;
    push_unique(forms, lemma);
    if (pos == WordClass::kNoun) {
        push_unique(forms, noun_plural(lemma));
    } else {
        push_unique(forms, third_singular(lemma));
        push_unique(forms, past(lemma));
        push_unique(forms, gerund(lemma));
    }
    return forms;
}

InflectionSet Morphology::generate(std::string_view lemma, WordClass pos) const {
    InflectionSet set;
    set.lemma = std::string(lemma);
    set.pos = pos;
    if (lemma.empty()) return set;
    auto it = table_.find({set.lemma, pos});
    set.forms = it != table_.end() ? it->second : regular_forms(set.lemma, pos);
    return set;
}

std::vector<std::string> Morphology::analysis_candidates(const std::string& form,
                                                         WordClass pos) const {
    std::vector<std::string> out;
    if (pos == WordClass::kNoun) {
        if (ends_with(form, "ss") || ends_with(form, "us") || ends_with(form, "is")) return out;
        if (ends_with(form, "ies") && form.size() > 4) {
            push_unique(out, form.substr(0, form.size() - 3) + "y");
        }
        if (ends_with(form, "es")) {
            std::string stem = form.substr(0, form.size() - 2);
            bool single_sz = (ends_with(stem, "s") && !ends_with(stem, "ss")) ||
                             (ends_with(stem, "z") && !ends_with(stem, "zz"));
            if (single_sz) {
                push_unique(out, form.substr(0, form.size() - 1));
                push_unique(out, stem);
            } else {
                push_unique(out, stem);
                push_unique(out, form.substr(0, form.size() - 1));
            }
        }
        if (ends_with(form, "s") && form.size() > 2) push_unique(out, form.substr(0, form.size() - 1));
        return out;
    }

    if (ends_with(form, "ying") && form.size() <= 5) {
        push_unique(out, form.substr(0, form.size() - 4) + "ie");
    }
    if (ends_with(form, "ing") && form.size() > 4) {
        stem_candidates(form.substr(0, form.size() - 3), out);
    }
    if (ends_with(form, "ied") && form.size() > 4) {
        push_unique(out, form.substr(0, form.size() - 3) + "y");
    }
    if (ends_with(form, "ed") && form.size() > 3) {
        stem_candidates(form.substr(0, form.size() - 2), out);
    }
    if (ends_with(form, "ies") && form.size() > 4) {
        push_unique(out, form.substr(0, form.size() - 3) + "y");
    }
    if (ends_with(form, "es") && form.size() > 3) {
        std::string stem = form.substr(0, form.size() - 2);
        bool single_sz = (ends_with(stem, "s") && !ends_with(stem, "ss")) ||
                         (ends_with(stem, "z") && !ends_with(stem, "zz"));
        if (single_sz) push_unique(out, form.substr(0, form.size() - 1));
        if (sibilant_end(stem) || ends_with(stem, "o")) push_unique(out, stem);
    }
    if (ends_with(form, "s") && form.size() > 2 && !ends_with(form, "ss")) {
        push_unique(out, form.substr(0, form.size() - 1));
    }
    return out;
}

std::string Morphology::analyze(std::string_view form_view, WordClass pos) const {
    std::string form(form_view);
    if (form.empty()) return form;
    if (table_.count({form, pos})) return form;
    auto rev = reverse_.find({form, pos});
    if (rev != reverse_.end()) return rev->second.front();
    for (const auto& candidate : analysis_candidates(form, pos)) {
        if (generate(candidate, pos).contains(form)) return candidate;
    }
    return form;
}

std::vector<std::string> word_forms(std::string_view word, std::string_view upos,
                                    const Morphology& morphology) {
    std::vector<std::string> out{std::string(word)};
    auto cls = word_class_for_tag(upos);
    if (!cls || word.empty()) return out;

    std::string prefix;
    std::string last(word);
    auto hyphen = last.rfind('-');
    if (hyphen != std::string::npos) {
        prefix = last.substr(0, hyphen + 1);
        last = last.substr(hyphen + 1);
    }
    if (last.empty() || !std::all_of(last.begin(), last.end(), is_ascii_alpha)) return out;
    bool all_caps = last.size() > 1 && std::all_of(last.begin(), last.end(), [](char c) {
        return c >= 'A' && c <= 'Z';
    });
    if (all_caps) return out;
    bool capital = last[0] >= 'A' && last[0] <= 'Z';

    std::string lemma = morphology.analyze(to_lower(last), *cls);
    for (std::string f : morphology.generate(lemma, *cls).forms) {
        if (capital) f[0] = static_cast<char>(f[0] - 'a' + 'A');
        push_unique(out, prefix + f);
    }
    return out;
}

std::vector<std::string> variant_forms(const PieEntry& entry, const Morphology& morphology) {
    if (!entry.tagged()) {
        throw InputError("entry '" + entry.id +
                         "' has no part-of-speech tags; run the tagging step first");
    }
    std::vector<std::vector<std::string>> slots;
    slots.reserve(entry.words.size());
    for (std::size_t i = 0; i < entry.words.size(); ++i) {
        const Word& w = entry.words[i];
        if (w.is_punctuation || w.is_determiner || w.kind != WordKind::kLiteral ||
            entry.placeholder_at(i) != nullptr) {
            slots.push_back({w.text});
        } else {
            slots.push_back(word_forms(w.text, w.pos, morphology));
        }
    }

    std::size_t total = 1;
    for (const auto& s : slots) total *= s.size();
    std::vector<std::string> out;
    out.reserve(total);
    out.push_back(entry.surface);
    std::vector<std::size_t> idx(slots.size(), 0);
    for (std::size_t n = 1; n < total; ++n) {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (++idx[k] < slots[k].size()) break;
            idx[k] = 0;
        }
        std::string s;
        for (std::size_t k = 0; k < slots.size(); ++k) {
            const Word& w = entry.words[k];
            bool attach = k > 0 && w.is_punctuation && w.text.size() == 1 &&
                          std::string_view(",;:!?.").find(w.text[0]) != std::string_view::npos;
            if (k > 0 && !attach) s += ' ';
            s += slots[k][idx[k]];
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace piex
