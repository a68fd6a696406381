#include "piex/candidates.h"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include "piex/error.h"
#include "piex/parallel.h"
#include "piex/text.h"

namespace piex {

std::vector<std::size_t> defining_words(const PieEntry& entry) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < entry.words.size(); ++i) {
        const Word& w = entry.words[i];
        if (w.is_determiner || w.pos == "DET" || w.is_punctuation) continue;
        if (w.kind != WordKind::kLiteral || entry.placeholder_at(i)) continue;
        out.push_back(i);
    }
    return out;
}

bool has_verb(const PieEntry& entry) {
    return std::any_of(entry.words.begin(), entry.words.end(),
                       [](const Word& w) { return w.pos == "VERB" || w.pos == "AUX"; });
}

bool is_preposition_noun_shape(const PieEntry& entry) {
    int nouns = 0;
    for (const auto& w : entry.words) {
        if (w.is_punctuation) continue;
        if (w.pos == "NOUN") ++nouns;
        else if (w.pos != "ADP" && w.pos != "DET") return false;
    }
    return nouns == 1;
}

CandidateExtractor::CandidateExtractor(const Lexicon& lexicon, CandidateOptions options,
                                       const Morphology& morphology)
    : options_(options), morphology_(&morphology) {
    for (const auto& entry : lexicon.entries()) {
        if (!entry.tagged()) {
            throw InputError("entry '" + entry.id +
                             "' has no part-of-speech tags; run the tagging step first");
        }
        Rule rule{&entry, {}, options_.order_restriction && !has_verb(entry),
                  options_.gap_restriction && is_preposition_noun_shape(entry)};
        for (std::size_t i : defining_words(entry)) {
            const Word& w = entry.words[i];
            Slot slot;
            for (const auto& f : word_forms(w.text, w.pos, morphology)) {
                for (const auto& piece : split_units(to_lower(f))) slot.forms.push_back(piece);
            }
            std::sort(slot.forms.begin(), slot.forms.end());
            slot.forms.erase(std::unique(slot.forms.begin(), slot.forms.end()), slot.forms.end());
            if (auto cls = word_class_for_tag(w.pos)) {
                slot.inflects = w.text.find('-') == std::string::npos;
                slot.cls = *cls;
                slot.lemma = morphology.analyze(to_lower(w.text), *cls);
            }
            rule.slots.push_back(std::move(slot));
        }
        if (!rule.slots.empty()) rules_.push_back(std::move(rule));
    }
}

std::vector<Candidate> CandidateExtractor::extract(const DepSentence& sentence) const {
    std::vector<Candidate> out;
    auto units = make_units(sentence);
    std::vector<std::string> lower;
    lower.reserve(units.size());
    for (const auto& u : units) lower.push_back(to_lower(u.text));
    std::vector<std::size_t> pieces_in_token(sentence.tokens.size() + 1, 0);
    for (const auto& u : units) ++pieces_in_token[static_cast<std::size_t>(u.token)];

    auto admits = [&](const Slot& slot, std::size_t ui) {
        if (std::binary_search(slot.forms.begin(), slot.forms.end(), lower[ui])) return true;
        if (!slot.inflects || pieces_in_token[static_cast<std::size_t>(units[ui].token)] != 1) {
            return false;
        }
        const Token& t = sentence.token(units[ui].token);
        std::string lemma = to_lower(t.lemma.empty() || t.lemma == "_" ? t.form : t.lemma);
        return lemma == slot.lemma;
    };

    for (const auto& rule : rules_) {
        const std::size_t n = rule.slots.size();
        std::vector<std::vector<std::size_t>> options(n);
        bool possible = true;
        for (std::size_t s = 0; s < n && possible; ++s) {
            for (std::size_t ui = 0; ui < units.size(); ++ui) {
                if (admits(rule.slots[s], ui)) options[s].push_back(ui);
            }
            possible = !options[s].empty();
        }
        if (!possible) continue;

        std::vector<std::size_t> chosen(n);
        std::vector<bool> used(units.size(), false);
        auto gaps_ok = [&](std::vector<int> toks) {
            std::sort(toks.begin(), toks.end());
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] - toks[i - 1] - 1 > options_.max_gap) return false;
            }
            return true;
        };
        std::function<bool(std::size_t)> search = [&](std::size_t s) -> bool {
            if (s == n) {
                if (!rule.gap_limited) return true;
                std::vector<int> toks;
                for (auto ui : chosen) toks.push_back(units[ui].token);
                return gaps_ok(toks);
            }
            for (std::size_t ui : options[s]) {
                if (used[ui]) continue;
                if (rule.ordered && s > 0 && ui <= chosen[s - 1]) continue;
                if (rule.ordered && rule.gap_limited && s > 0 &&
                    units[ui].token - units[chosen[s - 1]].token - 1 > options_.max_gap) {
                    continue;
                }
                used[ui] = true;
                chosen[s] = ui;
                if (search(s + 1)) return true;
                used[ui] = false;
            }
            return false;
        };
        if (!search(0)) continue;
        Candidate c;
        c.entry_id = rule.entry->id;
        c.document_id = sentence.document_id;
        c.sentence_id = sentence.sentence_id;
        for (auto ui : chosen) c.positions.push_back(units[ui].token);
        std::sort(c.positions.begin(), c.positions.end());
        c.positions.erase(std::unique(c.positions.begin(), c.positions.end()), c.positions.end());
        c.order_restricted = rule.ordered;
        c.gap_restricted = rule.gap_limited;
        out.push_back(std::move(c));
    }
    return out;
}

namespace {
bool candidate_less(const Candidate& a, const Candidate& b) {
    if (int c = natural_compare(a.document_id, b.document_id)) return c < 0;
    if (int c = natural_compare(a.sentence_id, b.sentence_id)) return c < 0;
    if (a.positions.front() != b.positions.front()) return a.positions.front() < b.positions.front();
    return a.entry_id < b.entry_id;
}
}  // namespace

std::vector<Candidate> CandidateExtractor::extract_corpus(const std::vector<DepSentence>& corpus,
                                                          unsigned jobs) const {
    auto out = parallel_collect(corpus.size(), jobs, [&](std::size_t i) { return extract(corpus[i]); });
    std::sort(out.begin(), out.end(), candidate_less);
    return out;
}

void render_annotation_sheet(const std::vector<Candidate>& candidates,
                             const std::vector<DepSentence>& corpus, const Lexicon& lexicon,
                             std::ostream& out) {
    std::map<std::pair<std::string, std::string>, const DepSentence*> by_key;
    for (const auto& s : corpus) by_key.emplace(std::make_pair(s.document_id, s.sentence_id), &s);
    out << "doc\tsent\tentry_id\tpie_surface\tsentence\tmarked_sentence\tpie\tsense\n";
    for (const auto& c : candidates) {
        auto it = by_key.find({c.document_id, c.sentence_id});
        if (it == by_key.end()) {
            throw InputError("candidate for entry '" + c.entry_id + "' refers to unknown sentence '" +
                             c.document_id + "/" + c.sentence_id + "'");
        }
        const PieEntry* entry = lexicon.find(c.entry_id);
        if (!entry) throw InputError("candidate refers to unknown entry '" + c.entry_id + "'");
        const DepSentence& s = *it->second;
        std::set<int> marked(c.positions.begin(), c.positions.end());
        std::string plain;
        std::string shown;
        for (const auto& t : s.tokens) {
            if (!plain.empty()) {
                plain += ' ';
                shown += ' ';
            }
            plain += t.form;
            shown += marked.count(t.id) ? "[[" + t.form + "]]" : t.form;
        }
        out << c.document_id << '\t' << c.sentence_id << '\t' << c.entry_id << '\t'
            << entry->surface << '\t' << plain << '\t' << shown << "\t\t\n";
    }
}

}  // namespace piex
