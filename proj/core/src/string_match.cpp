#include "piex/string_match.h"

#include <algorithm>
#include <set>

#include "piex/error.h"
#include "piex/parallel.h"
#include "piex/text.h"

namespace piex {

std::string_view to_string(MatchMode mode) {
    switch (mode) {
        case MatchMode::kExact: return "exact";
        case MatchMode::kFuzzy: return "fuzzy";
        case MatchMode::kInflect: return "inflect";
    }
    return "?";
}

void validate(const MatchOptions& options) {
    if (options.max_intervening < 0 || options.max_intervening > 3) {
        throw InputError("intervening words must be between 0 and 3, got " +
                         std::to_string(options.max_intervening));
    }
}

std::string method_tag(const MatchOptions& options) {
    std::string tag(to_string(options.mode));
    if (options.case_sensitive) tag += "-cs";
    tag += "-" + std::to_string(options.max_intervening) + "word";
    return tag;
}

namespace {

std::vector<PatternUnit> units_for_tokens(const std::vector<std::string>& tokens,
                                          bool case_sensitive) {
    std::vector<PatternUnit> out;
    for (const auto& tok : tokens) {
        if (tok == kEmDash) {
            out.push_back({"", UnitKind::kAnyWord, false});
            continue;
        }
        if (tok == kAnyNominalToken) {
            out.push_back({"", UnitKind::kAnyNominal, false});
            continue;
        }
        for (auto& piece : split_units(tok)) {
            if (piece == kEmDash) {
                out.push_back({"", UnitKind::kAnyWord, false});
                continue;
            }
            std::string lower = to_lower(piece);
            bool suffixable = !is_article(lower) && !is_punctuation(piece) && !is_clitic_unit(piece);
            out.push_back({case_sensitive ? piece : lower, UnitKind::kLiteral, suffixable});
        }
    }
    return out;
}

bool fuzzy_extends(std::string_view text, std::string_view pattern) {
    if (text.size() <= pattern.size() || text.size() > pattern.size() + 3) return false;
    if (text.substr(0, pattern.size()) != pattern) return false;
    for (char c : text.substr(pattern.size())) {
        if (!is_ascii_alpha(c)) return false;
    }
    return true;
}

bool known_upos(std::string_view upos) { return !upos.empty() && upos != "_"; }

struct PreparedUnit {
    std::string text;  // folded as the options require
    std::string_view upos;
    int token;
    bool free_word;  // a word an AnyWord slot may take
};

std::vector<PreparedUnit> prepare(const std::vector<Unit>& units, bool case_sensitive) {
    std::vector<PreparedUnit> out;
    out.reserve(units.size());
    for (const auto& u : units) {
        bool free_word = !is_punctuation(u.text) && !is_clitic_unit(u.text);
        out.push_back({case_sensitive ? u.text : to_lower(u.text), u.upos, u.token, free_word});
    }
    return out;
}

bool unit_matches(const PreparedUnit& u, const PatternUnit& p, bool fuzzy) {
    switch (p.kind) {
        case UnitKind::kAnyWord:
            return u.free_word;
        case UnitKind::kAnyNominal:
            if (!u.free_word) return false;
            if (!known_upos(u.upos)) return true;
            return u.upos == "NOUN" || u.upos == "PROPN" || u.upos == "PRON";
        case UnitKind::kLiteral:
            if (u.text == p.text) return true;
            return fuzzy && p.suffixable && fuzzy_extends(u.text, p.text);
    }
    return false;
}

void extend(const std::vector<PreparedUnit>& units, const StringPattern& pattern, bool fuzzy,
            int gap, std::size_t pi, std::size_t pos, int first_token, std::set<Span>& spans) {
    if (pi == pattern.units.size()) {
        spans.insert({first_token, units[pos].token});
        return;
    }
    std::size_t limit = std::min(units.size(), pos + 2 + static_cast<std::size_t>(gap));
    for (std::size_t j = pos + 1; j < limit; ++j) {
        if (unit_matches(units[j], pattern.units[pi], fuzzy)) {
            extend(units, pattern, fuzzy, gap, pi + 1, j, first_token, spans);
        }
    }
}

std::set<Span> match_prepared(const std::vector<PreparedUnit>& units,
                              const StringPattern& pattern, const MatchOptions& options) {
    std::set<Span> spans;
    if (pattern.units.empty()) return spans;
    bool fuzzy = options.mode == MatchMode::kFuzzy;
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (unit_matches(units[i], pattern.units[0], fuzzy)) {
            extend(units, pattern, fuzzy, options.max_intervening, 1, i, units[i].token, spans);
        }
    }
    return spans;
}

}  // namespace

std::vector<StringPattern> compile_patterns(const PieEntry& entry, const MatchOptions& options,
                                            const Morphology& morphology) {
    std::vector<StringPattern> out;
    std::set<std::vector<PatternUnit>> seen;
    auto add = [&](const std::vector<std::string>& tokens) {
        auto units = units_for_tokens(tokens, options.case_sensitive);
        if (units.empty() || !seen.insert(units).second) return;
        out.push_back({entry.id, std::move(units)});
    };
    for (const auto& variant : expand_placeholders(entry)) {
        if (options.mode == MatchMode::kInflect) {
            for (const auto& surface : variant_forms(variant, morphology)) {
                add(tokenize_dictionary_form(surface));
            }
        } else {
            std::vector<std::string> tokens;
            for (const auto& w : variant.words) tokens.push_back(w.text);
            add(tokens);
        }
    }
    return out;
}

std::vector<Span> match_units(const std::vector<Unit>& units, const StringPattern& pattern,
                              const MatchOptions& options) {
    auto spans = match_prepared(prepare(units, options.case_sensitive), pattern, options);
    return {spans.begin(), spans.end()};
}

namespace {
std::vector<Extraction> run_single(const DepSentence& sentence, const PieEntry& entry,
                                   MatchOptions options, const Morphology& morphology) {
    Lexicon one("single");
    one.add(entry);
    return StringMatcher(one, options, morphology).match(sentence);
}
}  // namespace

std::vector<Extraction> exact_match(const DepSentence& sentence, const PieEntry& entry,
                                    const MatchOptions& options) {
    MatchOptions o = options;
    o.mode = MatchMode::kExact;
    return run_single(sentence, entry, o, Morphology::builtin());
}

std::vector<Extraction> fuzzy_match(const DepSentence& sentence, const PieEntry& entry,
                                    const MatchOptions& options) {
    MatchOptions o = options;
    o.mode = MatchMode::kFuzzy;
    return run_single(sentence, entry, o, Morphology::builtin());
}

std::vector<Extraction> inflect_match(const DepSentence& sentence, const PieEntry& entry,
                                      const MatchOptions& options, const Morphology& morphology) {
    MatchOptions o = options;
    o.mode = MatchMode::kInflect;
    return run_single(sentence, entry, o, morphology);
}

StringMatcher::StringMatcher(const Lexicon& lexicon, MatchOptions options,
                             const Morphology& morphology)
    : options_(options), method_(method_tag(options)) {
    validate(options_);
    for (const auto& entry : lexicon.entries()) {
        auto p = compile_patterns(entry, options_, morphology);
        patterns_.insert(patterns_.end(), std::make_move_iterator(p.begin()),
                         std::make_move_iterator(p.end()));
    }
}

std::vector<Extraction> StringMatcher::match(const DepSentence& sentence) const {
    std::vector<Extraction> out;
    auto units = prepare(make_units(sentence), options_.case_sensitive);
    if (units.empty()) return out;
    for (const auto& pattern : patterns_) {
        for (const auto& span : match_prepared(units, pattern, options_)) {
            out.push_back({pattern.entry_id, sentence.document_id, sentence.sentence_id,
                           span.first, span.last, method_});
        }
    }
    normalize_extractions(out);
    return out;
}

std::vector<Extraction> StringMatcher::match_corpus(const std::vector<DepSentence>& corpus,
                                                    unsigned jobs) const {
    auto out = parallel_collect(corpus.size(), jobs, [&](std::size_t i) { return match(corpus[i]); });
    normalize_extractions(out);
    return out;
}

}  // namespace piex
