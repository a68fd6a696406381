#include "piex/lexicon.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>

#include "piex/error.h"
#include "piex/text.h"

namespace piex {

std::string_view to_string(PlaceholderKind kind) {
    switch (kind) {
        case PlaceholderKind::kPossessiveOne: return "POSSESSIVE_ONE";
        case PlaceholderKind::kPossessiveSomeone: return "POSSESSIVE_SOMEONE";
        case PlaceholderKind::kObjectSomeone: return "OBJECT_SOMEONE";
        case PlaceholderKind::kObjectSomething: return "OBJECT_SOMETHING";
        case PlaceholderKind::kAnyWord: return "ANY_WORD";
    }
    return "?";
}

bool is_article(std::string_view lower) {
    return lower == "a" || lower == "an" || lower == "the";
}

namespace {

std::optional<PlaceholderKind> placeholder_kind(std::string_view text) {
    std::string t = to_lower(normalize_apostrophes(text));
    if (t == "one's") return PlaceholderKind::kPossessiveOne;
    if (t == "someone's" || t == "something's") return PlaceholderKind::kPossessiveSomeone;
    if (t == "someone") return PlaceholderKind::kObjectSomeone;
    if (t == "something") return PlaceholderKind::kObjectSomething;
    if (text == kEmDash) return PlaceholderKind::kAnyWord;
    return std::nullopt;
}

WordKind word_kind(std::string_view text) {
    if (text == kEmDash) return WordKind::kAnyWord;
    if (normalize_apostrophes(text) == kAnyPossessorToken) return WordKind::kAnyPossessor;
    if (text == kAnyNominalToken) return WordKind::kAnyNominal;
    return WordKind::kLiteral;
}

Word make_word(std::string text, std::string pos) {
    Word w;
    std::string lower = to_lower(text);
    w.is_determiner = is_article(lower);
    w.is_punctuation = is_punctuation(text) || pos == "PUNCT";
    w.kind = word_kind(text);
    w.text = std::move(text);
    w.pos = std::move(pos);
    return w;
}

bool is_clause_punct(char c) {
    return c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
}

std::string slug(std::string_view surface) {
    std::string out;
    for (const auto& part : split_whitespace(to_lower(surface))) {
        if (!out.empty()) out += '_';
        out += part;
    }
    return out;
}

}  // namespace

std::vector<std::string> tokenize_dictionary_form(std::string_view surface) {
    std::vector<std::string> out;
    for (const auto& piece : split_whitespace(surface)) {
        std::size_t end = piece.size();
        while (end > 0 && is_clause_punct(piece[end - 1])) --end;
        // A lone final period is detached; abbreviations such as "U.S." keep theirs.
        bool final_period = end > 1 && piece[end - 1] == '.' &&
                            piece.find('.') == end - 1;
        if (final_period) --end;
        if (end > 0) out.push_back(piece.substr(0, end));
        for (std::size_t i = end; i < piece.size(); ++i) out.emplace_back(1, piece[i]);
    }
    return out;
}

std::string surface_key(std::string_view surface) {
    return to_lower(normalize_space(surface));
}

bool PieEntry::tagged() const {
    if (words.empty()) return false;
    return std::all_of(words.begin(), words.end(),
                       [](const Word& w) { return !w.pos.empty(); });
}

std::string PieEntry::key() const { return surface_key(surface); }

std::size_t PieEntry::content_length() const {
    return static_cast<std::size_t>(std::count_if(
        words.begin(), words.end(), [](const Word& w) { return !w.is_punctuation; }));
}

std::string PieEntry::tagged_form() const {
    if (!tagged()) return {};
    std::vector<std::string> parts;
    parts.reserve(words.size());
    for (const auto& w : words) parts.push_back(w.text + "/" + w.pos);
    return join(parts, " ");
}

const Placeholder* PieEntry::placeholder_at(std::size_t position) const {
    for (const auto& p : placeholders) {
        if (p.position == position) return &p;
    }
    return nullptr;
}

PieEntry make_entry(std::string id, std::string_view surface, std::string source,
                    std::string_view tagged) {
    PieEntry entry;
    entry.id = std::move(id);
    entry.source = std::move(source);
    entry.surface = normalize_space(surface);

    std::vector<std::string> tokens = tokenize_dictionary_form(entry.surface);
    std::vector<std::string> tags(tokens.size());
    if (!trim(tagged).empty()) {
        std::vector<std::string> pairs = split_whitespace(tagged);
        if (pairs.size() != tokens.size()) {
            throw InputError("tagged form has " + std::to_string(pairs.size()) +
                             " tokens but surface '" + entry.surface + "' has " +
                             std::to_string(tokens.size()));
        }
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            auto slash = pairs[i].rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == pairs[i].size()) {
                throw InputError("tagged token '" + pairs[i] + "' is not word/POS");
            }
            std::string word = pairs[i].substr(0, slash);
            if (to_lower(word) != to_lower(tokens[i])) {
                throw InputError("tagged token '" + word + "' does not match surface token '" +
                                 tokens[i] + "'");
            }
            tags[i] = pairs[i].substr(slash + 1);
        }
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (auto kind = placeholder_kind(tokens[i])) {
            entry.placeholders.push_back({i, *kind});
        }
        entry.words.push_back(make_word(std::move(tokens[i]), std::move(tags[i])));
    }
    return entry;
}

bool Lexicon::add(PieEntry entry) {
    std::string key = entry.key();
    if (by_key_.count(key)) return false;
    if (by_id_.count(entry.id)) {
        throw InputError("duplicate entry id '" + entry.id + "' in lexicon '" + name_ + "'");
    }
    by_key_.emplace(std::move(key), entries_.size());
    by_id_.emplace(entry.id, entries_.size());
    entries_.push_back(std::move(entry));
    return true;
}

const PieEntry* Lexicon::find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &entries_[it->second];
}

const PieEntry* Lexicon::find_by_key(std::string_view key) const {
    auto it = by_key_.find(std::string(key));
    return it == by_key_.end() ? nullptr : &entries_[it->second];
}

Lexicon read_lexicon(std::istream& in, const std::string& source_name, const std::string& label) {
    Lexicon lexicon(source_name);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;

        std::vector<std::string> fields = split(line, '\t');
        std::string id;
        std::string surface;
        std::string source = source_name;
        std::string tagged;
        if (fields.size() == 1) {
            surface = trim(fields[0]);
            id = slug(surface);
        } else if (fields.size() == 3 || fields.size() == 4) {
            id = trim(fields[0]);
            surface = trim(fields[1]);
            if (!trim(fields[2]).empty()) source = trim(fields[2]);
            if (fields.size() == 4) tagged = fields[3];
        } else {
            throw FormatError(label, line_no,
                              "expected 1, 3 or 4 tab-separated fields, got " +
                                  std::to_string(fields.size()));
        }
        if (id.empty() || surface.empty()) {
            throw FormatError(label, line_no, "empty id or surface");
        }

        PieEntry entry;
        try {
            entry = make_entry(id, surface, source, tagged);
        } catch (const InputError& e) {
            throw FormatError(label, line_no, e.what());
        }
        if (entry.content_length() < 2) continue;
        if (const PieEntry* prior = lexicon.find(entry.id)) {
            if (prior->key() != entry.key()) {
                throw FormatError(label, line_no, "id '" + entry.id + "' reused for a different surface");
            }
            continue;
        }
        if (lexicon.find_by_key(entry.key())) continue;
        lexicon.add(std::move(entry));
    }
    return lexicon;
}

Lexicon load_lexicon(const std::filesystem::path& path, const std::string& source_name) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open lexicon file " + path.string());
    return read_lexicon(in, source_name, path.string());
}

void write_lexicon(const Lexicon& lexicon, std::ostream& out) {
    out << "# lexicon: " << lexicon.name() << '\n';
    for (const auto& e : lexicon.entries()) {
        out << e.id << '\t' << e.surface << '\t' << e.source;
        if (e.tagged()) out << '\t' << e.tagged_form();
        out << '\n';
    }
}

ParentheticalExceptions load_parenthetical_exceptions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open exceptions file " + path.string());
    ParentheticalExceptions exceptions;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty() || line[0] == '#') continue;
        auto fields = split(line, '\t');
        if (fields.size() != 2) {
            throw FormatError(path.string(), line_no, "expected raw<TAB>variant|variant...");
        }
        std::vector<std::string> variants;
        for (const auto& v : split(fields[1], '|')) {
            if (!trim(v).empty()) variants.push_back(normalize_space(v));
        }
        exceptions[normalize_space(fields[0])] = std::move(variants);
    }
    return exceptions;
}

// Parenthetical expansion --------------------------------------------------

namespace {

std::vector<std::vector<std::string>> parse_choice_points(std::string_view raw) {
    // Each element is a list of alternatives for one stretch of the form.
    std::vector<std::vector<std::string>> choices;
    std::string text;
    std::size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw InputError(why + " in '" + std::string(raw) + "'");
    };
    while (i < raw.size()) {
        char c = raw[i];
        if (c == ')') fail("unbalanced ')'");
        if (c != '(') {
            text += c;
            ++i;
            continue;
        }
        std::size_t close = raw.find_first_of("()", i + 1);
        if (close == std::string_view::npos || raw[close] != ')') {
            if (close != std::string_view::npos) fail("nested parentheses");
            fail("unbalanced '('");
        }
        std::string content = trim(raw.substr(i + 1, close - i - 1));
        i = close + 1;

        std::string lower = to_lower(content);
        if (lower.rfind("or ", 0) == 0) {
            std::vector<std::string> alts;
            std::string rest = content.substr(3);
            std::size_t pos = 0;
            while (true) {
                std::size_t next = to_lower(rest).find(" or ", pos);
                alts.push_back(normalize_space(rest.substr(pos, next == std::string::npos
                                                                     ? std::string::npos
                                                                     : next - pos)));
                if (next == std::string::npos) break;
                pos = next + 4;
            }
            std::vector<std::string> words = split_whitespace(text);
            if (words.empty()) fail("'(or ...)' without a preceding word");
            bool whole_group = std::all_of(alts.begin(), alts.end(), [&](const std::string& a) {
                return split_whitespace(a).size() == words.size();
            });
            // Locate the start of the replaced span inside `text`.
            std::size_t end = text.find_last_not_of(" \t");
            std::size_t start;
            if (whole_group) {
                start = text.find_first_not_of(" \t");
            } else {
                start = text.find_last_of(" \t", end);
                start = start == std::string::npos ? 0 : start + 1;
            }
            std::string prefix = text.substr(0, start);
            std::string target = text.substr(start, end - start + 1);
            std::string suffix = text.substr(end + 1);
            if (!prefix.empty()) choices.push_back({prefix});
            std::vector<std::string> options{target};
            options.insert(options.end(), alts.begin(), alts.end());
            choices.push_back(std::move(options));
            text = suffix;
        } else {
            if (!text.empty()) choices.push_back({text});
            text.clear();
            choices.push_back({content, std::string()});
        }
    }
    if (!text.empty()) choices.push_back({text});
    return choices;
}

}  // namespace

std::vector<std::string> expand_parentheticals(std::string_view raw_form) {
    auto choices = parse_choice_points(raw_form);
    std::vector<std::string> out{std::string()};
    for (const auto& options : choices) {
        std::vector<std::string> next;
        next.reserve(out.size() * options.size());
        for (const auto& prefix : out) {
            for (const auto& opt : options) next.push_back(prefix + opt);
        }
        out = std::move(next);
    }
    for (auto& s : out) s = normalize_space(s);
    return out;
}

std::vector<std::string> expand_parentheticals(std::string_view raw_form,
                                               const ParentheticalExceptions& exceptions) {
    auto it = exceptions.find(normalize_space(raw_form));
    if (it != exceptions.end()) return it->second;
    return expand_parentheticals(raw_form);
}

// Placeholder expansion ----------------------------------------------------

std::vector<PieEntry> expand_placeholders(const PieEntry& entry) {
    bool only_any_word = std::all_of(entry.placeholders.begin(), entry.placeholders.end(),
                                     [](const Placeholder& p) {
                                         return p.kind == PlaceholderKind::kAnyWord;
                                     });
    if (only_any_word) return {entry};

    std::vector<std::vector<Word>> options_per_word;
    options_per_word.reserve(entry.words.size());
    for (std::size_t i = 0; i < entry.words.size(); ++i) {
        const Word& w = entry.words[i];
        const Placeholder* slot = entry.placeholder_at(i);
        if (!slot) {
            options_per_word.push_back({w});
            continue;
        }
        std::vector<Word> opts;
        auto pronoun = [&](std::string_view text) {
            opts.push_back(make_word(std::string(text), w.pos.empty() ? "" : "PRON"));
        };
        switch (slot->kind) {
            case PlaceholderKind::kPossessiveOne:
                for (auto p : kPossessivePronouns) pronoun(p);
                break;
            case PlaceholderKind::kPossessiveSomeone:
                for (auto p : kPossessivePronouns) pronoun(p);
                opts.push_back(make_word(std::string(kAnyPossessorToken), w.pos));
                break;
            case PlaceholderKind::kObjectSomeone:
            case PlaceholderKind::kObjectSomething:
                for (auto p : kObjectivePronouns) pronoun(p);
                opts.push_back(make_word(std::string(kAnyNominalToken), w.pos));
                break;
            case PlaceholderKind::kAnyWord:
                opts.push_back(w);
                break;
        }
        options_per_word.push_back(std::move(opts));
    }

    std::vector<std::vector<Word>> combos{{}};
    for (const auto& opts : options_per_word) {
        std::vector<std::vector<Word>> next;
        next.reserve(combos.size() * opts.size());
        for (const auto& prefix : combos) {
            for (const auto& o : opts) {
                auto c = prefix;
                c.push_back(o);
                next.push_back(std::move(c));
            }
        }
        combos = std::move(next);
    }

    std::vector<PieEntry> out;
    out.reserve(combos.size());
    for (std::size_t n = 0; n < combos.size(); ++n) {
        PieEntry v;
        v.id = combos.size() == 1 ? entry.id : entry.id + "#" + std::to_string(n + 1);
        v.source = entry.source;
        std::vector<std::string> texts;
        for (const auto& w : combos[n]) texts.push_back(w.text);
        v.surface = join(texts, " ");
        v.words = std::move(combos[n]);
        for (std::size_t i = 0; i < v.words.size(); ++i) {
            if (auto kind = placeholder_kind(v.words[i].text)) v.placeholders.push_back({i, *kind});
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Intersection and expansion -----------------------------------------------

Lexicon intersect(const std::vector<Lexicon>& lexicons) {
    if (lexicons.size() < 2) throw InputError("intersect needs at least two lexicons");

    std::vector<const Lexicon*> ordered;
    for (const auto& l : lexicons) ordered.push_back(&l);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const Lexicon* a, const Lexicon* b) { return a->name() < b->name(); });

    std::vector<std::string> names;
    for (const auto* l : ordered) names.push_back(l->name());
    Lexicon result(join(names, "+"));

    for (const auto& base : ordered.front()->entries()) {
        std::string key = base.key();
        std::vector<const PieEntry*> hits;
        for (const auto* l : ordered) {
            const PieEntry* e = l->find_by_key(key);
            if (!e) break;
            hits.push_back(e);
        }
        if (hits.size() != ordered.size()) continue;

        const PieEntry* chosen = hits.front();
        for (const auto* e : hits) {
            if (e->tagged()) {
                chosen = e;
                break;
            }
        }
        std::set<std::string> sources;
        for (const auto* e : hits) {
            for (const auto& s : split(e->source, ',')) {
                if (!s.empty()) sources.insert(s);
            }
        }
        PieEntry merged = *chosen;
        merged.source = join(std::vector<std::string>(sources.begin(), sources.end()), ",");
        result.add(std::move(merged));
    }
    return result;
}

Lexicon expand_lexicon(const Lexicon& lexicon, const ExpandOptions& options) {
    Lexicon out(lexicon.name());
    for (const auto& entry : lexicon.entries()) {
        std::vector<PieEntry> stage{entry};
        if (options.parentheticals && entry.surface.find('(') != std::string::npos) {
            std::vector<std::string> forms =
                options.exceptions ? expand_parentheticals(entry.surface, *options.exceptions)
                                   : expand_parentheticals(entry.surface);
            stage.clear();
            for (std::size_t n = 0; n < forms.size(); ++n) {
                stage.push_back(make_entry(entry.id + "#" + std::to_string(n + 1), forms[n],
                                           entry.source));
            }
        }
        if (options.placeholders) {
            std::vector<PieEntry> next;
            for (const auto& e : stage) {
                auto variants = expand_placeholders(e);
                next.insert(next.end(), variants.begin(), variants.end());
            }
            stage = std::move(next);
        }
        for (auto& e : stage) {
            if (e.content_length() < 2) continue;
            if (out.find(e.id)) continue;
            out.add(std::move(e));
        }
    }
    return out;
}

}  // namespace piex
