#include "piex/parse_match.h"

#include <algorithm>
#include <functional>
#include <set>

#include "piex/error.h"
#include "piex/parallel.h"
#include "piex/text.h"

namespace piex {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::kLiteral: return "LITERAL";
        case NodeKind::kAnyWord: return "ANY_WORD";
        case NodeKind::kPossessiveSomeone: return "POSSESSIVE_SOMEONE";
        case NodeKind::kPossessiveOne: return "POSSESSIVE_ONE";
        case NodeKind::kObject: return "OBJECT";
    }
    return "?";
}

std::string_view to_string(Provenance provenance) {
    switch (provenance) {
        case Provenance::kIsolated: return "ISOLATED";
        case Provenance::kInContext: return "IN_CONTEXT";
        case Provenance::kBackoff: return "BACKOFF";
    }
    return "?";
}

std::string_view to_string(RelaxationLevel level) {
    switch (level) {
        case RelaxationLevel::kFull: return "FULL";
        case RelaxationLevel::kNoLabels: return "NO_LABELS";
        case RelaxationLevel::kNoDirection: return "NO_DIRECTION";
    }
    return "?";
}

bool PiePattern::is_tree() const {
    const int n = static_cast<int>(nodes.size());
    if (n == 0 || root < 0 || root >= n) return false;
    if (static_cast<int>(edges.size()) != n - 1) return false;
    std::vector<int> parent(static_cast<std::size_t>(n), -1);
    for (const auto& e : edges) {
        if (e.head < 0 || e.head >= n || e.dependent < 0 || e.dependent >= n) return false;
        if (e.dependent == root || parent[static_cast<std::size_t>(e.dependent)] != -1) return false;
        parent[static_cast<std::size_t>(e.dependent)] = e.head;
    }
    for (int v = 0; v < n; ++v) {
        int cur = v;
        int steps = 0;
        while (cur != root) {
            cur = parent[static_cast<std::size_t>(cur)];
            if (cur < 0 || ++steps > n) return false;
        }
    }
    return true;
}

namespace {

std::string lower_lemma(const Token& t) {
    const std::string& l = (t.lemma.empty() || t.lemma == "_") ? t.form : t.lemma;
    return to_lower(normalize_apostrophes(l));
}

std::string lower_form(const Token& t) { return to_lower(normalize_apostrophes(t.form)); }

NodeKind node_kind_for(const PieEntry& entry, std::size_t word) {
    const Placeholder* p = entry.placeholder_at(word);
    if (!p) return NodeKind::kLiteral;
    switch (p->kind) {
        case PlaceholderKind::kAnyWord: return NodeKind::kAnyWord;
        case PlaceholderKind::kPossessiveSomeone: return NodeKind::kPossessiveSomeone;
        case PlaceholderKind::kPossessiveOne: return NodeKind::kPossessiveOne;
        case PlaceholderKind::kObjectSomeone:
        case PlaceholderKind::kObjectSomething: return NodeKind::kObject;
    }
    return NodeKind::kLiteral;
}

bool contains(std::string_view needle, std::initializer_list<std::string_view> hay) {
    return std::find(hay.begin(), hay.end(), needle) != hay.end();
}

bool is_possessive_pronoun(std::string_view lower) {
    return std::find(kPossessivePronouns.begin(), kPossessivePronouns.end(), lower) !=
           kPossessivePronouns.end();
}

bool is_punct_token(const Token& t) { return t.upos == "PUNCT" || is_punctuation(t.form); }

// "Google's" as one token, or a separate 's / ' child.
bool has_possessive_marker(const DepSentence& s, int token) {
    std::string form = lower_form(s.token(token));
    if (form.size() > 2 && form.compare(form.size() - 2, 2, "'s") == 0) return true;
    for (int c : s.children(token)) {
        std::string cf = lower_form(s.token(c));
        if (cf == "'s" || cf == "'") return true;
    }
    return false;
}

}  // namespace

PiePattern build_pattern(const PieEntry& entry, const DepSentence& parse, Provenance provenance) {
    struct Piece {
        std::size_t word;
        std::string text;
    };
    std::vector<Piece> pieces;
    for (std::size_t i = 0; i < entry.words.size(); ++i) {
        const std::string& text = entry.words[i].text;
        if (text == kEmDash) {
            pieces.push_back({i, text});
            continue;
        }
        for (auto& u : split_units(text)) pieces.push_back({i, to_lower(u)});
    }
    auto units = make_units(parse);
    auto piece_ok = [&](const Piece& p, const Unit& u) {
        if (p.text == kEmDash) return !is_punctuation(u.text);
        return to_lower(u.text) == p.text;
    };
    std::size_t start = units.size();
    for (std::size_t s = 0; s + pieces.size() <= units.size() && !pieces.empty(); ++s) {
        bool ok = true;
        for (std::size_t k = 0; k < pieces.size() && ok; ++k) ok = piece_ok(pieces[k], units[s + k]);
        if (ok) {
            start = s;
            break;
        }
    }
    if (start == units.size()) {
        throw InputError("entry '" + entry.id + "': words not found in parse '" +
                         parse.sentence_id + "'");
    }

    // token id -> word index (first word that claims it)
    std::map<int, std::size_t> word_of;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        word_of.emplace(units[start + k].token, pieces[k].word);
    }
    std::set<int> dropped;
    for (std::size_t w = 0; w < entry.words.size(); ++w) {
        if (node_kind_for(entry, w) == NodeKind::kLiteral) continue;
        std::vector<int> toks;
        for (const auto& [t, word] : word_of) {
            if (word == w) toks.push_back(t);
        }
        int keep = 0;
        for (int t : toks) {
            int h = parse.token(t).head;
            bool inside = std::find(toks.begin(), toks.end(), h) != toks.end();
            if (!inside && keep == 0) keep = t;
        }
        if (keep == 0 && !toks.empty()) keep = toks.front();
        for (int t : toks) {
            if (t != keep) dropped.insert(t);
        }
    }

    PiePattern pattern;
    pattern.entry_id = entry.id;
    pattern.provenance = provenance;
    std::map<int, int> node_of;
    for (const auto& [t, word] : word_of) {
        if (dropped.count(t)) continue;
        const Token& tok = parse.token(t);
        PatternNode node;
        node.kind = node_kind_for(entry, word);
        node.upos = tok.upos;
        if (node.kind == NodeKind::kLiteral) {
            node.lemma = lower_lemma(tok);
            node.is_article = is_article(node.lemma);
        }
        node_of[t] = static_cast<int>(pattern.nodes.size());
        pattern.nodes.push_back(std::move(node));
    }
    std::vector<int> roots;
    for (const auto& [t, n] : node_of) {
        int h = parse.token(t).head;
        while (h != 0 && dropped.count(h)) h = parse.token(h).head;
        auto it = node_of.find(h);
        if (it == node_of.end()) {
            roots.push_back(n);
        } else {
            pattern.edges.push_back({it->second, n, parse.token(t).deprel});
        }
    }
    if (roots.size() != 1) {
        throw InputError("entry '" + entry.id + "': words do not form one subtree in parse '" +
                         parse.sentence_id + "'");
    }
    pattern.root = roots.front();
    bool any_content = std::any_of(pattern.nodes.begin(), pattern.nodes.end(),
                                   [](const PatternNode& n) { return !n.is_article; });
    if (!any_content) throw InputError("entry '" + entry.id + "': pattern has only articles");
    return pattern;
}

std::string parse_method_tag(const ParseMatchOptions& options, bool in_context) {
    std::string tag = "parse";
    if (options.level == RelaxationLevel::kNoLabels) tag += "-nolabels";
    if (options.level == RelaxationLevel::kNoDirection) tag += "-nodirection";
    if (options.match_articles) tag += "-articles";
    if (in_context) tag += "-incontext";
    return tag;
}

PiePattern effective_pattern(const PiePattern& pattern, bool match_articles) {
    if (match_articles) return pattern;
    PiePattern p = pattern;
    for (;;) {
        int victim = -1;
        for (int i = 0; i < static_cast<int>(p.nodes.size()); ++i) {
            if (!p.nodes[static_cast<std::size_t>(i)].is_article) continue;
            int kids = 0;
            for (const auto& e : p.edges) kids += e.head == i;
            if (i != p.root || kids == 1) {
                victim = i;
                break;
            }
        }
        if (victim < 0 || p.nodes.size() == 1) break;
        int parent = -1;
        for (const auto& e : p.edges) {
            if (e.dependent == victim) parent = e.head;
        }
        std::vector<PatternEdge> edges;
        for (const auto& e : p.edges) {
            if (e.dependent == victim) continue;
            if (e.head == victim) {
                if (parent < 0) {
                    p.root = e.dependent;
                    continue;
                }
                edges.push_back({parent, e.dependent, e.deprel});
            } else {
                edges.push_back(e);
            }
        }
        auto shift = [victim](int i) { return i > victim ? i - 1 : i; };
        for (auto& e : edges) {
            e.head = shift(e.head);
            e.dependent = shift(e.dependent);
        }
        p.root = shift(p.root);
        p.edges = std::move(edges);
        p.nodes.erase(p.nodes.begin() + victim);
    }
    return p;
}

bool admits(const PatternNode& node, const DepSentence& sentence, int token, bool match_articles) {
    const Token& t = sentence.token(token);
    std::string form = lower_form(t);
    switch (node.kind) {
        case NodeKind::kLiteral:
            return lower_lemma(t) == node.lemma;
        case NodeKind::kAnyWord:
            if (is_punct_token(t)) return false;
            return match_articles || !is_article(lower_lemma(t));
        case NodeKind::kPossessiveOne:
            if (is_possessive_pronoun(form)) return true;
            return lower_lemma(t) == "one" && has_possessive_marker(sentence, token);
        case NodeKind::kPossessiveSomeone:
            if (is_possessive_pronoun(form)) return true;
            if (t.upos != "NOUN" && t.upos != "PROPN" && t.upos != "PRON") return false;
            return has_possessive_marker(sentence, token);
        case NodeKind::kObject:
            if (t.upos == "NOUN" || t.upos == "PROPN") return true;
            if (t.upos != "PRON") return false;
            if (t.deprel == "poss" || t.deprel == "nmod:poss") return false;
            return form == "her" || !is_possessive_pronoun(form);
    }
    return false;
}

namespace {

bool passive_verb(const DepSentence& s, int verb) {
    const Token& v = s.token(verb);
    bool participle = v.xpos == "VBN" || v.feats.find("VerbForm=Part") != std::string::npos;
    if (!participle) return false;
    for (int c : s.children(verb)) {
        const Token& aux = s.token(c);
        if ((aux.deprel == "auxpass" || aux.deprel == "aux:pass") &&
            contains(lower_lemma(aux), {"be", "get"})) {
            return true;
        }
    }
    return false;
}

}  // namespace

bool label_matches(std::string_view pattern_label, const DepSentence& sentence, int head, int dep) {
    const std::string& actual = sentence.token(dep).deprel;
    if (actual == pattern_label) return true;
    if (pattern_label != "dobj" && pattern_label != "obj") return false;
    if (actual == "nsubjpass" || actual == "nsubj:pass") return true;
    return actual == "nsubj" && passive_verb(sentence, head);
}

std::vector<Extraction> subtree_match(const DepSentence& sentence, const PiePattern& pattern,
                                      const ParseMatchOptions& options, const std::string& method) {
    std::vector<Extraction> out;
    const int n = static_cast<int>(pattern.nodes.size());
    if (n == 0 || sentence.tokens.empty()) return out;

    std::vector<int> order{pattern.root};
    std::vector<const PatternEdge*> up(static_cast<std::size_t>(n), nullptr);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& e : pattern.edges) {
            if (e.head == order[i]) {
                up[static_cast<std::size_t>(e.dependent)] = &e;
                order.push_back(e.dependent);
            }
        }
    }
    if (static_cast<int>(order.size()) != n) return out;

    const int len = static_cast<int>(sentence.tokens.size());
    std::vector<int> assigned(static_cast<std::size_t>(n), 0);
    std::vector<bool> used(static_cast<std::size_t>(len) + 1, false);
    std::set<std::pair<int, int>> spans;

    auto edge_ok = [&](const PatternEdge& e, int head_tok, int tok) {
        const Token& t = sentence.token(tok);
        switch (options.level) {
            case RelaxationLevel::kFull:
                return t.head == head_tok && label_matches(e.deprel, sentence, head_tok, tok);
            case RelaxationLevel::kNoLabels:
                return t.head == head_tok;
            case RelaxationLevel::kNoDirection:
                return t.head == head_tok || sentence.token(head_tok).head == tok;
        }
        return false;
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t k) {
        if (k == order.size()) {
            auto [lo, hi] = std::minmax_element(assigned.begin(), assigned.end());
            spans.insert({*lo, *hi});
            return;
        }
        int v = order[k];
        const PatternNode& node = pattern.nodes[static_cast<std::size_t>(v)];
        const PatternEdge* e = up[static_cast<std::size_t>(v)];
        for (int t = 1; t <= len; ++t) {
            if (used[static_cast<std::size_t>(t)]) continue;
            if (!admits(node, sentence, t, options.match_articles)) continue;
            if (e && !edge_ok(*e, assigned[static_cast<std::size_t>(e->head)], t)) continue;
            used[static_cast<std::size_t>(t)] = true;
            assigned[static_cast<std::size_t>(v)] = t;
            dfs(k + 1);
            used[static_cast<std::size_t>(t)] = false;
        }
    };
    dfs(0);

    for (const auto& [first, last] : spans) {
        out.push_back({pattern.entry_id, sentence.document_id, sentence.sentence_id, first, last,
                       method});
    }
    return out;
}

std::vector<Extraction> subtree_match(const DepSentence& sentence, const PiePattern& pattern,
                                      RelaxationLevel level) {
    ParseMatchOptions options;
    options.level = level;
    return subtree_match(sentence, effective_pattern(pattern, false), options,
                         parse_method_tag(options, false));
}

std::map<std::string, PiePattern> patterns_from_parses(const Lexicon& lexicon,
                                                       const std::vector<DepSentence>& parses,
                                                       std::vector<std::string>* missing) {
    std::map<std::string, const DepSentence*> by_id;
    for (const auto& p : parses) {
        std::string id = p.sentence_id;
        for (const auto& c : p.comments) {
            if (c.rfind("pie_id", 0) == 0) {
                auto eq = c.find('=');
                if (eq != std::string::npos) id = trim(std::string_view(c).substr(eq + 1));
            }
        }
        by_id.emplace(id, &p);
    }
    std::map<std::string, PiePattern> out;
    for (const auto& entry : lexicon.entries()) {
        auto it = by_id.find(entry.id);
        if (it == by_id.end()) {
            if (missing) missing->push_back(entry.id);
            continue;
        }
        out.emplace(entry.id, build_pattern(entry, *it->second, Provenance::kIsolated));
    }
    return out;
}

ParseMatcher::ParseMatcher(std::vector<PiePattern> patterns, ParseMatchOptions options,
                           bool in_context)
    : options_(options), method_(parse_method_tag(options, in_context)) {
    patterns_.reserve(patterns.size());
    for (const auto& p : patterns) patterns_.push_back(effective_pattern(p, options_.match_articles));
}

std::vector<Extraction> ParseMatcher::match(const DepSentence& sentence) const {
    std::vector<Extraction> out;
    for (const auto& p : patterns_) {
        auto hits = subtree_match(sentence, p, options_, method_);
        out.insert(out.end(), hits.begin(), hits.end());
    }
    normalize_extractions(out);
    return out;
}

std::vector<Extraction> ParseMatcher::match_corpus(const std::vector<DepSentence>& corpus,
                                                   unsigned jobs) const {
    auto out = parallel_collect(corpus.size(), jobs, [&](std::size_t i) { return match(corpus[i]); });
    normalize_extractions(out);
    return out;
}

}  // namespace piex
