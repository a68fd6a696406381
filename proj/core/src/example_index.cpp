#include "piex/example_index.h"

#include <algorithm>
#include <fstream>

#include "piex/conllu.h"
#include "piex/text.h"

namespace piex {

namespace {

const std::vector<std::string_view>& peelable_leading() {
    static const std::vector<std::string_view> v = {"\"", "'", "`", "(", "[", "{",
                                                    "\xE2\x80\x9C", "\xE2\x80\x98"};
    return v;
}

const std::vector<std::string_view>& peelable_trailing() {
    static const std::vector<std::string_view> v = {
        "\"", "'", ")", "]", "}", ".", ",", ";", ":", "!", "?", "\xE2\x80\x9D", "\xE2\x80\x99"};
    return v;
}

bool starts(std::string_view s, std::string_view p) { return s.size() > p.size() && s.substr(0, p.size()) == p; }
bool ends(std::string_view s, std::string_view p) {
    return s.size() > p.size() && s.substr(s.size() - p.size()) == p;
}

enum class Family { kNone, kDouble, kSingle };
enum class Role { kToggle, kOpen, kClose };

Family quote_family(std::string_view t, Role& role) {
    role = Role::kToggle;
    if (t == "\"" ) return Family::kDouble;
    if (t == "``" || t == "\xE2\x80\x9C") { role = Role::kOpen; return Family::kDouble; }
    if (t == "''" || t == "\xE2\x80\x9D") { role = Role::kClose; return Family::kDouble; }
    if (t == "'") return Family::kSingle;
    if (t == "`" || t == "\xE2\x80\x98") { role = Role::kOpen; return Family::kSingle; }
    if (t == "\xE2\x80\x99") { role = Role::kClose; return Family::kSingle; }
    return Family::kNone;
}

std::vector<std::string> entry_tokens(const PieEntry& entry) {
    std::vector<std::string> out;
    for (const auto& t : plain_tokenize(entry.surface)) out.push_back(to_lower(t));
    return out;
}

}  // namespace

std::vector<std::string> plain_tokenize(std::string_view text) {
    std::vector<std::string> out;
    for (std::string piece : split_whitespace(text)) {
        std::vector<std::string> lead;
        std::vector<std::string> trail;
        bool changed = true;
        while (changed && !piece.empty()) {
            changed = false;
            for (auto q : peelable_leading()) {
                if (starts(piece, q) && piece != "'s") {
                    lead.emplace_back(q);
                    piece.erase(0, q.size());
                    changed = true;
                    break;
                }
            }
            for (auto q : peelable_trailing()) {
                if (ends(piece, q)) {
                    trail.emplace_back(q);
                    piece.erase(piece.size() - q.size());
                    changed = true;
                    break;
                }
            }
        }
        out.insert(out.end(), lead.begin(), lead.end());
        if (!piece.empty()) out.push_back(piece);
        out.insert(out.end(), trail.rbegin(), trail.rend());
    }
    return out;
}

std::vector<bool> quoted_positions(const std::vector<std::string>& tokens) {
    std::vector<bool> inside(tokens.size(), false);
    for (Family fam : {Family::kDouble, Family::kSingle}) {
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            Role role;
            if (quote_family(tokens[i], role) != fam) continue;
            bool closes = role == Role::kClose || (role == Role::kToggle && !open.empty());
            if (closes && !open.empty()) {
                for (std::size_t k = open.back() + 1; k < i; ++k) inside[k] = true;
                open.pop_back();
            } else if (role != Role::kClose) {
                open.push_back(i);
            }
        }
    }
    return inside;
}

ExampleIndex ExampleIndex::from_sentences(std::vector<std::string> sentences) {
    ExampleIndex idx;
    idx.sentences_ = std::move(sentences);
    for (std::size_t i = 0; i < idx.sentences_.size(); ++i) {
        std::vector<std::string> toks;
        for (const auto& t : plain_tokenize(idx.sentences_[i])) toks.push_back(to_lower(t));
        int id = static_cast<int>(i + 1);
        std::vector<std::string> uniq = toks;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (const auto& t : uniq) idx.postings_[t].push_back(id);
        idx.tokens_.push_back(std::move(toks));
    }
    return idx;
}

void ExampleIndex::build(const std::vector<std::string>& sentences, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ofstream s(dir / "sentences.txt");
    if (!s) throw InputError("cannot write " + (dir / "sentences.txt").string());
    for (const auto& line : sentences) {
        if (line.find('\n') != std::string::npos) throw InputError("sentence contains a newline");
        s << line << '\n';
    }
    auto idx = from_sentences(sentences);
    std::ofstream ix(dir / "index.tsv");
    if (!ix) throw InputError("cannot write " + (dir / "index.tsv").string());
    for (const auto& [tok, ids] : idx.postings_) {
        ix << tok << '\t';
        for (std::size_t i = 0; i < ids.size(); ++i) ix << (i ? "," : "") << ids[i];
        ix << '\n';
    }
}

ExampleIndex ExampleIndex::open(const std::filesystem::path& dir) {
    std::ifstream s(dir / "sentences.txt");
    if (!s) throw InputError("example index " + dir.string() + " has no sentences.txt");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(s, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    auto idx = from_sentences(std::move(lines));
    std::ifstream ix(dir / "index.tsv");
    if (!ix) throw InputError("example index " + dir.string() + " has no index.tsv");
    std::map<std::string, std::vector<int>> postings;
    std::size_t line_no = 0;
    while (std::getline(ix, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto f = split(line, '\t');
        if (f.size() != 2) throw FormatError((dir / "index.tsv").string(), line_no, "expected token<TAB>ids");
        auto& ids = postings[f[0]];
        for (const auto& v : split(f[1], ',')) {
            try {
                ids.push_back(std::stoi(v));
            } catch (const std::exception&) {
                throw FormatError((dir / "index.tsv").string(), line_no, "bad sentence id '" + v + "'");
            }
        }
    }
    if (postings != idx.postings_) {
        throw InputError("example index " + dir.string() + " is stale: index.tsv does not match sentences.txt");
    }
    return idx;
}

std::vector<int> ExampleIndex::find(const PieEntry& entry) const {
    std::vector<std::string> pie = entry_tokens(entry);
    std::vector<int> out;
    if (pie.empty()) return out;
    std::vector<int> candidates;
    bool first = true;
    for (const auto& t : pie) {
        if (t == kEmDash) continue;
        auto it = postings_.find(t);
        if (it == postings_.end()) return out;
        if (first) {
            candidates = it->second;
            first = false;
        } else {
            std::vector<int> next;
            std::set_intersection(candidates.begin(), candidates.end(), it->second.begin(),
                                  it->second.end(), std::back_inserter(next));
            candidates = std::move(next);
        }
    }
    if (first) return out;
    for (int id : candidates) {
        const auto& toks = tokens_[static_cast<std::size_t>(id - 1)];
        auto quoted = quoted_positions(toks);
        for (std::size_t s = 0; s + pie.size() <= toks.size(); ++s) {
            bool ok = true;
            bool in_quotes = false;
            for (std::size_t k = 0; k < pie.size() && ok; ++k) {
                const auto& tok = toks[s + k];
                ok = pie[k] == kEmDash ? !is_punctuation(tok) : tok == pie[k];
                in_quotes = in_quotes || quoted[s + k];
            }
            if (ok && !in_quotes) {
                out.push_back(id);
                break;
            }
        }
    }
    return out;
}

std::optional<int> ExampleIndex::select(const PieEntry& entry) const {
    std::optional<int> best;
    for (int id : find(entry)) {
        if (!best || tokens_[static_cast<std::size_t>(id - 1)].size() <
                         tokens_[static_cast<std::size_t>(*best - 1)].size()) {
            best = id;
        }
    }
    return best;
}

ConlluParseSource::ConlluParseSource(const std::filesystem::path& path) : path_(path) {
    std::ifstream in(path);
    if (!in) return;
    for (auto& s : read_conllu(in, path.string())) {
        std::string id = s.sentence_id;
        parses_.emplace(std::move(id), std::move(s));
    }
    available_ = true;
}

DepSentence ConlluParseSource::parse(int sentence_id, const std::string&) const {
    if (!available_) {
        throw ParseSourceUnavailable("example parses not available: cannot read " + path_.string());
    }
    auto it = parses_.find(std::to_string(sentence_id));
    if (it == parses_.end()) {
        throw ParseSourceUnavailable("example parses in " + path_.string() +
                                     " have no parse for sentence " + std::to_string(sentence_id));
    }
    return it->second;
}

PiePattern acquire_in_context(const PieEntry& entry, const ExampleIndex& index,
                              const ParseSource& source, const PiePattern* isolated) {
    auto backoff = [&] {
        if (!isolated) {
            throw InputError("entry '" + entry.id + "': no usable example sentence and no isolated parse");
        }
        PiePattern p = *isolated;
        p.provenance = Provenance::kBackoff;
        return p;
    };
    auto id = index.select(entry);
    if (!id) return backoff();
    DepSentence parse = source.parse(*id, index.sentence(*id));
    try {
        return build_pattern(entry, parse, Provenance::kInContext);
    } catch (const InputError&) {
        return backoff();
    }
}

}  // namespace piex
