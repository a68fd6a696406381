#include "piex/overlap.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>

#include "piex/error.h"
#include "piex/parallel.h"
#include "piex/text.h"

namespace piex {

std::size_t weighted_levenshtein(std::string_view a_bytes, std::string_view b_bytes) {
    std::u32string a = decode_utf8(a_bytes);
    std::u32string b = decode_utf8(b_bytes);
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 2);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double levenshtein_ratio(std::string_view a, std::string_view b) {
    std::size_t total = decode_utf8(a).size() + decode_utf8(b).size();
    if (total == 0) return 1.0;
    double d = static_cast<double>(weighted_levenshtein(a, b));
    return (static_cast<double>(total) - d) / static_cast<double>(total);
}

std::string heuristics_string(unsigned mask) {
    std::vector<std::string> parts;
    if (mask & static_cast<unsigned>(Heuristic::kSubstringGapped)) parts.emplace_back("h1");
    if (mask & static_cast<unsigned>(Heuristic::kWordSubset)) parts.emplace_back("h2");
    if (mask & static_cast<unsigned>(Heuristic::kLevRatio)) parts.emplace_back("h3");
    return join(parts, ",");
}

ExactOverlap exact_overlap(const Lexicon& a, const Lexicon& b) {
    ExactOverlap r;
    for (const auto& e : a.entries()) {
        if (b.find_by_key(e.key())) ++r.count;
    }
    if (a.size()) r.percent_of_a = 100.0 * static_cast<double>(r.count) / static_cast<double>(a.size());
    if (b.size()) r.percent_of_b = 100.0 * static_cast<double>(r.count) / static_cast<double>(b.size());
    return r;
}

bool gapped_subsequence(const std::vector<std::string>& shorter, const std::vector<std::string>& longer) {
    std::size_t k = 0;
    for (const auto& w : longer) {
        if (k < shorter.size() && shorter[k] == w) ++k;
    }
    return k == shorter.size();
}

namespace {

std::vector<std::string> words_of(std::string_view surface) {
    return tokenize_dictionary_form(to_lower(surface));
}

std::vector<std::string> content_multiset(const std::vector<std::string>& words) {
    std::vector<std::string> out;
    for (const auto& w : words) {
        if (!is_article(w)) out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool multiset_includes(const std::vector<std::string>& big, const std::vector<std::string>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

bool word_subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    auto ma = content_multiset(a);
    auto mb = content_multiset(b);
    if (ma.empty() || mb.empty()) return false;
    return multiset_includes(mb, ma) || multiset_includes(ma, mb);
}

unsigned pair_heuristics(std::string_view a_surface, std::string_view b_surface) {
    std::string a = to_lower(normalize_space(a_surface));
    std::string b = to_lower(normalize_space(b_surface));
    auto wa = words_of(a);
    auto wb = words_of(b);
    unsigned mask = 0;
    bool h1 = wa.size() <= wb.size() ? gapped_subsequence(wa, wb) : gapped_subsequence(wb, wa);
    if (h1) mask |= static_cast<unsigned>(Heuristic::kSubstringGapped);
    if (word_subset(wa, wb)) mask |= static_cast<unsigned>(Heuristic::kWordSubset);
    if (levenshtein_ratio(a, b) > 0.8) mask |= static_cast<unsigned>(Heuristic::kLevRatio);
    return mask;
}

std::vector<CandidatePair> candidate_pairs(const Lexicon& a, const Lexicon& b) {
    struct Prepared {
        const PieEntry* entry;
        std::string key;
        std::size_t length;
    };
    auto prepare = [](const Lexicon& lex) {
        std::vector<Prepared> out;
        for (const auto& e : lex.entries()) {
            std::string key = e.key();
            std::size_t len = decode_utf8(key).size();
            out.push_back({&e, std::move(key), len});
        }
        return out;
    };
    auto pa = prepare(a);
    auto pb = prepare(b);

    // content word -> entries of b, for the word-based heuristics
    std::unordered_map<std::string, std::vector<std::size_t>> by_word;
    for (std::size_t j = 0; j < pb.size(); ++j) {
        std::set<std::string> seen;
        for (const auto& w : words_of(pb[j].key)) {
            if (!is_article(w) && seen.insert(w).second) by_word[w].push_back(j);
        }
    }

    std::vector<CandidatePair> out;
    for (const auto& x : pa) {
        std::set<std::size_t> word_hits;
        for (const auto& w : words_of(x.key)) {
            if (is_article(w)) continue;
            auto it = by_word.find(w);
            if (it != by_word.end()) word_hits.insert(it->second.begin(), it->second.end());
        }
        for (std::size_t j = 0; j < pb.size(); ++j) {
            const auto& y = pb[j];
            if (x.key == y.key) continue;
            double total = static_cast<double>(x.length + y.length);
            double diff = x.length > y.length ? static_cast<double>(x.length - y.length)
                                              : static_cast<double>(y.length - x.length);
            bool lev_possible = total > 0 && (total - diff) / total > 0.8;
            if (!lev_possible && !word_hits.count(j)) continue;
            unsigned mask = pair_heuristics(x.key, y.key);
            if (mask) {
                out.push_back({x.entry->id, y.entry->id, x.entry->surface, y.entry->surface, mask});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const CandidatePair& l, const CandidatePair& r) {
        return std::tie(l.a_id, l.b_id) < std::tie(r.a_id, r.b_id);
    });
    return out;
}

ReviewDecisions read_review(std::istream& in, const std::string& label) {
    ReviewDecisions out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        auto f = split(line, '\t');
        if (f.size() != 3) throw FormatError(label, line_no, "expected a_id<TAB>b_id<TAB>accept|reject");
        std::string verdict = to_lower(trim(f[2]));
        Decision d;
        if (verdict == "accept") d = Decision::kAccept;
        else if (verdict == "reject") d = Decision::kReject;
        else throw FormatError(label, line_no, "decision must be accept or reject, got '" + f[2] + "'");
        out[{trim(f[0]), trim(f[1])}] = d;
    }
    return out;
}

ReviewDecisions load_review(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_review(in, path.string());
}

OverlapMatrix overlap_matrix(const std::vector<Lexicon>& resources, const ReviewDecisions* decisions,
                             unsigned jobs) {
    const std::size_t n = resources.size();
    OverlapMatrix m;
    m.with_decisions = decisions != nullptr;
    for (const auto& r : resources) {
        m.names.push_back(r.name());
        m.sizes.push_back(r.size());
    }
    m.cells.assign(n, std::vector<OverlapCell>(n));

    std::vector<std::pair<std::size_t, std::size_t>> jobs_list;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) jobs_list.emplace_back(i, j);
    }
    struct PairResult {
        std::size_t i, j;
        std::vector<CandidatePair> pairs;
    };
    auto results = parallel_collect(jobs_list.size(), jobs, [&](std::size_t k) {
        auto [i, j] = jobs_list[k];
        return std::vector<PairResult>{{i, j, candidate_pairs(resources[i], resources[j])}};
    });

    std::set<ReviewKey> referenced;
    for (const auto& r : results) {
        const Lexicon& a = resources[r.i];
        const Lexicon& b = resources[r.j];
        std::set<std::string> cover_a;
        std::set<std::string> cover_b;
        std::size_t exact = 0;
        for (const auto& e : a.entries()) {
            if (const PieEntry* other = b.find_by_key(e.key())) {
                ++exact;
                cover_a.insert(e.id);
                cover_b.insert(other->id);
            }
        }
        std::size_t accepted = 0;
        for (const auto& p : r.pairs) {
            if (!decisions) continue;
            auto it = decisions->find({p.a_id, p.b_id});
            if (it == decisions->end()) continue;
            referenced.insert(it->first);
            if (it->second == Decision::kAccept) {
                ++accepted;
                cover_a.insert(p.a_id);
                cover_b.insert(p.b_id);
            }
        }
        auto fill = [&](std::size_t x, std::size_t y, const std::set<std::string>& cover) {
            OverlapCell& c = m.cells[x][y];
            c.exact = exact;
            c.accepted = accepted;
            c.candidates = r.pairs.size();
            const std::size_t size = resources[x].size();
            std::size_t covered = decisions ? cover.size() : exact;
            c.percent = size ? 100.0 * static_cast<double>(covered) / static_cast<double>(size) : 0.0;
        };
        fill(r.i, r.j, cover_a);
        fill(r.j, r.i, cover_b);
    }
    for (std::size_t i = 0; i < n; ++i) {
        OverlapCell& c = m.cells[i][i];
        c.exact = resources[i].size();
        c.percent = 100.0;
    }
    if (decisions) {
        for (const auto& [key, d] : *decisions) {
            if (!referenced.count(key)) {
                throw InputError("review decision for pair (" + key.a_id + ", " + key.b_id +
                                 ") does not match any candidate pair");
            }
        }
    }
    return m;
}

void write_matrix_tsv(const OverlapMatrix& m, std::ostream& out) {
    out << "resource\tother\tsize\texact\t";
    out << (m.with_decisions ? "accepted\tcandidates\tpercent\n" : "candidates\texact_percent\n");
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        for (std::size_t j = 0; j < m.names.size(); ++j) {
            const auto& c = m.cells[i][j];
            out << m.names[i] << '\t' << m.names[j] << '\t' << m.sizes[i] << '\t' << c.exact << '\t';
            if (m.with_decisions) out << c.accepted << '\t';
            out << c.candidates << '\t' << format_percent(c.percent) << '\n';
        }
    }
}

void write_matrix_table(const OverlapMatrix& m, std::ostream& out) {
    std::size_t width = 8;
    for (const auto& n : m.names) width = std::max(width, n.size() + 2);
    auto pad = [&](const std::string& s) {
        std::string r = s;
        if (r.size() < width) r.append(width - r.size(), ' ');
        return r;
    };
    out << pad("");
    for (const auto& n : m.names) out << pad(n);
    out << '\n';
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        out << pad(m.names[i]);
        for (std::size_t j = 0; j < m.names.size(); ++j) out << pad(format_percent(m.cells[i][j].percent));
        out << '\n';
    }
    if (!m.with_decisions) {
        out << "(exact matches only; candidate pairs per resource pair:";
        for (std::size_t i = 0; i < m.names.size(); ++i) {
            for (std::size_t j = i + 1; j < m.names.size(); ++j) {
                out << ' ' << m.names[i] << '/' << m.names[j] << '=' << m.cells[i][j].candidates;
            }
        }
        out << ")\n";
    }
}

void write_candidate_pairs(const std::vector<CandidatePair>& pairs, std::ostream& out) {
    out << "a_id\tb_id\ta_surface\tb_surface\theuristics\n";
    for (const auto& p : pairs) {
        out << p.a_id << '\t' << p.b_id << '\t' << p.a_surface << '\t' << p.b_surface << '\t'
            << heuristics_string(p.heuristics) << '\n';
    }
}

}  // namespace piex
