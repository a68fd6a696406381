#include "piex/evaluation.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include <json.hpp>

#include "piex/error.h"
#include "piex/text.h"

namespace piex {

namespace {

using Key = std::tuple<std::string, std::string, std::string>;  // doc, sent, entry

double percent(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::vector<GoldRecord> read_gold(std::istream& in, const std::string& label) {
    std::vector<GoldRecord> out;
    std::map<Key, std::size_t> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        if (line.rfind("doc\tsent\t", 0) == 0) continue;
        auto f = split(line, '\t');
        if (f.size() == 4) f.emplace_back();
        if (f.size() != 5) {
            throw FormatError(label, line_no, "expected doc, sent, entry_id, pie, sense");
        }
        GoldRecord r;
        r.document_id = trim(f[0]);
        r.sentence_id = trim(f[1]);
        r.entry_id = trim(f[2]);
        std::string pie = to_lower(trim(f[3]));
        if (pie == "y") r.is_pie = true;
        else if (pie != "n") throw FormatError(label, line_no, "pie must be y or n, got '" + f[3] + "'");
        std::string sense = to_lower(trim(f[4]));
        if (r.is_pie) {
            if (sense == "i") r.sense = Sense::kIdiomatic;
            else if (sense == "l") r.sense = Sense::kLiteral;
            else if (sense == "o") r.sense = Sense::kOther;
            else throw FormatError(label, line_no, "sense must be i, l or o for a PIE");
        } else if (!sense.empty() && sense != "_") {
            throw FormatError(label, line_no, "sense given for a non-PIE record");
        }
        Key key{r.document_id, r.sentence_id, r.entry_id};
        auto it = seen.find(key);
        if (it != seen.end()) {
            if (out[it->second].is_pie != r.is_pie) {
                throw FormatError(label, line_no, "conflicting pie labels for " + r.entry_id +
                                                      " in " + r.document_id + "/" + r.sentence_id);
            }
            continue;
        }
        seen.emplace(std::move(key), out.size());
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<GoldRecord> load_gold(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_gold(in, path.string());
}

Scores make_scores(std::size_t tp, std::size_t fp, std::size_t fn) {
    Scores s;
    s.true_positives = tp;
    s.false_positives = fp;
    s.false_negatives = fn;
    s.precision = percent(tp, tp + fp);
    s.recall = percent(tp, tp + fn);
    s.f1 = s.precision + s.recall == 0 ? 0.0 : 2 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

EvalReport score(const std::vector<Extraction>& extractions, const std::vector<GoldRecord>& gold) {
    std::set<Key> found;
    for (const auto& e : extractions) found.insert({e.document_id, e.sentence_id, e.entry_id});
    std::set<Key> positive;
    for (const auto& g : gold) {
        if (g.is_pie) positive.insert({g.document_id, g.sentence_id, g.entry_id});
    }

    struct Counts {
        std::size_t tp = 0, fp = 0, fn = 0, gold = 0;
    };
    std::map<std::string, Counts> types;
    Counts all;
    for (const auto& k : found) {
        Counts& c = types[std::get<2>(k)];
        if (positive.count(k)) {
            ++c.tp;
            ++all.tp;
        } else {
            ++c.fp;
            ++all.fp;
        }
    }
    for (const auto& k : positive) {
        Counts& c = types[std::get<2>(k)];
        ++c.gold;
        if (!found.count(k)) {
            ++c.fn;
            ++all.fn;
        }
    }

    EvalReport report;
    report.overall = make_scores(all.tp, all.fp, all.fn);
    for (const auto& [id, c] : types) {
        report.per_type.push_back({id, c.gold, make_scores(c.tp, c.fp, c.fn)});
    }
    std::stable_sort(report.per_type.begin(), report.per_type.end(),
                     [](const TypeRow& a, const TypeRow& b) { return a.gold_count > b.gold_count; });
    return report;
}

std::vector<TypeRow> per_type_report(const std::vector<Extraction>& extractions,
                                     const std::vector<GoldRecord>& gold, std::size_t top_n) {
    auto rows = score(extractions, gold).per_type;
    if (top_n && rows.size() > top_n) rows.resize(top_n);
    return rows;
}

std::vector<Extraction> combine_union(const std::vector<std::vector<Extraction>>& sets) {
    struct Merged {
        Extraction row;
        std::vector<std::string> methods;
    };
    std::map<Key, Merged> merged;
    for (const auto& set : sets) {
        for (const auto& e : set) {
            Key k{e.document_id, e.sentence_id, e.entry_id};
            auto it = merged.find(k);
            if (it == merged.end()) {
                merged.emplace(k, Merged{e, {}});
                it = merged.find(k);
            } else if (std::tie(e.first, e.last) < std::tie(it->second.row.first, it->second.row.last)) {
                it->second.row.first = e.first;
                it->second.row.last = e.last;
            }
            for (const auto& m : split(e.method, '+')) {
                auto& ms = it->second.methods;
                if (std::find(ms.begin(), ms.end(), m) == ms.end()) ms.push_back(m);
            }
        }
    }
    std::vector<Extraction> out;
    out.reserve(merged.size());
    for (auto& [k, m] : merged) {
        std::sort(m.methods.begin(), m.methods.end());
        m.row.method = join(m.methods, "+");
        out.push_back(std::move(m.row));
    }
    normalize_extractions(out);
    return out;
}

double fleiss_kappa(const std::vector<std::vector<std::string>>& labels) {
    if (labels.empty()) throw InputError("kappa needs at least one item");
    const std::size_t raters = labels.front().size();
    if (raters < 2) throw InputError("kappa needs at least two annotators");
    std::map<std::string, std::size_t> totals;
    double p_bar = 0;
    for (const auto& item : labels) {
        if (item.size() != raters) throw InputError("every item needs the same number of labels");
        std::map<std::string, std::size_t> counts;
        for (const auto& l : item) ++counts[l];
        double agree = 0;
        for (const auto& [cat, c] : counts) {
            agree += static_cast<double>(c) * static_cast<double>(c - 1);
            totals[cat] += c;
        }
        p_bar += agree / (static_cast<double>(raters) * static_cast<double>(raters - 1));
    }
    const double items = static_cast<double>(labels.size());
    p_bar /= items;
    double p_e = 0;
    for (const auto& [cat, c] : totals) {
        double p = static_cast<double>(c) / (items * static_cast<double>(raters));
        p_e += p * p;
    }
    if (p_bar >= 1.0 || p_e >= 1.0) return 1.0;
    return (p_bar - p_e) / (1.0 - p_e);
}

std::vector<std::vector<std::string>> read_kappa_table(std::istream& in, const std::string& label) {
    std::vector<std::vector<std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        auto f = split(line, '\t');
        if (f.size() < 3) throw FormatError(label, line_no, "expected item and at least two labels");
        std::vector<std::string> row;
        for (std::size_t i = 1; i < f.size(); ++i) row.push_back(trim(f[i]));
        if (!out.empty() && row.size() != out.front().size()) {
            throw FormatError(label, line_no, "label count differs from the first item");
        }
        out.push_back(std::move(row));
    }
    return out;
}

void write_report_tsv(const EvalReport& report, std::ostream& out) {
    out << "type\tgold\ttp\tfp\tfn\tprecision\trecall\tf1\n";
    auto row = [&](const std::string& name, std::size_t gold, const Scores& s) {
        out << name << '\t' << gold << '\t' << s.true_positives << '\t' << s.false_positives << '\t'
            << s.false_negatives << '\t' << format_percent(s.precision) << '\t'
            << format_percent(s.recall) << '\t' << format_percent(s.f1) << '\n';
    };
    const Scores& o = report.overall;
    row("ALL", o.true_positives + o.false_negatives, o);
    for (const auto& t : report.per_type) row(t.entry_id, t.gold_count, t.scores);
}

void write_report_table(const EvalReport& report, std::ostream& out) {
    std::size_t width = 4;
    for (const auto& t : report.per_type) width = std::max(width, t.entry_id.size());
    auto pad = [](std::string s, std::size_t w, bool right) {
        if (s.size() >= w) return s;
        return right ? std::string(w - s.size(), ' ') + s : s + std::string(w - s.size(), ' ');
    };
    auto row = [&](const std::string& name, std::size_t gold, const Scores& s) {
        out << pad(name, width, false) << pad(std::to_string(gold), 7, true)
            << pad(format_percent(s.precision), 11, true) << pad(format_percent(s.recall), 9, true)
            << pad(format_percent(s.f1), 9, true) << '\n';
    };
    out << pad("type", width, false) << pad("gold", 7, true) << pad("precision", 11, true)
        << pad("recall", 9, true) << pad("f1", 9, true) << '\n';
    const Scores& o = report.overall;
    row("ALL", o.true_positives + o.false_negatives, o);
    for (const auto& t : report.per_type) row(t.entry_id, t.gold_count, t.scores);
}

namespace {
nlohmann::ordered_json scores_json(const Scores& s) {
    nlohmann::ordered_json j;
    j["true_positives"] = s.true_positives;
    j["false_positives"] = s.false_positives;
    j["false_negatives"] = s.false_negatives;
    // rounded through the same formatter as the tables so JSON stays byte stable
    j["precision"] = std::stod(format_percent(s.precision));
    j["recall"] = std::stod(format_percent(s.recall));
    j["f1"] = std::stod(format_percent(s.f1));
    return j;
}
}  // namespace

void write_report_json(const EvalReport& report, std::ostream& out) {
    nlohmann::ordered_json j = scores_json(report.overall);
    nlohmann::ordered_json types = nlohmann::ordered_json::array();
    for (const auto& t : report.per_type) {
        nlohmann::ordered_json row;
        row["entry_id"] = t.entry_id;
        row["gold"] = t.gold_count;
        auto scores = scores_json(t.scores);
        for (auto& [k, v] : scores.items()) row[k] = v;
        types.push_back(std::move(row));
    }
    j["per_type"] = std::move(types);
    out << j.dump(2) << '\n';
}

}  // namespace piex
