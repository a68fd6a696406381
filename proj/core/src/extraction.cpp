#include "piex/extraction.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <tuple>

#include "piex/error.h"
#include "piex/text.h"

namespace piex {

bool extraction_less(const Extraction& a, const Extraction& b) {
    if (int c = natural_compare(a.document_id, b.document_id)) return c < 0;
    if (int c = natural_compare(a.sentence_id, b.sentence_id)) return c < 0;
    return std::tie(a.first, a.entry_id, a.last, a.method) <
           std::tie(b.first, b.entry_id, b.last, b.method);
}

void normalize_extractions(std::vector<Extraction>& rows) {
    std::sort(rows.begin(), rows.end(), extraction_less);
    auto same_hit = [](const Extraction& a, const Extraction& b) {
        return a.entry_id == b.entry_id && a.document_id == b.document_id &&
               a.sentence_id == b.sentence_id && a.first == b.first && a.last == b.last;
    };
    rows.erase(std::unique(rows.begin(), rows.end(), same_hit), rows.end());
}

void write_extractions(const std::vector<Extraction>& rows, std::ostream& out) {
    out << "doc\tsent\tentry_id\tfirst\tlast\tmethod\n";
    for (const auto& r : rows) {
        out << r.document_id << '\t' << r.sentence_id << '\t' << r.entry_id << '\t' << r.first
            << '\t' << r.last << '\t' << r.method << '\n';
    }
}

namespace {
int parse_int(const std::string& s, const std::string& label, std::size_t line) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
        throw FormatError(label, line, "not an integer: '" + s + "'");
    }
    return v;
}
}  // namespace

std::vector<Extraction> read_extractions(std::istream& in, const std::string& label) {
    std::vector<Extraction> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || line[0] == '#') continue;
        if (line.rfind("doc\tsent\t", 0) == 0) continue;
        auto f = split(line, '\t');
        if (f.size() != 6) {
            throw FormatError(label, line_no, "expected 6 tab-separated fields, got " +
                                                  std::to_string(f.size()));
        }
        Extraction e{f[2], f[0], f[1], parse_int(f[3], label, line_no),
                     parse_int(f[4], label, line_no), f[5]};
        if (e.first < 1 || e.first > e.last) throw FormatError(label, line_no, "bad span");
        if (e.method.empty()) throw FormatError(label, line_no, "empty method");
        rows.push_back(std::move(e));
    }
    return rows;
}

std::vector<Extraction> load_extractions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_extractions(in, path.string());
}

}  // namespace piex
