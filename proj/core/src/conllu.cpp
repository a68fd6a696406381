#include "piex/conllu.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "piex/error.h"
#include "piex/text.h"

namespace piex {

namespace {

bool parse_int(std::string_view s, int& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
}

std::string describe(const DepSentence& s) {
    std::string d = "sentence '" + s.sentence_id + "'";
    if (!s.document_id.empty()) d += " of document '" + s.document_id + "'";
    return d;
}

bool metadata(const std::string& line, std::string_view key, std::string& value) {
    std::string body = trim(std::string_view(line).substr(1));
    if (body.rfind(key, 0) != 0) return false;
    std::string rest = trim(std::string_view(body).substr(key.size()));
    if (rest.empty() || rest[0] != '=') return false;
    value = trim(std::string_view(rest).substr(1));
    return true;
}

}  // namespace

void validate_tree(const DepSentence& s) {
    const int n = static_cast<int>(s.tokens.size());
    int roots = 0;
    for (int i = 0; i < n; ++i) {
        const Token& t = s.tokens[static_cast<std::size_t>(i)];
        if (t.id != i + 1) {
            throw InputError(describe(s) + ": token ids are not contiguous from 1");
        }
        if (t.head < 0 || t.head > n) {
            throw InputError(describe(s) + ": token " + std::to_string(t.id) +
                             " has head " + std::to_string(t.head) + " out of range");
        }
        if (t.head == t.id) {
            throw InputError(describe(s) + ": token " + std::to_string(t.id) + " is its own head");
        }
        if (t.head == 0) ++roots;
    }
    if (n > 0 && roots != 1) {
        throw InputError(describe(s) + ": expected exactly one root, found " + std::to_string(roots));
    }
    for (int i = 1; i <= n; ++i) {
        int cur = i;
        int steps = 0;
        while (cur != 0) {
            cur = s.token(cur).head;
            if (++steps > n) throw InputError(describe(s) + ": cycle through token " + std::to_string(i));
        }
    }
}

std::vector<DepSentence> read_conllu(std::istream& in, const std::string& label) {
    std::vector<DepSentence> out;
    std::string document;
    std::size_t per_doc = 0;
    DepSentence cur;
    bool have_id = false;
    bool open = false;

    auto flush = [&] {
        if (!open) return;
        if (!cur.tokens.empty()) {
            ++per_doc;
            cur.document_id = document;
            if (!have_id) cur.sentence_id = std::to_string(per_doc);
            try {
                validate_tree(cur);
            } catch (const InputError& e) {
                throw InputError(label + ": " + e.what());
            }
            out.push_back(std::move(cur));
        }
        cur = DepSentence{};
        have_id = false;
        open = false;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') {
            std::string value;
            if (metadata(line, "newdoc id", value)) {
                flush();
                document = value;
                per_doc = 0;
            } else if (metadata(line, "newdoc", value)) {
                flush();
            } else if (metadata(line, "sent_id", value)) {
                if (!cur.tokens.empty()) flush();
                cur.sentence_id = value;
                have_id = true;
                open = true;
            } else {
                if (!cur.tokens.empty()) flush();
                cur.comments.push_back(trim(std::string_view(line).substr(1)));
                open = true;
            }
            continue;
        }
        auto cols = split(line, '\t');
        if (cols.size() != 10) {
            throw FormatError(label, line_no, "expected 10 tab-separated columns, got " +
                                                  std::to_string(cols.size()));
        }
        if (cols[0].find('-') != std::string::npos || cols[0].find('.') != std::string::npos) {
            open = true;
            continue;
        }
        Token t;
        if (!parse_int(cols[0], t.id)) throw FormatError(label, line_no, "bad token id '" + cols[0] + "'");
        if (!parse_int(cols[6], t.head)) throw FormatError(label, line_no, "bad head '" + cols[6] + "'");
        t.form = cols[1];
        t.lemma = cols[2] == "_" && cols[1] != "_" ? to_lower(cols[1]) : cols[2];
        t.upos = cols[3];
        t.xpos = cols[4];
        t.feats = cols[5];
        t.deprel = cols[7];
        t.misc = cols[9];
        cur.tokens.push_back(std::move(t));
        open = true;
    }
    flush();
    return out;
}

std::vector<DepSentence> load_conllu(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return read_conllu(in, path.string());
}

void write_conllu(const std::vector<DepSentence>& sentences, std::ostream& out) {
    std::string document;
    bool first = true;
    for (const auto& s : sentences) {
        if (first || s.document_id != document) {
            if (!s.document_id.empty()) out << "# newdoc id = " << s.document_id << '\n';
            document = s.document_id;
            first = false;
        }
        out << "# sent_id = " << s.sentence_id << '\n';
        for (const auto& c : s.comments) out << "# " << c << '\n';
        for (const auto& t : s.tokens) {
            auto col = [](const std::string& v) { return v.empty() ? std::string("_") : v; };
            out << t.id << '\t' << col(t.form) << '\t' << col(t.lemma) << '\t' << col(t.upos)
                << '\t' << col(t.xpos) << '\t' << col(t.feats) << '\t' << t.head << '\t'
                << col(t.deprel) << "\t_\t" << col(t.misc) << '\n';
        }
        out << '\n';
    }
}

}  // namespace piex
