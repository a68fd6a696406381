#include "piex/sentence.h"

#include "piex/text.h"

namespace piex {

std::vector<int> DepSentence::children(int id) const {
    std::vector<int> out;
    for (const auto& t : tokens) {
        if (t.head == id) out.push_back(t.id);
    }
    return out;
}

std::string DepSentence::text() const {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t.form;
    }
    return out;
}

bool is_clitic_unit(std::string_view text) {
    return !text.empty() && text[0] == '\'';
}

std::vector<std::string> split_units(std::string_view token) {
    std::vector<std::string> out;
    std::string norm = normalize_apostrophes(token);
    std::vector<std::string> parts;
    if (norm.find('-') != std::string::npos && norm.find_first_not_of('-') != std::string::npos) {
        for (auto& p : split(norm, '-')) {
            if (!p.empty()) parts.push_back(std::move(p));
        }
    } else {
        parts.push_back(norm);
    }
    for (auto& p : parts) {
        if (p.size() > 2 && p.compare(p.size() - 2, 2, "'s") == 0 &&
            to_lower(p) != "let's") {
            out.push_back(p.substr(0, p.size() - 2));
            out.emplace_back("'s");
        } else if (p.size() > 2 && p.compare(p.size() - 2, 2, "'S") == 0) {
            out.push_back(p.substr(0, p.size() - 2));
            out.emplace_back("'S");
        } else {
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<Unit> make_units(const DepSentence& sentence) {
    std::vector<Unit> units;
    units.reserve(sentence.tokens.size());
    for (const auto& t : sentence.tokens) {
        for (auto& piece : split_units(t.form)) {
            units.push_back({std::move(piece), t.id, t.upos});
        }
    }
    return units;
}

}  // namespace piex
