#include "piex/text.h"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace piex {

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

namespace {
bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
}  // namespace

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_whitespace(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j])) ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string normalize_space(std::string_view s) {
    return join(split_whitespace(s), " ");
}

bool is_ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_punctuation(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (static_cast<unsigned char>(c) >= 0x80 ||
            !std::ispunct(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

bool has_letter(std::string_view s) {
    for (char c : s) {
        if (is_ascii_alpha(c) || static_cast<unsigned char>(c) >= 0x80) return true;
    }
    return false;
}

std::string normalize_apostrophes(std::string_view s) {
    static constexpr std::string_view kRightQuote = "\xE2\x80\x99";
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.substr(i, kRightQuote.size()) == kRightQuote) {
            out += '\'';
            i += kRightQuote.size() - 1;
        } else {
            out += s[i];
        }
    }
    return out;
}

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        auto b0 = static_cast<unsigned char>(s[i]);
        std::size_t extra = 0;
        char32_t cp = b0;
        if (b0 >= 0xF0 && b0 < 0xF8) {
            extra = 3;
            cp = b0 & 0x07;
        } else if (b0 >= 0xE0 && b0 < 0xF0) {
            extra = 2;
            cp = b0 & 0x0F;
        } else if (b0 >= 0xC0 && b0 < 0xE0) {
            extra = 1;
            cp = b0 & 0x1F;
        }
        bool ok = extra > 0 && i + extra < s.size();
        for (std::size_t k = 1; ok && k <= extra; ++k) {
            auto bk = static_cast<unsigned char>(s[i + k]);
            if ((bk & 0xC0) != 0x80) ok = false;
            else cp = (cp << 6) | (bk & 0x3F);
        }
        if (ok) {
            out.push_back(cp);
            i += extra + 1;
        } else {
            out.push_back(b0);
            ++i;
        }
    }
    return out;
}

int natural_compare(std::string_view a, std::string_view b) {
    std::size_t i = 0;
    std::size_t j = 0;
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && digit(a[ie])) ++ie;
            while (je < b.size() && digit(b[je])) ++je;
            std::size_t is = i;
            std::size_t js = j;
            while (is + 1 < ie && a[is] == '0') ++is;
            while (js + 1 < je && b[js] == '0') ++js;
            std::size_t la = ie - is;
            std::size_t lb = je - js;
            if (la != lb) return la < lb ? -1 : 1;
            int c = a.substr(is, la).compare(b.substr(js, lb));
            if (c != 0) return c < 0 ? -1 : 1;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) {
                return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]) ? -1 : 1;
            }
            ++i;
            ++j;
        }
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string format_percent(double value) {
    // The epsilon absorbs binary representation error so 0.5 ties round up.
    double scaled = std::floor(value * 100.0 + 0.5 + 1e-7);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", scaled / 100.0);
    return buf;
}

}  // namespace piex
