#ifndef PIEX_TEXT_H_
#define PIEX_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace piex {

// Em dash, the "any word" slot in dictionary forms.
inline constexpr std::string_view kEmDash = "\xE2\x80\x94";

// ASCII-only case folding; non-ASCII bytes pass through.
std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

// Splits on runs of ASCII whitespace; no empty fields.
std::vector<std::string> split_whitespace(std::string_view s);

// Splits on a single character; keeps empty fields.
std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Collapses whitespace runs to one space and trims.
std::string normalize_space(std::string_view s);

bool is_ascii_alpha(char c);

// True when s is non-empty and every byte is ASCII punctuation.
bool is_punctuation(std::string_view s);

bool has_letter(std::string_view s);

// Replaces typographic apostrophes (U+2019) with ASCII '.
std::string normalize_apostrophes(std::string_view s);

// Decodes UTF-8 into code points; invalid bytes decode as themselves.
std::u32string decode_utf8(std::string_view s);

// Orders strings so that embedded digit runs compare numerically
// ("s2" < "s10"). Ties fall back to plain byte order.
int natural_compare(std::string_view a, std::string_view b);

struct NaturalLess {
    bool operator()(std::string_view a, std::string_view b) const {
        return natural_compare(a, b) < 0;
    }
};

// Fixed two-decimal rendering with half-up rounding (80.125 -> "80.13").
std::string format_percent(double value);

}  // namespace piex

#endif  // PIEX_TEXT_H_
