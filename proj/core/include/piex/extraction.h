#ifndef PIEX_EXTRACTION_H_
#define PIEX_EXTRACTION_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace piex {

struct Extraction {
    std::string entry_id;
    std::string document_id;
    std::string sentence_id;
    int first = 0;  // token ids, inclusive
    int last = 0;
    std::string method;

    bool operator==(const Extraction&) const = default;
};

// Output order: document, sentence (digit runs numerically), first token,
// entry id, then last token and method.
bool extraction_less(const Extraction& a, const Extraction& b);

// Sorts and removes rows with identical (entry, doc, sentence, span).
void normalize_extractions(std::vector<Extraction>& rows);

void write_extractions(const std::vector<Extraction>& rows, std::ostream& out);
std::vector<Extraction> read_extractions(std::istream& in, const std::string& label = "<extractions>");
std::vector<Extraction> load_extractions(const std::filesystem::path& path);

}  // namespace piex

#endif  // PIEX_EXTRACTION_H_
