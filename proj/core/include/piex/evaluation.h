#ifndef PIEX_EVALUATION_H_
#define PIEX_EVALUATION_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "piex/extraction.h"

namespace piex {

enum class Sense { kIdiomatic, kLiteral, kOther };

struct GoldRecord {
    std::string document_id;
    std::string sentence_id;
    std::string entry_id;
    bool is_pie = false;
    std::optional<Sense> sense;  // only when is_pie

    bool operator==(const GoldRecord&) const = default;
};

// `doc<TAB>sent<TAB>entry_id<TAB>y|n<TAB>i|l|o` (sense may be empty for n).
// Repeated (doc, sent, entry) rows collapse; conflicting y/n is an error.
std::vector<GoldRecord> read_gold(std::istream& in, const std::string& label = "<gold>");
std::vector<GoldRecord> load_gold(const std::filesystem::path& path);

struct Scores {
    std::size_t true_positives = 0;
    std::size_t false_positives = 0;
    std::size_t false_negatives = 0;
    double precision = 0;
    double recall = 0;
    double f1 = 0;
};

Scores make_scores(std::size_t tp, std::size_t fp, std::size_t fn);

struct TypeRow {
    std::string entry_id;
    std::size_t gold_count = 0;  // gold PIE instances
    Scores scores;
};

struct EvalReport {
    Scores overall;
    std::vector<TypeRow> per_type;  // gold frequency desc, then entry id
};

EvalReport score(const std::vector<Extraction>& extractions, const std::vector<GoldRecord>& gold);

// Rows of score() limited to the top_n most frequent gold types (0 = all).
std::vector<TypeRow> per_type_report(const std::vector<Extraction>& extractions,
                                     const std::vector<GoldRecord>& gold, std::size_t top_n);

// One row per (doc, sentence, entry) over all inputs; keeps the earliest
// span and lists every contributing method, joined by "+".
std::vector<Extraction> combine_union(const std::vector<std::vector<Extraction>>& sets);

// labels[item][annotator]; every item needs the same number (>= 2) of labels.
double fleiss_kappa(const std::vector<std::vector<std::string>>& labels);
// `item<TAB>label<TAB>label...`
std::vector<std::vector<std::string>> read_kappa_table(std::istream& in,
                                                       const std::string& label = "<labels>");

void write_report_tsv(const EvalReport& report, std::ostream& out);
void write_report_table(const EvalReport& report, std::ostream& out);
void write_report_json(const EvalReport& report, std::ostream& out);

}  // namespace piex

#endif  // PIEX_EVALUATION_H_
