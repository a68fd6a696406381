#include "cli.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "piex/candidates.h"
#include "piex/conllu.h"
#include "piex/error.h"
#include "piex/evaluation.h"
#include "piex/example_index.h"
#include "piex/extraction.h"
#include "piex/lexicon.h"
#include "piex/morphology.h"
#include "piex/overlap.h"
#include "piex/parallel.h"
#include "piex/text.h"

namespace piex::cli {

namespace {

using json = nlohmann::ordered_json;

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

Lexicon load_named(const std::string& path) { return load_lexicon(path, stem_of(path)); }

const Lexicon& require_one(const std::vector<Lexicon>& lexicons, const std::string& what) {
    if (lexicons.size() != 1) throw UsageError(what + " takes exactly one --lexicon");
    return lexicons.front();
}

void require(const std::string& value, const std::string& flag, const std::string& sub) {
    if (value.empty()) throw UsageError(sub + " requires " + flag);
}

Morphology load_morphology(const RunConfig& c) {
    return c.morphology.empty() ? Morphology::builtin() : Morphology::from_file(c.morphology);
}

// Lexicon ------------------------------------------------------------------

void emit_lexicon(const Lexicon& lexicon, Format format, std::ostream& out) {
    if (format == Format::kJson) {
        json rows = json::array();
        for (const auto& e : lexicon.entries()) {
            json row = {{"id", e.id}, {"surface", e.surface}, {"source", e.source}};
            if (e.tagged()) row["tagged"] = e.tagged_form();
            rows.push_back(std::move(row));
        }
        out << json({{"name", lexicon.name()}, {"entries", rows}}).dump(2) << '\n';
        return;
    }
    write_lexicon(lexicon, out);
}

void run_lexicon(const RunConfig& c, std::ostream& out, std::ostream& log) {
    if (c.lexicons.empty()) throw UsageError("lexicon requires at least one --lexicon");
    std::vector<Lexicon> loaded;
    for (const auto& p : c.lexicons) loaded.push_back(load_named(p));

    ParentheticalExceptions exceptions;
    if (!c.exceptions.empty()) exceptions = load_parenthetical_exceptions(c.exceptions);
    ExpandOptions options;
    options.parentheticals = c.parentheticals;
    options.placeholders = c.expand_placeholders;
    options.exceptions = c.exceptions.empty() ? nullptr : &exceptions;

    Lexicon result("lexicon");
    if (c.intersect) {
        if (loaded.size() < 2) throw UsageError("--intersect needs two or more --lexicon files");
        std::vector<Lexicon> expanded;
        for (const auto& l : loaded) expanded.push_back(expand_lexicon(l, options));
        result = intersect(expanded);
    } else {
        result = expand_lexicon(require_one(loaded, "lexicon without --intersect"), options);
    }
    log << "lexicon: " << result.size() << " entries\n";
    emit_lexicon(result, c.format, out);
}

// Overlap ------------------------------------------------------------------

void emit_matrix_json(const OverlapMatrix& m, std::ostream& out) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        json cells = json::array();
        for (std::size_t j = 0; j < m.names.size(); ++j) {
            const auto& cell = m.cells[i][j];
            json cj = {{"with", m.names[j]}, {"exact", cell.exact}};
            if (m.with_decisions) cj["accepted"] = cell.accepted;
            cj["candidates"] = cell.candidates;
            cj["percent"] = std::stod(format_percent(cell.percent));
            cells.push_back(std::move(cj));
        }
        rows.push_back({{"name", m.names[i]}, {"size", m.sizes[i]}, {"cells", cells}});
    }
    out << json({{"resources", rows}}).dump(2) << '\n';
}

void run_overlap(const RunConfig& c, std::ostream& out, std::ostream& log) {
    if (c.lexicons.size() < 2) throw UsageError("overlap needs two or more --lexicon files");
    std::vector<Lexicon> loaded;
    for (const auto& p : c.lexicons) loaded.push_back(load_named(p));

    ReviewDecisions decisions;
    if (!c.review.empty()) decisions = load_review(c.review);
    auto m = overlap_matrix(loaded, c.review.empty() ? nullptr : &decisions, c.jobs);

    if (!c.pairs_out.empty()) {
        std::vector<CandidatePair> pairs;
        for (std::size_t i = 0; i < loaded.size(); ++i) {
            for (std::size_t j = i + 1; j < loaded.size(); ++j) {
                auto p = candidate_pairs(loaded[i], loaded[j]);
                pairs.insert(pairs.end(), p.begin(), p.end());
            }
        }
        std::ofstream pf(c.pairs_out, std::ios::binary);
        if (!pf) throw InputError("cannot write " + c.pairs_out);
        write_candidate_pairs(pairs, pf);
        log << "overlap: " << pairs.size() << " candidate pairs\n";
    }
    switch (c.format) {
        case Format::kJson: emit_matrix_json(m, out); break;
        case Format::kTable: write_matrix_table(m, out); break;
        case Format::kTsv: write_matrix_tsv(m, out); break;
    }
}

// Candidates ---------------------------------------------------------------

std::string join_positions(const std::vector<int>& positions) {
    std::string s;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(positions[i]);
    }
    return s;
}

void run_candidates(const RunConfig& c, std::ostream& out, std::ostream& log) {
    require(c.corpus, "--corpus", "candidates");
    std::vector<Lexicon> loaded;
    for (const auto& p : c.lexicons) loaded.push_back(load_named(p));
    const Lexicon& lexicon = require_one(loaded, "candidates");
    auto corpus = load_conllu(c.corpus);
    auto morphology = load_morphology(c);

    CandidateOptions options{c.order_restriction, c.gap_restriction, c.max_gap};
    CandidateExtractor extractor(lexicon, options, morphology);
    auto rows = extractor.extract_corpus(corpus, c.jobs);
    log << "candidates: " << rows.size() << " rows\n";

    if (!c.sheet.empty()) {
        std::ofstream sf(c.sheet, std::ios::binary);
        if (!sf) throw InputError("cannot write " + c.sheet);
        render_annotation_sheet(rows, corpus, lexicon, sf);
    }
    if (c.format == Format::kJson) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"doc", r.document_id}, {"sent", r.sentence_id}, {"entry_id", r.entry_id},
                           {"positions", r.positions}});
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << "doc\tsent\tentry_id\tpositions\n";
    for (const auto& r : rows) {
        out << r.document_id << '\t' << r.sentence_id << '\t' << r.entry_id << '\t'
            << join_positions(r.positions) << '\n';
    }
}

// Extract ------------------------------------------------------------------

void emit_extractions(const std::vector<Extraction>& rows, Format format, std::ostream& out) {
    if (format == Format::kJson) {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"doc", r.document_id}, {"sent", r.sentence_id}, {"entry_id", r.entry_id},
                           {"first", r.first}, {"last", r.last}, {"method", r.method}});
        }
        out << arr.dump(2) << '\n';
        return;
    }
    write_extractions(rows, out);
}

std::vector<PiePattern> parse_patterns(const RunConfig& c, const Lexicon& lexicon, std::ostream& log) {
    require(c.parses, "--parses", "extract --method parse");
    std::vector<std::string> missing;
    auto isolated = patterns_from_parses(lexicon, load_conllu(c.parses), &missing);
    for (const auto& id : missing) log << "extract: no isolated parse for " << id << '\n';

    std::vector<PiePattern> patterns;
    if (c.in_context.empty()) {
        for (auto& [id, p] : isolated) patterns.push_back(std::move(p));
        return patterns;
    }
    require(c.example_parses, "--example-parses", "extract --in-context");
    auto index = ExampleIndex::open(c.in_context);
    ConlluParseSource source(c.example_parses);
    std::size_t in_context = 0;
    for (const auto& entry : lexicon.entries()) {
        auto it = isolated.find(entry.id);
        const PiePattern* fallback = it == isolated.end() ? nullptr : &it->second;
        PiePattern p;
        try {
            p = acquire_in_context(entry, index, source, fallback);
        } catch (const ParseSourceUnavailable&) {
            throw;
        } catch (const InputError& e) {
            if (fallback) throw;
            log << "extract: skipping " << entry.id << ": " << e.what() << '\n';
            continue;
        }
        if (p.provenance == Provenance::kInContext) ++in_context;
        patterns.push_back(std::move(p));
    }
    log << "extract: " << in_context << " of " << patterns.size() << " patterns from examples\n";
    return patterns;
}

void run_extract(const RunConfig& c, std::ostream& out, std::ostream& log) {
    require(c.corpus, "--corpus", "extract");
    std::vector<Lexicon> loaded;
    for (const auto& p : c.lexicons) loaded.push_back(load_named(p));
    const Lexicon& lexicon = require_one(loaded, "extract");
    auto corpus = load_conllu(c.corpus);

    std::vector<Extraction> rows;
    if (c.method == Method::kParse) {
        ParseMatchOptions options{c.level, c.match_articles};
        ParseMatcher matcher(parse_patterns(c, lexicon, log), options, !c.in_context.empty());
        rows = matcher.match_corpus(corpus, c.jobs);
    } else {
        auto morphology = load_morphology(c);
        StringMatcher matcher(lexicon, c.match, morphology);
        rows = matcher.match_corpus(corpus, c.jobs);
    }
    log << "extract: " << rows.size() << " rows\n";
    emit_extractions(rows, c.format, out);
}

// Combine, evaluate, kappa -------------------------------------------------

void run_combine(const RunConfig& c, std::ostream& out, std::ostream& log) {
    if (c.inputs.size() < 2) throw UsageError("combine needs two or more extraction files");
    std::vector<std::vector<Extraction>> sets;
    for (const auto& p : c.inputs) sets.push_back(load_extractions(p));
    auto rows = combine_union(sets);
    log << "combine: " << rows.size() << " rows\n";
    emit_extractions(rows, c.format, out);
}

void run_evaluate(const RunConfig& c, std::ostream& out, std::ostream&) {
    require(c.gold, "--gold", "evaluate");
    require(c.extractions, "--extractions", "evaluate");
    auto gold = load_gold(c.gold);
    auto rows = load_extractions(c.extractions);
    EvalReport report = score(rows, gold);
    if (c.top_n > 0 && report.per_type.size() > c.top_n) report.per_type.resize(c.top_n);
    switch (c.format) {
        case Format::kJson: write_report_json(report, out); break;
        case Format::kTable: write_report_table(report, out); break;
        case Format::kTsv: write_report_tsv(report, out); break;
    }
}

void run_kappa(const RunConfig& c, std::ostream& out, std::ostream&) {
    require(c.labels, "--labels", "kappa");
    std::ifstream in(c.labels);
    if (!in) throw InputError("cannot open labels file " + c.labels);
    auto table = read_kappa_table(in, c.labels);
    double k = fleiss_kappa(table);
    std::ostringstream v;
    v.setf(std::ios::fixed);
    v.precision(6);
    v << k;
    if (c.format == Format::kJson) {
        out << json({{"items", table.size()}, {"raters", table.front().size()}, {"kappa", std::stod(v.str())}})
                   .dump(2)
            << '\n';
        return;
    }
    out << "items\traters\tkappa\n" << table.size() << '\t' << table.front().size() << '\t' << v.str() << '\n';
}

void run_index(const RunConfig& c, std::ostream& out, std::ostream& log) {
    require(c.sentences, "--sentences", "index");
    if (c.output.empty()) throw UsageError("index requires --output DIR");
    std::ifstream in(c.sentences);
    if (!in) throw InputError("cannot open sentences file " + c.sentences);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    ExampleIndex::build(lines, c.output);
    log << "index: " << lines.size() << " sentences\n";
    (void)out;
}

// Command line -------------------------------------------------------------

struct Flags {
    std::string method = "exact";
    std::string format = "tsv";
    bool no_labels = false;
    bool no_direction = false;
    bool case_sensitive = false;
    int intervening = 0;
    bool no_order = false;
    bool no_gap = false;
    bool no_parentheticals = false;
    int jobs = 0;
};

void add_jobs(CLI::App* sub, Flags& f) {
    sub->add_option("--jobs,-j", f.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);
}

void add_output(CLI::App* sub, RunConfig& c, Flags& f, const std::vector<std::string>& formats) {
    sub->add_option("--output,-o", c.output, "Output file (default: standard output)");
    sub->add_option("--format", f.format, "Output encoding")->check(CLI::IsMember(formats));
}

}  // namespace

std::optional<RunConfig> parse_command_line(const std::vector<std::string>& args, std::ostream& out) {
    RunConfig c;
    Flags f;
    CLI::App app{"piex: extraction of potentially idiomatic expressions"};
    app.set_config("--config", "", "key=value file; use [subcommand] sections; flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);
    app.set_version_flag("--version", "piex 0.3.0");

    const std::vector<std::string> tsv_json{"tsv", "json"};
    const std::vector<std::string> all_formats{"tsv", "json", "table"};

    auto* lex = app.add_subcommand("lexicon", "Load, expand or intersect lexicons");
    lex->add_option("--lexicon,-l", c.lexicons, "Lexicon TSV (repeatable)")->required()->check(CLI::ExistingFile);
    lex->add_flag("--intersect", c.intersect, "Keep entries present in every lexicon");
    lex->add_flag("--expand-placeholders", c.expand_placeholders, "Expand placeholder words");
    lex->add_flag("--no-parentheticals", f.no_parentheticals, "Keep parenthesised material as is");
    lex->add_option("--exceptions", c.exceptions, "Parenthetical exceptions file")->check(CLI::ExistingFile);
    add_output(lex, c, f, tsv_json);

    auto* ov = app.add_subcommand("overlap", "Pairwise lexicon overlap");
    ov->add_option("--lexicon,-l", c.lexicons, "Lexicon TSV (repeatable)")->required()->check(CLI::ExistingFile);
    ov->add_option("--review", c.review, "Reviewed candidate pairs")->check(CLI::ExistingFile);
    ov->add_option("--pairs-out", c.pairs_out, "Write candidate pairs for review");
    add_output(ov, c, f, all_formats);
    add_jobs(ov, f);

    auto* cand = app.add_subcommand("candidates", "Candidate sentences for annotation");
    cand->add_option("--lexicon,-l", c.lexicons, "Tagged lexicon TSV")->required()->check(CLI::ExistingFile);
    cand->add_option("--corpus", c.corpus, "Corpus CoNLL-U")->required()->check(CLI::ExistingFile);
    cand->add_flag("--no-order-restriction", f.no_order, "Allow any word order for verbless entries");
    cand->add_flag("--no-gap-restriction", f.no_gap, "Do not bound gaps for preposition-noun entries");
    cand->add_option("--max-gap", c.max_gap, "Gap bound for preposition-noun entries")->check(CLI::NonNegativeNumber);
    cand->add_option("--sheet", c.sheet, "Write an annotation sheet");
    cand->add_option("--morphology", c.morphology, "Irregular forms TSV")->check(CLI::ExistingFile);
    add_output(cand, c, f, tsv_json);
    add_jobs(cand, f);

    auto* ex = app.add_subcommand("extract", "Extract PIEs from a corpus");
    ex->add_option("--lexicon,-l", c.lexicons, "Lexicon TSV")->required()->check(CLI::ExistingFile);
    ex->add_option("--corpus", c.corpus, "Corpus CoNLL-U")->required()->check(CLI::ExistingFile);
    ex->add_option("--method", f.method, "exact|fuzzy|inflect|parse")
        ->check(CLI::IsMember({"exact", "fuzzy", "inflect", "parse"}));
    auto* interv = ex->add_option("--intervening", f.intervening, "Words allowed between PIE words (0-3)")
                       ->check(CLI::Range(0, 3));
    auto* cs = ex->add_flag("--case-sensitive", f.case_sensitive, "Match case");
    auto* nl = ex->add_flag("--no-labels", f.no_labels, "Ignore dependency labels");
    auto* nd = ex->add_flag("--no-direction", f.no_direction, "Ignore labels and edge direction");
    nl->excludes(nd);
    auto* parses = ex->add_option("--parses", c.parses, "Isolated PIE parses (CoNLL-U)")->check(CLI::ExistingFile);
    auto* ctx = ex->add_option("--in-context", c.in_context, "Example index directory")
                    ->check(CLI::ExistingDirectory);
    auto* eparses = ex->add_option("--example-parses", c.example_parses, "Parses of example sentences");
    auto* arts = ex->add_flag("--match-articles", c.match_articles, "Require pattern articles");
    auto* morph = ex->add_option("--morphology", c.morphology, "Irregular forms TSV")->check(CLI::ExistingFile);
    add_output(ex, c, f, tsv_json);
    add_jobs(ex, f);

    auto* comb = app.add_subcommand("combine", "Union of extraction files");
    comb->add_option("inputs", c.inputs, "Extraction TSVs")->required()->check(CLI::ExistingFile);
    add_output(comb, c, f, tsv_json);

    auto* ev = app.add_subcommand("evaluate", "Score extractions against gold");
    ev->add_option("--gold", c.gold, "Gold TSV")->required()->check(CLI::ExistingFile);
    ev->add_option("--extractions", c.extractions, "Extraction TSV")->required()->check(CLI::ExistingFile);
    ev->add_option("--top", c.top_n, "Limit the per-type rows (0 = all)");
    add_output(ev, c, f, all_formats);

    auto* kap = app.add_subcommand("kappa", "Fleiss' kappa over an item x rater table");
    kap->add_option("--labels", c.labels, "item<TAB>label...")->required()->check(CLI::ExistingFile);
    add_output(kap, c, f, tsv_json);

    auto* idx = app.add_subcommand("index", "Build an example sentence index");
    idx->add_option("--sentences", c.sentences, "One sentence per line")->required()->check(CLI::ExistingFile);
    idx->add_option("--output,-o", c.output, "Index directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::CallForVersion&) {
        out << "piex 0.3.0\n";
        return std::nullopt;
    }
    // Subcommand help lands here as well.
    c.subcommand = app.get_subcommands().front()->get_name();

    if (f.format == "json") c.format = Format::kJson;
    else if (f.format == "table") c.format = Format::kTable;
    c.parentheticals = !f.no_parentheticals;
    c.order_restriction = !f.no_order;
    c.gap_restriction = !f.no_gap;
    c.jobs = f.jobs > 0 ? static_cast<unsigned>(f.jobs) : default_jobs();

    if (c.subcommand == "extract") {
        if (f.method == "fuzzy") c.method = Method::kFuzzy;
        else if (f.method == "inflect") c.method = Method::kInflect;
        else if (f.method == "parse") c.method = Method::kParse;
        c.match.max_intervening = f.intervening;
        c.match.case_sensitive = f.case_sensitive;
        c.match.mode = c.method == Method::kFuzzy     ? MatchMode::kFuzzy
                       : c.method == Method::kInflect ? MatchMode::kInflect
                                                      : MatchMode::kExact;
        c.level = f.no_direction ? RelaxationLevel::kNoDirection
                  : f.no_labels  ? RelaxationLevel::kNoLabels
                                 : RelaxationLevel::kFull;

        auto given = [](const CLI::Option* o) { return o->count() > 0; };
        if (c.method == Method::kParse) {
            for (const auto* o : {interv, cs, morph}) {
                if (given(o)) throw UsageError(o->get_name() + " applies to string methods only");
            }
            if (!given(parses)) throw UsageError("--method parse requires --parses");
            if (given(eparses) && !given(ctx)) throw UsageError("--example-parses requires --in-context");
            if (given(ctx) && !given(eparses)) throw UsageError("--in-context requires --example-parses");
        } else {
            for (const auto* o : {nl, nd, parses, ctx, eparses, arts}) {
                if (given(o)) throw UsageError(o->get_name() + " applies to --method parse only");
            }
        }
    }
    return c;
}

void run(const RunConfig& config, std::ostream& out, std::ostream& log) {
    std::ostringstream buffer;
    const auto& s = config.subcommand;
    if (s == "lexicon") run_lexicon(config, buffer, log);
    else if (s == "overlap") run_overlap(config, buffer, log);
    else if (s == "candidates") run_candidates(config, buffer, log);
    else if (s == "extract") run_extract(config, buffer, log);
    else if (s == "combine") run_combine(config, buffer, log);
    else if (s == "evaluate") run_evaluate(config, buffer, log);
    else if (s == "kappa") run_kappa(config, buffer, log);
    else if (s == "index") {
        run_index(config, buffer, log);
        return;
    } else {
        throw UsageError("unknown subcommand " + s);
    }

    if (config.output.empty()) {
        out << buffer.str();
        return;
    }
    std::ofstream file(config.output, std::ios::binary);
    if (!file) throw InputError("cannot write " + config.output);
    file << buffer.str();
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        auto config = parse_command_line(args, out);
        if (!config) return 0;
        run(*config, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "piex: " << e.what() << "\nRun with --help for usage.\n";
        return 1;
    } catch (const UsageError& e) {
        err << "piex: " << e.what() << '\n';
        return 1;
    } catch (const InputError& e) {
        err << "piex: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "piex: internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace piex::cli
