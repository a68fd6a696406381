#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "checks.h"
#include "cli.h"
#include "fixture.h"
#include "piex/extraction.h"

using namespace piex;
using support::fixture;

namespace {

struct Run {
    int status;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = cli::main_entry(args, out, err);
    return {status, out.str(), err.str()};
}

std::string fx(const std::string& rel) { return fixture(rel).string(); }

std::set<std::string> methods_of(const std::string& tsv) {
    std::istringstream in(tsv);
    std::set<std::string> out;
    for (const auto& e : read_extractions(in)) out.insert(e.method);
    return out;
}

std::filesystem::path scratch(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("piex-cli-test-" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST(Cli, StringConfigurations) {
    int configs = 0;
    for (std::string method : {"exact", "fuzzy", "inflect"}) {
        for (bool cs : {false, true}) {
            for (int k = 0; k <= 3; ++k) {
                std::vector<std::string> args = {"extract", "--method", method, "--intervening", std::to_string(k),
                                                 "-l", fx("lexicon.tsv"), "--corpus", fx("corpus.conllu")};
                if (cs) args.push_back("--case-sensitive");
                auto r = run(args);
                ASSERT_EQ(r.status, 0) << r.err;
                std::string tag = method + (cs ? "-cs-" : "-") + std::to_string(k) + "word";
                EXPECT_EQ(methods_of(r.out), std::set<std::string>{tag});
                ++configs;
            }
        }
    }
    EXPECT_EQ(configs, 24);
}

TEST(Cli, ParseConfigurations) {
    std::vector<std::pair<std::string, std::string>> levels = {
        {"", "parse"}, {"--no-labels", "parse-nolabels"}, {"--no-direction", "parse-nodirection"}};
    for (const auto& [flag, tag] : levels) {
        for (bool in_context : {false, true}) {
            std::vector<std::string> args = {"extract", "--method", "parse", "--parses", fx("pie_parses.conllu"),
                                             "-l", fx("lexicon.tsv"), "--corpus", fx("corpus.conllu")};
            if (!flag.empty()) args.push_back(flag);
            if (in_context) {
                args.push_back("--in-context");
                args.push_back(fx("examples"));
                args.push_back("--example-parses");
                args.push_back(fx("examples/parses.conllu"));
            }
            auto r = run(args);
            ASSERT_EQ(r.status, 0) << r.err;
            EXPECT_EQ(methods_of(r.out), std::set<std::string>{tag + (in_context ? "-incontext" : "")});
            if (in_context) EXPECT_NE(r.err.find("3 of 31 patterns from examples"), std::string::npos) << r.err;
        }
    }
}

TEST(Cli, ParsesOptions) {
    std::ostringstream out;
    auto cfg = cli::parse_command_line({"extract", "--method", "inflect", "--intervening", "2", "--case-sensitive",
                                        "-l", fx("lexicon.tsv"), "-l", fx("lexicon591.tsv"), "--corpus", fx("corpus.conllu"),
                                        "--jobs", "4"},
                                       out);
    ASSERT_TRUE(cfg);
    EXPECT_EQ(cfg->method, cli::Method::kInflect);
    EXPECT_EQ(cfg->match.max_intervening, 2);
    EXPECT_TRUE(cfg->match.case_sensitive);
    EXPECT_EQ(cfg->lexicons, (std::vector<std::string>{fx("lexicon.tsv"), fx("lexicon591.tsv")}));
    EXPECT_EQ(cfg->jobs, 4u);
    auto p = cli::parse_command_line({"extract", "--method", "parse", "--parses", fx("pie_parses.conllu"), "--no-labels",
                                      "--match-articles", "-l", fx("lexicon.tsv"), "--corpus", fx("corpus.conllu")},
                                     out);
    ASSERT_TRUE(p);
    EXPECT_EQ(p->level, RelaxationLevel::kNoLabels);
    EXPECT_TRUE(p->match_articles);
}

TEST(Cli, RejectsMismatchedFlags) {
    const std::string lex = fx("lexicon.tsv"), corpus = fx("corpus.conllu");
    std::vector<std::vector<std::string>> bad = {
        {"extract", "--method", "exact", "--no-labels", "-l", lex, "--corpus", corpus},
        {"extract", "--method", "fuzzy", "--no-direction", "-l", lex, "--corpus", corpus},
        {"extract", "--method", "inflect", "--parses", fx("pie_parses.conllu"), "-l", lex, "--corpus", corpus},
        {"extract", "--method", "exact", "--match-articles", "-l", lex, "--corpus", corpus},
        {"extract", "--method", "parse", "-l", lex, "--corpus", corpus},
        {"extract", "--method", "parse", "--parses", fx("pie_parses.conllu"), "--intervening", "1", "-l", lex,
         "--corpus", corpus},
        {"extract", "--method", "parse", "--parses", fx("pie_parses.conllu"), "--case-sensitive", "-l", lex,
         "--corpus", corpus},
        {"extract", "--method", "parse", "--parses", fx("pie_parses.conllu"), "--in-context", fx("examples"), "-l",
         lex, "--corpus", corpus},
        {"extract", "--method", "parse", "--parses", fx("pie_parses.conllu"), "--no-labels", "--no-direction", "-l",
         lex, "--corpus", corpus},
        {"extract", "--method", "exact", "--intervening", "4", "-l", lex, "--corpus", corpus},
        {"extract", "--method", "regex", "-l", lex, "--corpus", corpus},
        {"overlap", "-l", lex},
        {"lexicon", "-l", lex, "--bogus"},
        {},
        {"lexicon", "-l", lex, "kappa"},
    };
    for (const auto& args : bad) {
        auto r = run(args);
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        EXPECT_EQ(r.status, 1) << joined;
        EXPECT_FALSE(r.err.empty()) << joined;
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"--help"}).status, 0);
    EXPECT_EQ(run({"--version"}).status, 0);
    EXPECT_EQ(run({"kappa", "--labels", fx("eval/kappa.tsv")}).status, 0);
    auto missing = run({"lexicon", "-l", fx("no-such-file.tsv")});
    EXPECT_EQ(missing.status, 1);
    EXPECT_NE(missing.err.find("no-such-file"), std::string::npos);
    // Output into a directory that cannot be created is an I/O failure.
    auto dir = scratch("exit");
    std::ofstream(dir / "file") << "x";
    auto io = run({"kappa", "--labels", fx("eval/kappa.tsv"), "-o", (dir / "file" / "sub" / "out").string()});
    EXPECT_NE(io.status, 0);
}

TEST(Cli, KappaOutput) {
    auto r = run({"kappa", "--labels", fx("eval/kappa.tsv")});
    EXPECT_EQ(r.out, "items\traters\tkappa\n4\t3\t0.333333\n");
}

TEST(Cli, ConfigFile) {
    auto dir = scratch("config");
    auto cfg = dir / "piex.ini";
    std::ofstream(cfg) << "[extract]\nmethod = fuzzy\nintervening = 2\nlexicon = " << fx("lexicon.tsv")
                       << "\ncorpus = " << fx("corpus.conllu") << "\n";
    auto from_file = run({"--config", cfg.string(), "extract"});
    ASSERT_EQ(from_file.status, 0) << from_file.err;
    EXPECT_EQ(methods_of(from_file.out), std::set<std::string>{"fuzzy-2word"});
    auto flag_wins = run({"--config", cfg.string(), "extract", "--intervening", "0"});
    ASSERT_EQ(flag_wins.status, 0) << flag_wins.err;
    EXPECT_EQ(methods_of(flag_wins.out), std::set<std::string>{"fuzzy-0word"});
    std::ofstream(dir / "bad.ini") << "[extract]\nno_such_key = 1\n";
    EXPECT_EQ(run({"--config", (dir / "bad.ini").string(), "extract"}).status, 1);
}

TEST(Cli, WritesOutputFile) {
    auto dir = scratch("out");
    auto r = run({"evaluate", "--gold", fx("eval/gold.tsv"), "--extractions", fx("eval/extractions.tsv"), "-o",
                  (dir / "report.tsv").string()});
    ASSERT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(dir / "report.tsv");
    std::string all((std::istreambuf_iterator<char>(in)), {});
    EXPECT_NE(all.find("80.00"), std::string::npos);
}

TEST(Cli, Deterministic) {
    auto r = support::check_cli_determinism((std::filesystem::temp_directory_path() / "piex-cli-det").string());
    for (const auto& v : r.notes) ADD_FAILURE() << v;
    EXPECT_EQ(r.violations, 0u);
    EXPECT_GE(r.cases, 18u);
}
