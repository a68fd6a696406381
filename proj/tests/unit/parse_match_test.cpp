#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "fixture.h"
#include "oracles.h"
#include "piex/error.h"
#include "piex/parse_match.h"
#include "piex/text.h"

using namespace piex;
using support::parse_compact;
using support::sentence;
using support::shared_fixture;

namespace {

const PiePattern& isolated(const std::string& id) { return shared_fixture().isolated.at(id); }

std::vector<std::pair<int, int>> spans(const DepSentence& s, const PiePattern& p, RelaxationLevel level) {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : subtree_match(s, p, level)) out.push_back({e.first, e.last});
    return out;
}

bool matches(const DepSentence& s, const PiePattern& p, RelaxationLevel level) {
    return !subtree_match(s, p, level).empty();
}

const auto kFull = RelaxationLevel::kFull;
const auto kNoLabels = RelaxationLevel::kNoLabels;
const auto kNoDirection = RelaxationLevel::kNoDirection;

}  // namespace

TEST(BuildPattern, LoseThePlot) {
    const auto& p = isolated("lose_the_plot");
    ASSERT_EQ(p.nodes.size(), 3u);
    EXPECT_EQ(p.nodes[p.root].lemma, "lose");
    ASSERT_EQ(p.edges.size(), 2u);
    std::set<std::tuple<std::string, std::string, std::string>> edges;
    for (const auto& e : p.edges) edges.insert({p.nodes[e.head].lemma, e.deprel, p.nodes[e.dependent].lemma});
    EXPECT_EQ(edges, (std::set<std::tuple<std::string, std::string, std::string>>{
                         {"lose", "dobj", "plot"}, {"plot", "det", "the"}}));
    for (const auto& n : p.nodes) EXPECT_EQ(n.is_article, n.lemma == "the");
    EXPECT_TRUE(p.is_tree());
}

TEST(BuildPattern, UpTheAnteIsPobj) {
    const auto& p = isolated("up_the_ante");
    bool found = false;
    for (const auto& e : p.edges) found = found || (p.nodes[e.head].lemma == "up" && e.deprel == "pobj");
    EXPECT_TRUE(found);
}

TEST(BuildPattern, DashBecomesAnyWord) {
    const auto& p = isolated("too_for_words");
    int any = 0;
    for (const auto& n : p.nodes) any += n.kind == NodeKind::kAnyWord;
    EXPECT_EQ(any, 1);
}

TEST(BuildPattern, PlaceholderNodes) {
    const auto& thorn = isolated("thorn_in_side");
    int poss = 0;
    for (const auto& n : thorn.nodes) poss += n.kind == NodeKind::kPossessiveSomeone;
    EXPECT_EQ(poss, 1);
    EXPECT_EQ(thorn.nodes.size(), 5u);  // the 's piece folds into its placeholder
    const auto& slip = isolated("give_someone_the_slip");
    int obj = 0;
    for (const auto& n : slip.nodes) obj += n.kind == NodeKind::kObject;
    EXPECT_EQ(obj, 1);
}

TEST(BuildPattern, WordsMissingFromParse) {
    auto entry = make_entry("x", "kick the bucket", "t");
    EXPECT_THROW(build_pattern(entry, parse_compact("jump/VERB/0/root ship/NOUN/1/dobj")), InputError);
    // Present but not one subtree.
    auto pieces = parse_compact("kick/VERB/0/root the/DET/1/det bucket/NOUN/1/dobj");
    EXPECT_NO_THROW(build_pattern(entry, pieces));
    auto broken = parse_compact("kick/VERB/4/dep the/DET/4/det bucket/NOUN/4/dobj over/ADP/0/root");
    EXPECT_THROW(build_pattern(entry, broken), InputError);
}

TEST(SubtreeMatch, LoseThePlotInSentence) {
    EXPECT_EQ(spans(sentence(shared_fixture(), "d1", "s1"), isolated("lose_the_plot"), kFull),
              (std::vector<std::pair<int, int>>{{4, 6}}));
}

TEST(SubtreeMatch, UpTheAnteNeedsNoLabels) {
    const auto& s = sentence(shared_fixture(), "d1", "s2");
    EXPECT_FALSE(matches(s, isolated("up_the_ante"), kFull));
    EXPECT_TRUE(matches(s, isolated("up_the_ante"), kNoLabels));
    EXPECT_TRUE(matches(s, isolated("up_the_ante"), kNoDirection));
}

TEST(SubtreeMatch, LaughingStockNeedsNoDirection) {
    const auto& s = sentence(shared_fixture(), "d1", "s3");
    EXPECT_FALSE(matches(s, isolated("laughing_stock"), kFull));
    EXPECT_FALSE(matches(s, isolated("laughing_stock"), kNoLabels));
    EXPECT_TRUE(matches(s, isolated("laughing_stock"), kNoDirection));
}

TEST(SubtreeMatch, PassiveRule) {
    auto entry = make_entry("j", "jump ship", "t", "jump/VERB ship/NOUN");
    auto p = build_pattern(entry, parse_compact("jump/VERB.VB/0/root ship/NOUN.NN/1/dobj"));
    const auto& f = shared_fixture();
    EXPECT_TRUE(matches(sentence(f, "d1", "s4"), p, kFull));   // nsubjpass with auxpass
    EXPECT_TRUE(matches(sentence(f, "d3", "s26"), p, kFull));  // "Ship was jumped twice"
    EXPECT_FALSE(matches(sentence(f, "d3", "s16"), p, kFull)); // active subject
    // Plain nsubj counts only with a passive auxiliary on a participle.
    auto got = parse_compact("The/DET/2/det plot/NOUN/4/nsubj got=get/AUX/4/aux:pass lost=lose/VERB.VBN/0/root");
    auto lose = build_pattern(make_entry("l", "lose the plot", "t"), sentence(f, "d1", "s1"));
    EXPECT_TRUE(matches(got, lose, kFull));
    auto active = parse_compact("The/DET/2/det plot/NOUN/3/nsubj lost=lose/VERB.VBD/0/root");
    EXPECT_FALSE(matches(active, lose, kFull));
    // The rule applies to objects only.
    auto ante = parse_compact("The/DET/2/det ante/NOUN/4/nsubjpass was=be/AUX/4/auxpass upped=up/VERB.VBN/0/root");
    EXPECT_FALSE(matches(ante, isolated("up_the_ante"), kFull));
}

TEST(SubtreeMatch, ArticlesAreSkipped) {
    const auto& p = isolated("spill_the_beans");
    auto bare = parse_compact("spill/VERB/0/root beans=bean/NOUN/1/dobj");
    auto a = parse_compact("spill/VERB/0/root a/DET/3/det beans=bean/NOUN/1/dobj");
    auto all = parse_compact("spill/VERB/0/root all/DET/4/det the/DET/4/det beans=bean/NOUN/1/dobj");
    EXPECT_TRUE(matches(bare, p, kFull));
    EXPECT_TRUE(matches(a, p, kFull));
    EXPECT_EQ(spans(all, p, kFull), (std::vector<std::pair<int, int>>{{1, 4}}));
    ParseMatchOptions with_articles{kFull, true};
    EXPECT_TRUE(subtree_match(bare, effective_pattern(p, true), with_articles).empty());
    EXPECT_FALSE(subtree_match(all, effective_pattern(p, true), with_articles).empty());
}

TEST(SubtreeMatch, WildcardNeedsTheRightHead) {
    const auto& p = isolated("mother_of_all");
    const auto& f = shared_fixture();
    EXPECT_TRUE(matches(sentence(f, "d1", "s17"), p, kFull));
    auto detached = parse_compact(
        "the/DET/2/det mother/NOUN/0/root of/ADP/2/prep all/DET/2/det battles=battle/NOUN/2/dep");
    EXPECT_FALSE(matches(detached, p, kFull));
    EXPECT_FALSE(matches(detached, p, kNoLabels));
}

TEST(SubtreeMatch, PossessivePlaceholders) {
    const auto& f = shared_fixture();
    EXPECT_TRUE(matches(sentence(f, "d1", "s15"), isolated("thorn_in_side"), kFull));
    EXPECT_TRUE(matches(sentence(f, "d1", "s16"), isolated("thorn_in_side"), kFull));
    EXPECT_TRUE(matches(sentence(f, "d2", "s11"), isolated("lose_ones_temper"), kFull));
    auto bare_noun = parse_compact(
        "a/DET/2/det thorn/NOUN/0/root in/ADP/2/prep Google/PROPN/5/compound side/NOUN/3/pobj");
    EXPECT_FALSE(matches(bare_noun, isolated("thorn_in_side"), kFull));
}

TEST(SubtreeMatch, ObjectPlaceholder) {
    const auto& p = isolated("give_someone_the_slip");
    const auto& f = shared_fixture();
    EXPECT_TRUE(matches(sentence(f, "d2", "s19"), p, kFull));
    EXPECT_TRUE(matches(sentence(f, "d2", "s20"), p, kFull));
    auto poss = parse_compact("give/VERB/0/root his/PRON.PRP$/1/dative the/DET/4/det slip/NOUN/1/dobj");
    EXPECT_FALSE(matches(poss, p, kFull));
}

TEST(SubtreeMatch, UnlimitedGaps) {
    auto s = parse_compact(
        "spill/VERB/0/root quite/ADV/1/advmod suddenly/ADV/1/advmod all/DET/6/det the/DET/6/det "
        "beans=bean/NOUN/1/dobj");
    EXPECT_EQ(spans(s, isolated("spill_the_beans"), kFull), (std::vector<std::pair<int, int>>{{1, 6}}));
}

TEST(SubtreeMatch, SelfMatch) {
    const auto& f = shared_fixture();
    for (const auto& parse : f.pie_parses) {
        std::string id;
        for (const auto& c : parse.comments) {
            if (c.rfind("pie_id", 0) == 0) id = c.substr(c.find('=') + 2);
        }
        const auto& p = f.isolated.at(id);
        auto hits = subtree_match(parse, p, kFull);
        ASSERT_EQ(hits.size(), 1u) << id;
        int first = 0, last = 0;
        for (const auto& t : parse.tokens) {
            std::string l = to_lower(t.lemma);
            if (l == "a" || l == "an" || l == "the" || t.form == "'s") continue;
            if (!first) first = t.id;
            last = t.id;
        }
        EXPECT_EQ(hits[0].first, first) << id;
        EXPECT_EQ(hits[0].last, last) << id;
    }
}

TEST(SubtreeMatch, ArticleInsensitivityProperty) {
    std::mt19937 rng(11);
    const auto& f = shared_fixture();
    std::vector<PiePattern> patterns;
    for (const auto& [id, p] : f.isolated) patterns.push_back(p);
    int checked = 0;
    for (const auto& s : f.corpus) {
        // Delete every article and reindex.
        DepSentence stripped = s;
        stripped.tokens.clear();
        std::vector<int> new_id(s.tokens.size() + 1, 0);
        bool ok = true;
        for (const auto& t : s.tokens) {
            std::string l = to_lower(t.lemma);
            bool art = l == "a" || l == "an" || l == "the";
            if (art && !s.children(t.id).empty()) ok = false;
            if (!art) new_id[t.id] = static_cast<int>(stripped.tokens.size()) + 1, stripped.tokens.push_back(t);
        }
        if (!ok) continue;
        for (auto& t : stripped.tokens) {
            t.id = new_id[t.id];
            t.head = t.head ? new_id[t.head] : 0;
        }
        for (const auto& p : patterns) {
            for (auto level : {kFull, kNoLabels, kNoDirection}) {
                EXPECT_EQ(matches(s, p, level), matches(stripped, p, level)) << p.entry_id << " " << s.text();
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 3000);
}

TEST(SubtreeMatch, OracleOnRandomTrees) {
    std::mt19937 rng(3);
    int nonempty = 0;
    for (int i = 0; i < 60; ++i) {
        auto s = support::random_tree(rng, 3 + i % 10, "r");
        auto p = effective_pattern(support::random_pattern(rng, s, 4, "p"), false);
        for (auto level : {kFull, kNoLabels, kNoDirection}) {
            auto want = support::brute_force_subtree(s, p, level);
            std::set<std::pair<int, int>> got;
            for (const auto& e : subtree_match(s, p, ParseMatchOptions{level, false})) got.insert({e.first, e.last});
            EXPECT_EQ(got, want);
            nonempty += !want.empty();
        }
    }
    EXPECT_GT(nonempty, 30);
}

TEST(SubtreeOracle, IsSensitive) {
    // A reversed edge and a relabelled edge must change the oracle's answer.
    const auto& f = shared_fixture();
    auto eff = effective_pattern(isolated("laughing_stock"), false);
    const auto& fig7 = sentence(f, "d1", "s3");
    EXPECT_TRUE(support::brute_force_subtree(fig7, eff, kFull).empty());
    EXPECT_FALSE(support::brute_force_subtree(fig7, eff, kNoDirection).empty());
    auto ante = effective_pattern(isolated("up_the_ante"), false);
    EXPECT_TRUE(support::brute_force_subtree(sentence(f, "d1", "s2"), ante, kFull).empty());
    EXPECT_FALSE(support::brute_force_subtree(sentence(f, "d1", "s2"), ante, kNoLabels).empty());
}

TEST(ParseMatcher, MethodTagsAndDeterminism) {
    const auto& f = shared_fixture();
    std::vector<PiePattern> ps;
    for (const auto& [id, p] : f.isolated) ps.push_back(p);
    ParseMatcher m(ps, {kNoLabels, false}, false);
    auto a = m.match_corpus(f.corpus, 1);
    auto b = m.match_corpus(f.corpus, 8);
    EXPECT_EQ(support::hits_of(a), support::hits_of(b));
    ASSERT_FALSE(a.empty());
    EXPECT_EQ(a[0].method, "parse-nolabels");
    EXPECT_EQ(parse_method_tag({kNoDirection, true}, true), "parse-nodirection-articles-incontext");
    EXPECT_EQ(parse_method_tag({}, false), "parse");
}

TEST(PatternsFromParses, ReportsMissing) {
    const auto& f = shared_fixture();
    Lexicon lex("x");
    lex.add(*f.lexicon.find("jump_ship"));
    lex.add(make_entry("kick_the_bucket", "kick the bucket", "t"));
    std::vector<std::string> missing;
    auto ps = patterns_from_parses(lex, f.pie_parses, &missing);
    EXPECT_EQ(ps.size(), 1u);
    EXPECT_EQ(missing, std::vector<std::string>{"kick_the_bucket"});
}
