#include <gtest/gtest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <fstream>
#include <sstream>

#include "fixture.h"
#include "piex/error.h"
#include "piex/evaluation.h"
#include "piex/text.h"

using namespace piex;

namespace {
std::vector<Extraction> fixture_extractions() { return load_extractions(support::fixture("eval/extractions.tsv")); }
std::vector<GoldRecord> fixture_gold() { return load_gold(support::fixture("eval/gold.tsv")); }

std::vector<Extraction> gold_as_extractions(const std::vector<GoldRecord>& gold) {
    std::vector<Extraction> out;
    for (const auto& g : gold) {
        if (g.is_pie) out.push_back({g.entry_id, g.document_id, g.sentence_id, 1, 1, "gold"});
    }
    return out;
}
}  // namespace

TEST(Score, Fixture) {
    auto r = score(fixture_extractions(), fixture_gold());
    EXPECT_EQ(r.overall.true_positives, 8u);
    EXPECT_EQ(r.overall.false_positives, 2u);
    EXPECT_EQ(r.overall.false_negatives, 2u);
    EXPECT_EQ(format_percent(r.overall.precision), "80.00");
    EXPECT_EQ(format_percent(r.overall.f1), "80.00");
    ASSERT_EQ(r.per_type.size(), 3u);
    EXPECT_EQ(r.per_type[0].entry_id, "a");
    EXPECT_EQ(per_type_report(fixture_extractions(), fixture_gold(), 2).size(), 2u);
}

TEST(Score, IdenticalIsPerfect) {
    auto gold = fixture_gold();
    auto r = score(gold_as_extractions(gold), gold);
    EXPECT_DOUBLE_EQ(r.overall.precision, 100.0);
    EXPECT_DOUBLE_EQ(r.overall.recall, 100.0);
    EXPECT_DOUBLE_EQ(r.overall.f1, 100.0);
}

TEST(Score, EmptyCases) {
    auto z = make_scores(0, 0, 4);
    EXPECT_DOUBLE_EQ(z.precision, 0);
    EXPECT_DOUBLE_EQ(z.recall, 0);
    EXPECT_DOUBLE_EQ(z.f1, 0);
    std::vector<GoldRecord> gold{{"d", "1", "x", true, Sense::kIdiomatic}};
    auto r = score({}, gold);
    ASSERT_EQ(r.per_type.size(), 1u);
    EXPECT_DOUBLE_EQ(r.per_type[0].scores.f1, 0);
    // Only types absent from both sides are left out.
    auto extra = score({{"y", "d", "1", 1, 1, "m"}}, gold);
    ASSERT_EQ(extra.per_type.size(), 2u);
    EXPECT_EQ(extra.per_type[1].entry_id, "y");
    EXPECT_EQ(extra.per_type[1].gold_count, 0u);
    EXPECT_EQ(extra.overall.false_positives, 1u);
}

TEST(Score, InvariantUnderOrderAndDuplicates) {
    auto ext = fixture_extractions();
    auto gold = fixture_gold();
    std::ostringstream want;
    write_report_tsv(score(ext, gold), want);
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        auto e = ext;
        auto g = gold;
        e.insert(e.end(), ext.begin(), ext.begin() + static_cast<long>(rng() % ext.size()));
        std::shuffle(e.begin(), e.end(), rng);
        std::shuffle(g.begin(), g.end(), rng);
        std::ostringstream got;
        write_report_tsv(score(e, g), got);
        EXPECT_EQ(got.str(), want.str());
    }
}

TEST(Union, Properties) {
    auto ext = fixture_extractions();
    auto once = combine_union({ext});
    EXPECT_EQ(combine_union({ext, ext}), once);
    std::vector<Extraction> a(ext.begin(), ext.begin() + 3), b(ext.begin() + 3, ext.begin() + 7);
    for (auto& x : b) x.method = "other";
    auto u = combine_union({a, b});
    EXPECT_EQ(u.size(), 7u);
    Extraction shifted = a[0];
    shifted.first = 9;
    shifted.last = 9;
    shifted.method = "late";
    auto merged = combine_union({a, {shifted}});
    ASSERT_EQ(merged.size(), 3u);
    EXPECT_EQ(merged[0].first, a[0].first);
    EXPECT_EQ(merged[0].method, "fixture+late");
    auto r1 = score(ext, fixture_gold()).overall, r2 = score(combine_union({ext, a}), fixture_gold()).overall;
    EXPECT_GE(r2.recall, r1.recall);
}

TEST(Kappa, Values) {
    std::ifstream in(support::fixture("eval/kappa.tsv"));
    auto table = read_kappa_table(in);
    EXPECT_NEAR(fleiss_kappa(table), 1.0 / 3.0, 1e-9);
    auto renamed = table;
    for (auto& row : renamed) {
        for (auto& l : row) l = l == "y" ? "n" : "y";
    }
    EXPECT_NEAR(fleiss_kappa(renamed), fleiss_kappa(table), 1e-12);
    auto perm = table;
    for (auto& row : perm) std::reverse(row.begin(), row.end());
    std::reverse(perm.begin(), perm.end());
    EXPECT_NEAR(fleiss_kappa(perm), fleiss_kappa(table), 1e-12);
    EXPECT_DOUBLE_EQ(fleiss_kappa({{"y", "y"}, {"n", "n"}}), 1.0);
}

TEST(Kappa, Errors) {
    EXPECT_THROW(fleiss_kappa({}), InputError);
    EXPECT_THROW(fleiss_kappa({{"y"}}), InputError);
    EXPECT_THROW(fleiss_kappa({{"y", "n"}, {"y", "n", "n"}}), InputError);
    std::istringstream ragged("q1\ty\tn\nq2\ty\n");
    EXPECT_THROW(read_kappa_table(ragged), InputError);
}

TEST(Gold, Parsing) {
    std::istringstream dup("d\t1\tx\ty\ti\nd\t1\tx\ty\ti\nd\t2\tx\tn\t\n");
    auto g = read_gold(dup);
    ASSERT_EQ(g.size(), 2u);
    EXPECT_FALSE(g[1].sense.has_value());
    std::istringstream conflict("d\t1\tx\ty\ti\nd\t1\tx\tn\t\n");
    EXPECT_THROW(read_gold(conflict), InputError);
    std::istringstream bad_flag("d\t1\tx\tmaybe\ti\n");
    EXPECT_THROW(read_gold(bad_flag), InputError);
    std::istringstream short_row("d\t1\n");
    EXPECT_THROW(read_gold(short_row), InputError);
}

TEST(Report, Formats) {
    auto r = score(fixture_extractions(), fixture_gold());
    std::ostringstream tsv, table, js;
    write_report_tsv(r, tsv);
    write_report_table(r, table);
    write_report_json(r, js);
    EXPECT_NE(tsv.str().find("80.00"), std::string::npos);
    EXPECT_NE(table.str().find("80.00"), std::string::npos);
    auto doc = nlohmann::json::parse(js.str());
    EXPECT_TRUE(doc.is_object());
    EXPECT_NE(js.str().find("\"a\""), std::string::npos);
    EXPECT_NE(js.str().find("80.0"), std::string::npos);
}
