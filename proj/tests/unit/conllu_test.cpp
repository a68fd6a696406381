#include <gtest/gtest.h>

#include <sstream>

#include "fixture.h"
#include "piex/conllu.h"
#include "piex/error.h"

using namespace piex;

namespace {
std::vector<DepSentence> read(const std::string& text) {
    std::istringstream in(text);
    return read_conllu(in, "t");
}
}  // namespace

TEST(Conllu, EmptyFile) { EXPECT_TRUE(read("").empty()); }

TEST(Conllu, JumpShipParse) {
    auto s = read("1\tjump\tjump\tVERB\tVB\t_\t2\tcompound\t_\t_\n2\tship\tship\tNOUN\tNN\t_\t0\troot\t_\t_\n\n");
    ASSERT_EQ(s.size(), 1u);
    ASSERT_EQ(s[0].tokens.size(), 2u);
    EXPECT_EQ(s[0].token(1).head, 2);
    EXPECT_EQ(s[0].token(1).deprel, "compound");
    EXPECT_EQ(s[0].children(2), std::vector<int>{1});
}

TEST(Conllu, ShortRowReportsLine) {
    try {
        read("# sent_id = 1\n1\ta\ta\tDET\tDT\t_\t2\tdet\t_\t_\n2\tb\tb\tNOUN\tNN\t_\t0\troot\t_\n\n");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Conllu, SkipsRangesAndEmptyNodes) {
    auto s = read("1-2\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n1\tdo\tdo\tAUX\tVB\t_\t0\troot\t_\t_\n"
                  "2\tn't\tnot\tPART\tRB\t_\t1\tneg\t_\t_\n2.1\tx\tx\tX\t_\t_\t_\t_\t_\t_\n\n");
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].tokens.size(), 2u);
}

TEST(Conllu, DocumentsAndIds) {
    auto s = read("# newdoc id = A\n1\tx\t_\tX\t_\t_\t0\troot\t_\t_\n\n1\ty\t_\tX\t_\t_\t0\troot\t_\t_\n\n"
                  "# newdoc id = B\n# sent_id = q\n1\tz\t_\tX\t_\t_\t0\troot\t_\t_\n\n");
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0].document_id, "A");
    EXPECT_EQ(s[1].sentence_id, "2");
    EXPECT_EQ(s[2].document_id, "B");
    EXPECT_EQ(s[2].sentence_id, "q");
    EXPECT_EQ(s[0].token(1).lemma, "x");
}

TEST(Conllu, TreeErrors) {
    EXPECT_THROW(read("1\ta\ta\tX\t_\t_\t1\troot\t_\t_\n\n"), InputError);
    EXPECT_THROW(read("1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n\n"), InputError);
    EXPECT_THROW(read("1\ta\ta\tX\t_\t_\t2\tx\t_\t_\n2\tb\tb\tX\t_\t_\t1\tx\t_\t_\n\n"), InputError);
    EXPECT_THROW(read("1\ta\ta\tX\t_\t_\t5\tx\t_\t_\n\n"), InputError);
}

TEST(Conllu, RoundTripFixtures) {
    for (const char* f : {"corpus.conllu", "pie_parses.conllu", "examples/parses.conllu"}) {
        auto a = load_conllu(support::fixture(f));
        std::ostringstream out;
        write_conllu(a, out);
        EXPECT_EQ(read(out.str()), a) << f;
    }
    EXPECT_GE(support::shared_fixture().corpus.size(), 50u);
}
