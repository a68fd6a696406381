#include <gtest/gtest.h>

#include "piex/text.h"

using namespace piex;

TEST(Text, SplitKeepsEmptyFields) {
    EXPECT_EQ(split("a\t\tb", '\t'), (std::vector<std::string>{"a", "", "b"}));
    EXPECT_EQ(split_whitespace("  a \t b  "), (std::vector<std::string>{"a", "b"}));
}

TEST(Text, NaturalOrder) {
    EXPECT_LT(natural_compare("s2", "s10"), 0);
    EXPECT_GT(natural_compare("d10", "d9"), 0);
    EXPECT_EQ(natural_compare("s3", "s3"), 0);
    EXPECT_LT(natural_compare("a", "b"), 0);
}

TEST(Text, PercentRoundsHalfUp) {
    EXPECT_EQ(format_percent(80.0), "80.00");
    EXPECT_EQ(format_percent(80.125), "80.13");
    EXPECT_EQ(format_percent(100.0 * 2 / 3), "66.67");
    EXPECT_EQ(format_percent(0.005), "0.01");
    EXPECT_EQ(format_percent(0), "0.00");
}

TEST(Text, Apostrophes) {
    EXPECT_EQ(normalize_apostrophes("one\xE2\x80\x99s"), "one's");
    EXPECT_EQ(to_lower("AbC\xC3\x89"), "abc\xC3\x89");
}

TEST(Text, Utf8Decoding) {
    EXPECT_EQ(decode_utf8("a\xE2\x80\x94").size(), 2u);
    EXPECT_TRUE(is_punctuation(",;"));
    EXPECT_FALSE(is_punctuation("a."));
    EXPECT_EQ(normalize_space("  a   b "), "a b");
}
