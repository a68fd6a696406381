#ifndef PIEX_TESTS_FIXTURE_H_
#define PIEX_TESTS_FIXTURE_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "piex/lexicon.h"
#include "piex/parse_match.h"
#include "piex/sentence.h"

namespace piex::support {

std::filesystem::path fixture_dir();
std::filesystem::path fixture(const std::string& relative);

// The hand-built fixture corpus with its lexicon and isolated parses.
struct Fixture {
    Lexicon lexicon{"fixture"};
    std::vector<DepSentence> corpus;
    std::vector<DepSentence> pie_parses;
    std::map<std::string, PiePattern> isolated;
};

const Fixture& shared_fixture();

const DepSentence& sentence(const Fixture& f, const std::string& doc, const std::string& sent);

// One-sentence corpus from the compact "form/UPOS/head/deprel" notation
// used by the fixture generator; a lemma may follow the form as form=lemma.
DepSentence parse_compact(const std::string& spec, const std::string& sent_id = "1");

}  // namespace piex::support

#endif  // PIEX_TESTS_FIXTURE_H_
