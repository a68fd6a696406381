#include "fixture.h"

#include <sstream>
#include <stdexcept>

#include "piex/conllu.h"
#include "piex/text.h"

namespace piex::support {

std::filesystem::path fixture_dir() { return PIEX_FIXTURE_DIR; }

std::filesystem::path fixture(const std::string& relative) { return fixture_dir() / relative; }

const Fixture& shared_fixture() {
    static const Fixture f = [] {
        Fixture x;
        x.lexicon = load_lexicon(fixture("lexicon.tsv"), "fixture");
        x.corpus = load_conllu(fixture("corpus.conllu"));
        x.pie_parses = load_conllu(fixture("pie_parses.conllu"));
        x.isolated = patterns_from_parses(x.lexicon, x.pie_parses);
        return x;
    }();
    return f;
}

const DepSentence& sentence(const Fixture& f, const std::string& doc, const std::string& sent) {
    for (const auto& s : f.corpus) {
        if (s.document_id == doc && s.sentence_id == sent) return s;
    }
    throw std::out_of_range("no fixture sentence " + doc + "/" + sent);
}

DepSentence parse_compact(const std::string& spec, const std::string& sent_id) {
    std::ostringstream conllu;
    conllu << "# sent_id = " << sent_id << '\n';
    int id = 0;
    for (const auto& tok : split_whitespace(spec)) {
        ++id;
        auto r1 = tok.rfind('/');
        auto r2 = tok.rfind('/', r1 - 1);
        auto r3 = tok.rfind('/', r2 - 1);
        std::string left = tok.substr(0, r3);
        std::string pos = tok.substr(r3 + 1, r2 - r3 - 1);
        std::string head = tok.substr(r2 + 1, r1 - r2 - 1);
        std::string rel = tok.substr(r1 + 1);
        std::string form = left, lemma = to_lower(left);
        auto eq = left.find('=');
        if (eq != std::string::npos && eq > 0) {
            form = left.substr(0, eq);
            lemma = left.substr(eq + 1);
        }
        std::string upos = pos, xpos = "_";
        auto dot = pos.find('.');
        if (dot != std::string::npos) {
            upos = pos.substr(0, dot);
            xpos = pos.substr(dot + 1);
        }
        std::string feats = xpos == "VBN" ? "VerbForm=Part" : "_";
        conllu << id << '\t' << form << '\t' << lemma << '\t' << upos << '\t' << xpos << '\t' << feats << '\t'
               << head << '\t' << rel << "\t_\t_\n";
    }
    conllu << '\n';
    std::istringstream in(conllu.str());
    auto parsed = read_conllu(in, "<compact>");
    if (parsed.size() != 1) throw std::runtime_error("compact spec did not yield one sentence");
    return parsed.front();
}

}  // namespace piex::support
