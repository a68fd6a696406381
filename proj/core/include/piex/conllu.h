#ifndef PIEX_CONLLU_H_
#define PIEX_CONLLU_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "piex/sentence.h"

namespace piex {

// Reads 10-column CoNLL-U. Multiword ranges ("3-4") and empty nodes ("5.1")
// are skipped. "# newdoc id = X" sets the document id for the following
// sentences, "# sent_id = X" the sentence id; sentences without one are
// numbered from 1 within their document.
std::vector<DepSentence> read_conllu(std::istream& in, const std::string& label = "<conllu>");
std::vector<DepSentence> load_conllu(const std::filesystem::path& path);

// Throws InputError naming the sentence when the tree is malformed.
void validate_tree(const DepSentence& sentence);

void write_conllu(const std::vector<DepSentence>& sentences, std::ostream& out);

}  // namespace piex

#endif  // PIEX_CONLLU_H_
