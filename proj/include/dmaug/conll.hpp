#pragma once

// CoNLL-style corpora: one "token<TAB>tag" per line, blank line between
// sequences, UTF-8.

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "dmaug/core.hpp"

namespace dmaug {

struct LabeledSequence {
  TokenSequence tokens;
  LabelSequence labels;
};

std::vector<LabeledSequence> read_conll(std::istream& in);
std::vector<LabeledSequence> read_conll(const std::filesystem::path& path);

void write_conll(std::ostream& out, const std::vector<LabeledSequence>& corpus);
void write_conll(const std::filesystem::path& path, const std::vector<LabeledSequence>& corpus);

}  // namespace dmaug
