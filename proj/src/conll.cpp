#include "dmaug/conll.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

namespace dmaug {

std::vector<LabeledSequence> read_conll(std::istream& in) {
  std::vector<LabeledSequence> corpus;
  std::vector<std::string> tokens;
  std::vector<std::string> labels;
  auto finish = [&] {
    if (tokens.empty()) return;
    corpus.push_back({TokenSequence(std::move(tokens)), LabelSequence(std::move(labels))});
    tokens.clear();
    labels.clear();
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      finish();
      continue;
    }
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos || tab == 0) {
      throw DataError("CoNLL line " + std::to_string(line_no) + ": expected 'token<TAB>tag'");
    }
    std::string tag = text::trim(std::string_view(line).substr(tab + 1));
    bio_prefix(tag);  // validates the tag shape
    tokens.push_back(text::nfc(std::string_view(line).substr(0, tab)));
    labels.push_back(std::move(tag));
  }
  finish();
  return corpus;
}

std::vector<LabeledSequence> read_conll(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_conll(in);
}

void write_conll(std::ostream& out, const std::vector<LabeledSequence>& corpus) {
  bool first = true;
  for (const auto& seq : corpus) {
    if (seq.tokens.size() != seq.labels.size()) throw DataError("token/label length mismatch in CoNLL output");
    if (!first) out << '\n';
    first = false;
    for (std::size_t i = 0; i < seq.tokens.size(); ++i) out << seq.tokens[i] << '\t' << seq.labels[i] << '\n';
  }
}

void write_conll(const std::filesystem::path& path, const std::vector<LabeledSequence>& corpus) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_conll(out, corpus);
}

}  // namespace dmaug
