#pragma once

// Gold-DM extraction heuristics, explicit-DM removal with grammatical repair,
// and recovery of predicted DMs from a rewritten token sequence.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dmaug/core.hpp"

namespace dmaug {

// Case-insensitive, multi-word DM list with longest-match lookup.
class DmLexicon {
 public:
  DmLexicon() = default;
  explicit DmLexicon(const std::vector<std::string>& entries);

  void add(std::string_view entry);
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  bool contains(std::string_view dm) const;

  // Number of tokens of the longest entry matching seq at `from`; 0 if none.
  std::size_t longest_match(const TokenSequence& seq, std::size_t from, std::size_t limit) const;

  static DmLexicon read(std::istream& in);
  static DmLexicon read(const std::filesystem::path& path);

 private:
  // folded entry tokens, longest first
  std::vector<std::vector<std::string>> entries_;
};

struct AnnotatedParagraph {
  TokenSequence tokens;
  std::vector<AduSpan> adus;                 // sorted by start
  std::vector<std::size_t> sentence_bounds;  // sentence start indices, first is 0

  // Builds a paragraph with sentence bounds from terminal punctuation.
  static AnnotatedParagraph from(TokenSequence tokens, std::vector<AduSpan> adus);
  static AnnotatedParagraph from_bio(const TokenSequence& tokens, const LabelSequence& labels);

  LabelSequence labels() const { return spans_to_bio(adus, tokens.size()); }
  // Start of the sentence containing token i.
  std::size_t sentence_start_of(std::size_t i) const;
  // One past the last token of the sentence containing token i.
  std::size_t sentence_end_of(std::size_t i) const;
};

// Punctuation marks that, right before a removed DM, make comma substitution
// unnecessary: , ; : — ( "
bool is_clause_punct(std::string_view token);

// Left-context heuristic: the DM is whatever lies between the later of the
// enclosing sentence start and the previous ADU end, and the ADU start.
// Punctuation-only gaps give an empty slot; surrounding punctuation is trimmed.
std::vector<DmSlot> gold_dms_left_context(const AnnotatedParagraph& p);

// Prefix heuristic: an ADU that begins with a lexicon entry (longest match)
// loses that prefix, which becomes its DM. Throws InvalidSpanError when an ADU
// would become empty.
std::pair<std::vector<AduSpan>, std::vector<DmSlot>> gold_dms_prefix_split(const AnnotatedParagraph& p,
                                                                           const DmLexicon& lex);
// Same heuristic over bare ADU texts: returns (trimmed ADU texts, slots).
std::pair<std::vector<std::string>, std::vector<DmSlot>> gold_dms_prefix_split(
    const std::vector<std::string>& adu_texts, const DmLexicon& lex);

// Token range [first, second) of the DM in slot `slot` inside p, or an empty
// range at the ADU start when the slot is empty or cannot be located.
std::pair<std::size_t, std::size_t> locate_dm(const AnnotatedParagraph& p, const DmSlot& slot);

struct RemovalResult {
  TokenSequence tokens;
  std::vector<AduSpan> adus;
};

// Deletes every non-empty DM (with the punctuation between it and its ADU).
// Mid-sentence DMs not preceded by clause punctuation become a comma;
// sentence-initial removal uppercases the following content.
RemovalResult remove_explicit_dms(const AnnotatedParagraph& p, const std::vector<DmSlot>& slots);

// Matching blocks of two token sequences (case-insensitive), difflib-style:
// recursive longest common block, junk-free.
struct MatchBlock {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
  friend bool operator==(const MatchBlock&, const MatchBlock&) = default;
};
std::vector<MatchBlock> matching_blocks(const TokenSequence& a, const TokenSequence& b);

inline constexpr std::size_t kDiffWindow = 3;

// One slot per candidate position: text inserted by `output` in front of that
// position (within `window` tokens of the aligned gap), edge punctuation
// stripped. Insertions far from any candidate are discarded.
std::vector<DmSlot> diff_predicted_dms(const TokenSequence& input, const TokenSequence& output,
                                       const std::vector<std::size_t>& candidate_positions,
                                       std::size_t window = kDiffWindow);

}  // namespace dmaug
