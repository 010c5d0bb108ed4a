#pragma once

// Shared domain types: token and label sequences, ADU spans, DM slots,
// plus the tokenizer/detokenizer pair and BIO <-> span conversion.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace dmaug {

class TokenSequence {
 public:
  TokenSequence() = default;
  // Throws DataError if any token is empty.
  explicit TokenSequence(std::vector<std::string> tokens);
  TokenSequence(std::initializer_list<std::string> tokens);

  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }
  auto begin() const noexcept { return tokens_.begin(); }
  auto end() const noexcept { return tokens_.end(); }

  TokenSequence slice(std::size_t from, std::size_t to) const;

  friend bool operator==(const TokenSequence&, const TokenSequence&) = default;

 private:
  std::vector<std::string> tokens_;
};

// BIO tags over {O} U {B,I} x T, stored as text ("O", "B-Claim", ...).
class LabelSequence {
 public:
  LabelSequence() = default;
  explicit LabelSequence(std::vector<std::string> labels) : labels_(std::move(labels)) {}
  LabelSequence(std::initializer_list<std::string> labels) : labels_(labels) {}

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }
  const std::string& operator[](std::size_t i) const { return labels_[i]; }
  auto begin() const noexcept { return labels_.begin(); }
  auto end() const noexcept { return labels_.end(); }

  friend bool operator==(const LabelSequence&, const LabelSequence&) = default;

 private:
  std::vector<std::string> labels_;
};

struct AduSpan {
  std::size_t start = 0;  // inclusive
  std::size_t end = 0;    // exclusive
  std::string label;

  friend bool operator==(const AduSpan&, const AduSpan&) = default;
};

struct CorpusSchema {
  std::string name;
  std::vector<std::string> adu_labels;

  bool has_label(std::string_view label) const;

  static CorpusSchema pec();
  static CorpusSchema mtx();
  static CorpusSchema hotel();
  static CorpusSchema artificial();
  // Throws DataError for unknown names.
  static CorpusSchema by_name(std::string_view name);
};

// Empty text means the ADU has no explicit DM.
struct DmSlot {
  std::size_t adu_index = 0;
  std::string text;

  friend bool operator==(const DmSlot&, const DmSlot&) = default;
};

// Tag helpers. "B-Claim" -> prefix 'B', type "Claim"; "O" -> 'O', "".
char bio_prefix(std::string_view tag);
std::string bio_type(std::string_view tag);

TokenSequence tokenize(std::string_view text);
std::string detokenize(const TokenSequence& seq);

// Throws InvalidSpanError naming the offending span.
LabelSequence spans_to_bio(const std::vector<AduSpan>& spans, std::size_t length);

enum class BioMode { tolerant, strict };

// Tolerant mode promotes an I-tag that does not continue a same-type span to B.
// Strict mode throws InvalidBioError with the position instead.
std::vector<AduSpan> bio_to_spans(const LabelSequence& labels, BioMode mode = BioMode::tolerant);

// Rewrites invalid I-tags as B-tags.
LabelSequence repair_bio(const LabelSequence& labels);

bool is_valid_bio(const LabelSequence& labels);

// Token indices where sentences start, using terminal punctuation only.
// Always begins with 0 for a non-empty sequence.
std::vector<std::size_t> sentence_starts(const TokenSequence& seq);

// Lowercases, strips surrounding whitespace and one trailing comma.
std::string normalize_dm(std::string_view dm);

}  // namespace dmaug
