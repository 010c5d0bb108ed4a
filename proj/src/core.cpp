#include "dmaug/core.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <numeric>

#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

namespace dmaug {

TokenSequence::TokenSequence(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw DataError("empty token at position " + std::to_string(i));
  }
}

TokenSequence::TokenSequence(std::initializer_list<std::string> tokens)
    : TokenSequence(std::vector<std::string>(tokens)) {}

TokenSequence TokenSequence::slice(std::size_t from, std::size_t to) const {
  to = std::min(to, tokens_.size());
  from = std::min(from, to);
  return TokenSequence(std::vector<std::string>(tokens_.begin() + static_cast<std::ptrdiff_t>(from),
                                                tokens_.begin() + static_cast<std::ptrdiff_t>(to)));
}

bool CorpusSchema::has_label(std::string_view label) const {
  return std::find(adu_labels.begin(), adu_labels.end(), label) != adu_labels.end();
}

CorpusSchema CorpusSchema::pec() { return {"pec", {"Premise", "Claim", "MajorClaim"}}; }
CorpusSchema CorpusSchema::mtx() { return {"mtx", {"Premise", "Claim"}}; }
CorpusSchema CorpusSchema::hotel() {
  return {"hotel", {"Background", "Claim", "ImplicitPremise", "MajorClaim", "Premise", "Recommendation"}};
}
CorpusSchema CorpusSchema::artificial() { return {"artificial", {"Claim", "Support", "Attack"}}; }

CorpusSchema CorpusSchema::by_name(std::string_view name) {
  const std::string key = text::fold(name);
  if (key == "pec") return pec();
  if (key == "mtx") return mtx();
  if (key == "hotel") return hotel();
  if (key == "artificial") return artificial();
  throw DataError("unknown corpus schema: " + std::string(name));
}

char bio_prefix(std::string_view tag) {
  if (tag == "O") return 'O';
  if (tag.size() > 2 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') return tag[0];
  throw DataError("malformed BIO tag: '" + std::string(tag) + "'");
}

std::string bio_type(std::string_view tag) {
  if (bio_prefix(tag) == 'O') return {};
  return std::string(tag.substr(2));
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

struct CodePoint {
  UChar32 value;
  std::size_t begin;
  std::size_t end;
};

std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const int32_t length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) c = 0xFFFD;
    out.push_back({c, static_cast<std::size_t>(start), static_cast<std::size_t>(i)});
  }
  return out;
}

bool is_apostrophe(UChar32 c) { return c == '\'' || c == 0x2019; }

bool is_word_char(UChar32 c) {
  if (is_apostrophe(c)) return false;
  const int8_t type = u_charType(c);
  const bool symbol = type == U_MATH_SYMBOL || type == U_CURRENCY_SYMBOL || type == U_MODIFIER_SYMBOL ||
                      type == U_OTHER_SYMBOL;
  return !(u_ispunct(c) || symbol);
}

constexpr std::array<std::string_view, 7> kClitics = {"s", "t", "re", "ll", "ve", "m", "d"};

bool is_clitic_tail(std::string_view letters) {
  const std::string folded = text::fold(letters);
  return std::find(kClitics.begin(), kClitics.end(), folded) != kClitics.end();
}

bool is_placeholder(std::string_view chunk) {
  if (chunk.size() < 3 || chunk.front() != '<' || chunk.back() != '>') return false;
  return std::all_of(chunk.begin() + 1, chunk.end() - 1, [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

void tokenize_chunk(std::string_view chunk, std::vector<std::string>& out) {
  if (is_placeholder(chunk)) {
    out.emplace_back(chunk);
    return;
  }
  const auto cps = decode(chunk);
  const std::size_t n = cps.size();
  auto word_at = [&](std::size_t k) { return k < n && is_word_char(cps[k].value); };
  auto digit_at = [&](std::size_t k) { return k < n && u_isdigit(cps[k].value); };
  auto letter_at = [&](std::size_t k) { return k < n && u_isalpha(cps[k].value); };
  auto bytes = [&](std::size_t from, std::size_t to) {
    return std::string(chunk.substr(cps[from].begin, cps[to - 1].end - cps[from].begin));
  };

  std::size_t word_begin = 0;
  bool in_word = false;
  auto flush = [&](std::size_t upto) {
    if (in_word && upto > word_begin) out.push_back(bytes(word_begin, upto));
    in_word = false;
  };

  std::size_t i = 0;
  while (i < n) {
    const UChar32 c = cps[i].value;
    if (is_word_char(c)) {
      if (!in_word) {
        word_begin = i;
        in_word = true;
      }
      ++i;
      continue;
    }
    const bool prev_word = in_word && i > word_begin;
    // Connectors kept inside words: 3.5 1,000 10:30 U.S e-mail and/or AT&T
    if (prev_word) {
      const bool between_digits = i > 0 && digit_at(i - 1) && digit_at(i + 1);
      if ((c == '.' || c == ',' || c == ':') && between_digits) {
        ++i;
        continue;
      }
      if (c == '.' && letter_at(i + 1) && letter_at(i - 1)) {
        ++i;
        continue;
      }
      if ((c == '-' || c == '/' || c == '&' || c == '@' || c == '_') && word_at(i + 1)) {
        ++i;
        continue;
      }
    }
    if (is_apostrophe(c)) {
      std::size_t j = i + 1;
      while (j < n && letter_at(j)) ++j;
      const bool boundary = j == n || !is_word_char(cps[j].value);
      if (j > i + 1 && boundary && is_clitic_tail(bytes(i + 1, j))) {
        flush(i);
        out.push_back(bytes(i, j));
        i = j;
        continue;
      }
      // O'Neil, rock'n'roll: apostrophe between letters stays in the word.
      if (prev_word && letter_at(i + 1)) {
        ++i;
        continue;
      }
    }
    flush(i);
    if (c == '.') {
      std::size_t j = i;
      while (j < n && cps[j].value == '.') ++j;
      out.push_back(bytes(i, j));
      i = j;
      continue;
    }
    out.push_back(bytes(i, i + 1));
    ++i;
  }
  flush(n);
}

bool is_dot_run(std::string_view t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c == '.'; });
}

bool is_opening(std::string_view t) {
  static constexpr std::array<std::string_view, 8> kOpen = {"(", "[", "{", "\xE2\x80\x9C", "\xE2\x80\x98",
                                                            "\xC2\xAB", "\xC2\xBF", "\xC2\xA1"};
  return std::find(kOpen.begin(), kOpen.end(), t) != kOpen.end();
}

bool is_closing(std::string_view t) {
  static constexpr std::array<std::string_view, 15> kClose = {
      ",", ";", ":", "!", "?", ")", "]", "}", "%", "'", "\xE2\x80\x9D", "\xE2\x80\x99", "\xC2\xBB",
      "\xE2\x80\xA6", "\xE2\x80\xA6"};
  if (is_dot_run(t)) return true;
  if (std::find(kClose.begin(), kClose.end(), t) != kClose.end()) return true;
  // clitics: 's 't 're ...
  std::size_t skip = 0;
  if (t.rfind("'", 0) == 0) skip = 1;
  else if (t.rfind("\xE2\x80\x99", 0) == 0) skip = 3;
  return skip > 0 && t.size() > skip && is_clitic_tail(t.substr(skip));
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) || c == '\t' || c == '\n' || c == '\r'; }

}  // namespace

TokenSequence tokenize(std::string_view raw) {
  const std::string normalized = text::nfc(raw);
  const std::string_view s = normalized;
  std::vector<std::string> tokens;
  const auto cps = decode(s);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i].value)) ++i;
    if (i == cps.size()) break;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j].value)) ++j;
    tokenize_chunk(s.substr(cps[i].begin, cps[j - 1].end - cps[i].begin), tokens);
    i = j;
  }
  return TokenSequence(std::move(tokens));
}

std::string detokenize(const TokenSequence& seq) {
  std::string out;
  bool quote_open = false;
  bool prev_opening = false;
  std::string_view prev;
  for (const auto& token : seq) {
    bool opening = is_opening(token);
    bool closing = !opening && is_closing(token);
    if (token == "\"") {
      opening = !quote_open;
      closing = quote_open;
      quote_open = !quote_open;
    }
    if (!out.empty()) {
      const bool glue = (closing && !(is_dot_run(prev) && is_dot_run(token))) || prev_opening;
      if (!glue) out.push_back(' ');
    }
    out += token;
    prev_opening = opening;
    prev = token;
  }
  return out;
}

// ---------------------------------------------------------------------------
// BIO

LabelSequence spans_to_bio(const std::vector<AduSpan>& spans, std::size_t length) {
  std::vector<std::string> labels(length, "O");
  std::vector<std::size_t> order(spans.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spans[a].start < spans[b].start; });
  std::size_t covered_until = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t idx = order[k];
    const auto& span = spans[idx];
    if (span.start >= span.end || span.end > length) {
      throw InvalidSpanError(idx, "span " + std::to_string(idx) + " [" + std::to_string(span.start) + "," +
                                      std::to_string(span.end) + ") is out of range for length " +
                                      std::to_string(length));
    }
    if (span.label.empty()) throw InvalidSpanError(idx, "span " + std::to_string(idx) + " has an empty label");
    if (k > 0 && span.start < covered_until) {
      throw InvalidSpanError(idx, "span " + std::to_string(idx) + " [" + std::to_string(span.start) + "," +
                                      std::to_string(span.end) + ") overlaps a preceding span");
    }
    labels[span.start] = "B-" + span.label;
    for (std::size_t t = span.start + 1; t < span.end; ++t) labels[t] = "I-" + span.label;
    covered_until = span.end;
  }
  return LabelSequence(std::move(labels));
}

std::vector<AduSpan> bio_to_spans(const LabelSequence& labels, BioMode mode) {
  std::vector<AduSpan> spans;
  bool open = false;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const char prefix = bio_prefix(labels[i]);
    if (prefix == 'O') {
      open = false;
      continue;
    }
    std::string type = bio_type(labels[i]);
    const bool continues = prefix == 'I' && open && spans.back().label == type;
    if (continues) {
      spans.back().end = i + 1;
      continue;
    }
    if (prefix == 'I' && mode == BioMode::strict) {
      throw InvalidBioError(i, "invalid BIO transition at position " + std::to_string(i) + ": '" + labels[i] + "'");
    }
    spans.push_back({i, i + 1, std::move(type)});
    open = true;
  }
  return spans;
}

LabelSequence repair_bio(const LabelSequence& labels) {
  return spans_to_bio(bio_to_spans(labels, BioMode::tolerant), labels.size());
}

bool is_valid_bio(const LabelSequence& labels) {
  try {
    bio_to_spans(labels, BioMode::strict);
    return true;
  } catch (const DataError&) {
    return false;
  }
}

std::vector<std::size_t> sentence_starts(const TokenSequence& seq) {
  std::vector<std::size_t> starts;
  if (seq.empty()) return starts;
  starts.push_back(0);
  bool quote_open = false;  // straight quotes alternate open/close
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] == "\"") quote_open = !quote_open;
    if (!text::is_terminal(seq[i])) continue;
    std::size_t next = i + 1;
    while (next < seq.size()) {
      const std::string& t = seq[next];
      if (t == "\"" && quote_open) {
        quote_open = false;
      } else if (!(t == ")" || t == "]" || t == "\xE2\x80\x9D" || text::is_terminal(t))) {
        break;
      }
      ++next;
    }
    if (next < seq.size() && next != starts.back()) starts.push_back(next);
    i = next - 1;
  }
  return starts;
}

std::string normalize_dm(std::string_view dm) {
  std::string out = text::trim(dm);
  if (!out.empty() && out.back() == ',') out = text::trim(std::string_view(out).substr(0, out.size() - 1));
  return text::fold(out);
}

}  // namespace dmaug
