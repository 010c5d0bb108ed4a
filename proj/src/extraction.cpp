#include "dmaug/extraction.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <unordered_map>

#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

namespace dmaug {

// ---------------------------------------------------------------------------
// DmLexicon

namespace {

std::vector<std::string> folded_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(s)) out.push_back(text::fold(t));
  return out;
}

}  // namespace

DmLexicon::DmLexicon(const std::vector<std::string>& entries) {
  for (const auto& e : entries) add(e);
}

void DmLexicon::add(std::string_view entry) {
  auto toks = folded_tokens(entry);
  if (toks.empty()) return;
  if (std::find(entries_.begin(), entries_.end(), toks) != entries_.end()) return;
  const auto pos = std::find_if(entries_.begin(), entries_.end(),
                                [&](const auto& e) { return e.size() < toks.size(); });
  entries_.insert(pos, std::move(toks));
}

bool DmLexicon::contains(std::string_view dm) const {
  const auto toks = folded_tokens(dm);
  return std::find(entries_.begin(), entries_.end(), toks) != entries_.end();
}

std::size_t DmLexicon::longest_match(const TokenSequence& seq, std::size_t from, std::size_t limit) const {
  limit = std::min(limit, seq.size());
  for (const auto& entry : entries_) {
    if (from + entry.size() > limit) continue;
    bool ok = true;
    for (std::size_t k = 0; k < entry.size() && ok; ++k) ok = text::fold(seq[from + k]) == entry[k];
    if (ok) return entry.size();
  }
  return 0;
}

DmLexicon DmLexicon::read(std::istream& in) {
  DmLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string entry = text::trim(line);
    if (!entry.empty()) lex.add(text::nfc(entry));
  }
  return lex;
}

DmLexicon DmLexicon::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read(in);
}

// ---------------------------------------------------------------------------
// AnnotatedParagraph

AnnotatedParagraph AnnotatedParagraph::from(TokenSequence tokens, std::vector<AduSpan> adus) {
  std::sort(adus.begin(), adus.end(), [](const AduSpan& a, const AduSpan& b) { return a.start < b.start; });
  spans_to_bio(adus, tokens.size());  // validates range and overlap
  AnnotatedParagraph p;
  p.sentence_bounds = sentence_starts(tokens);
  p.tokens = std::move(tokens);
  p.adus = std::move(adus);
  return p;
}

AnnotatedParagraph AnnotatedParagraph::from_bio(const TokenSequence& tokens, const LabelSequence& labels) {
  if (tokens.size() != labels.size()) throw DataError("token and label sequences differ in length");
  return from(tokens, bio_to_spans(labels, BioMode::tolerant));
}

std::size_t AnnotatedParagraph::sentence_start_of(std::size_t i) const {
  auto it = std::upper_bound(sentence_bounds.begin(), sentence_bounds.end(), i);
  if (it == sentence_bounds.begin()) return 0;
  return *(it - 1);
}

std::size_t AnnotatedParagraph::sentence_end_of(std::size_t i) const {
  auto it = std::upper_bound(sentence_bounds.begin(), sentence_bounds.end(), i);
  return it == sentence_bounds.end() ? tokens.size() : *it;
}

bool is_clause_punct(std::string_view token) {
  static constexpr std::array<std::string_view, 10> kMarks = {
      ",", ";", ":", "\xE2\x80\x94", "\xE2\x80\x93", "-", "--", "(", "\"", "\xE2\x80\x9C"};
  return std::find(kMarks.begin(), kMarks.end(), token) != kMarks.end();
}

// ---------------------------------------------------------------------------
// Gold DM heuristics

namespace {

// [lo, hi) before ADU k that may hold its DM.
std::pair<std::size_t, std::size_t> left_window(const AnnotatedParagraph& p, std::size_t k) {
  const std::size_t hi = p.adus[k].start;
  std::size_t lo = p.sentence_start_of(hi);
  if (k > 0) lo = std::max(lo, p.adus[k - 1].end);
  return {std::min(lo, hi), hi};
}

std::pair<std::size_t, std::size_t> trim_punct(const TokenSequence& t, std::size_t lo, std::size_t hi) {
  while (lo < hi && text::is_punct(t[lo])) ++lo;
  while (hi > lo && text::is_punct(t[hi - 1])) --hi;
  return {lo, hi};
}

}  // namespace

std::vector<DmSlot> gold_dms_left_context(const AnnotatedParagraph& p) {
  std::vector<DmSlot> slots;
  slots.reserve(p.adus.size());
  for (std::size_t k = 0; k < p.adus.size(); ++k) {
    const auto [lo, hi] = left_window(p, k);
    const auto [a, b] = trim_punct(p.tokens, lo, hi);
    slots.push_back({k, a < b ? detokenize(p.tokens.slice(a, b)) : std::string()});
  }
  return slots;
}

std::pair<std::vector<AduSpan>, std::vector<DmSlot>> gold_dms_prefix_split(const AnnotatedParagraph& p,
                                                                           const DmLexicon& lex) {
  if (lex.empty()) throw DataError("DM lexicon is empty");
  std::vector<AduSpan> adus;
  std::vector<DmSlot> slots;
  for (std::size_t k = 0; k < p.adus.size(); ++k) {
    AduSpan adu = p.adus[k];
    const std::size_t m = lex.longest_match(p.tokens, adu.start, adu.end);
    std::string dm;
    if (m > 0) {
      dm = detokenize(p.tokens.slice(adu.start, adu.start + m));
      adu.start += m;
      while (adu.start < adu.end && text::is_punct(p.tokens[adu.start])) ++adu.start;
      if (adu.start >= adu.end) {
        throw InvalidSpanError(k, "ADU " + std::to_string(k) + " is empty after removing its DM '" + dm + "'");
      }
    }
    adus.push_back(std::move(adu));
    slots.push_back({k, std::move(dm)});
  }
  return {std::move(adus), std::move(slots)};
}

std::pair<std::vector<std::string>, std::vector<DmSlot>> gold_dms_prefix_split(
    const std::vector<std::string>& adu_texts, const DmLexicon& lex) {
  if (lex.empty()) throw DataError("DM lexicon is empty");
  std::vector<std::string> trimmed;
  std::vector<DmSlot> slots;
  for (std::size_t k = 0; k < adu_texts.size(); ++k) {
    const TokenSequence toks = tokenize(adu_texts[k]);
    const std::size_t m = lex.longest_match(toks, 0, toks.size());
    std::size_t start = m;
    while (m > 0 && start < toks.size() && text::is_punct(toks[start])) ++start;
    if (m > 0 && start >= toks.size()) {
      throw InvalidSpanError(k, "ADU " + std::to_string(k) + " is empty after removing its DM");
    }
    slots.push_back({k, m > 0 ? detokenize(toks.slice(0, m)) : std::string()});
    trimmed.push_back(m > 0 ? detokenize(toks.slice(start, toks.size())) : adu_texts[k]);
  }
  return {std::move(trimmed), std::move(slots)};
}

std::pair<std::size_t, std::size_t> locate_dm(const AnnotatedParagraph& p, const DmSlot& slot) {
  if (slot.adu_index >= p.adus.size()) {
    throw DataError("DM slot refers to ADU " + std::to_string(slot.adu_index) + " of " +
                    std::to_string(p.adus.size()));
  }
  const auto [lo, hi] = left_window(p, slot.adu_index);
  const auto needle = folded_tokens(slot.text);
  if (needle.empty() || needle.size() > hi - lo) return {hi, hi};
  // Prefer the occurrence closest to the ADU with only punctuation after it.
  for (std::size_t s = hi - needle.size() + 1; s-- > lo;) {
    bool ok = true;
    for (std::size_t k = 0; k < needle.size() && ok; ++k) ok = text::fold(p.tokens[s + k]) == needle[k];
    if (!ok) continue;
    bool only_punct = true;
    for (std::size_t t = s + needle.size(); t < hi && only_punct; ++t) only_punct = text::is_punct(p.tokens[t]);
    if (only_punct) return {s, s + needle.size()};
  }
  return {hi, hi};
}

RemovalResult remove_explicit_dms(const AnnotatedParagraph& p, const std::vector<DmSlot>& slots) {
  const std::size_t n = p.tokens.size();
  std::vector<bool> drop(n, false);
  std::vector<bool> comma_before(n + 1, false);
  std::vector<bool> upper(n, false);

  for (const auto& slot : slots) {
    if (slot.text.empty()) continue;
    const auto [s, e] = locate_dm(p, slot);
    if (s == e) continue;
    const std::size_t adu_start = p.adus[slot.adu_index].start;
    for (std::size_t t = s; t < e; ++t) drop[t] = true;
    for (std::size_t t = e; t < adu_start; ++t) {
      if (p.tokens[t] == ",") drop[t] = true;
    }
    const std::size_t sent = p.sentence_start_of(s);
    bool sentence_initial = true;
    for (std::size_t t = sent; t < s && sentence_initial; ++t) sentence_initial = text::is_punct(p.tokens[t]);
    if (sentence_initial) {
      upper[adu_start] = true;
    } else {
      // a mark already dropped (e.g. the comma of a previous DM) does not count
      std::size_t prev = s;
      while (prev > 0 && drop[prev - 1]) --prev;
      if (prev == 0 || !is_clause_punct(p.tokens[prev - 1])) comma_before[s] = true;
    }
  }

  std::vector<std::string> out;
  out.reserve(n + 4);
  std::vector<std::size_t> index_of(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (comma_before[i]) out.emplace_back(",");
    index_of[i] = out.size();
    if (drop[i]) continue;
    out.push_back(upper[i] ? text::upper_first(p.tokens[i]) : p.tokens[i]);
  }

  RemovalResult result;
  result.tokens = TokenSequence(std::move(out));
  for (const auto& adu : p.adus) result.adus.push_back({index_of[adu.start], index_of[adu.end - 1] + 1, adu.label});
  return result;
}

// ---------------------------------------------------------------------------
// Diff

namespace {

class Matcher {
 public:
  Matcher(const TokenSequence& a, const TokenSequence& b) {
    for (const auto& t : a) a_.push_back(text::fold(t));
    for (std::size_t j = 0; j < b.size(); ++j) b2j_[text::fold(b[j])].push_back(j);
    j2len_.assign(b.size() + 1, 0);
    next_.assign(b.size() + 1, 0);
  }

  MatchBlock longest(std::size_t alo, std::size_t ahi, std::size_t blo, std::size_t bhi) {
    MatchBlock best{alo, blo, 0};
    std::vector<std::size_t> touched;
    std::vector<std::size_t> next_touched;
    for (std::size_t i = alo; i < ahi; ++i) {
      next_touched.clear();
      auto it = b2j_.find(a_[i]);
      if (it != b2j_.end()) {
        for (std::size_t j : it->second) {
          if (j < blo) continue;
          if (j >= bhi) break;
          const std::size_t k = (j > 0 ? j2len_[j] : 0) + 1;  // j2len_ is shifted by one
          next_[j + 1] = k;
          next_touched.push_back(j + 1);
          if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
        }
      }
      for (std::size_t t : touched) j2len_[t] = 0;
      for (std::size_t t : next_touched) {
        j2len_[t] = next_[t];
        next_[t] = 0;
      }
      touched.swap(next_touched);
    }
    for (std::size_t t : touched) j2len_[t] = 0;
    return best;
  }

 private:
  std::vector<std::string> a_;
  std::unordered_map<std::string, std::vector<std::size_t>> b2j_;
  std::vector<std::size_t> j2len_;
  std::vector<std::size_t> next_;
};

struct Opcode {
  char tag;  // 'r' replace, 'd' delete, 'i' insert
  std::size_t i1, i2, j1, j2;
};

std::vector<Opcode> opcodes(const std::vector<MatchBlock>& blocks, std::size_t la, std::size_t lb) {
  std::vector<Opcode> ops;
  std::size_t i = 0;
  std::size_t j = 0;
  auto step = [&](const MatchBlock& m) {
    if (i < m.a && j < m.b) ops.push_back({'r', i, m.a, j, m.b});
    else if (i < m.a) ops.push_back({'d', i, m.a, j, j});
    else if (j < m.b) ops.push_back({'i', i, i, j, m.b});
    i = m.a + m.size;
    j = m.b + m.size;
  };
  for (const auto& m : blocks) step(m);
  step({la, lb, 0});
  return ops;
}

}  // namespace

std::vector<MatchBlock> matching_blocks(const TokenSequence& a, const TokenSequence& b) {
  Matcher matcher(a, b);
  std::vector<MatchBlock> blocks;
  struct Range {
    std::size_t alo, ahi, blo, bhi;
  };
  std::vector<Range> queue{{0, a.size(), 0, b.size()}};
  while (!queue.empty()) {
    const Range r = queue.back();
    queue.pop_back();
    const MatchBlock m = matcher.longest(r.alo, r.ahi, r.blo, r.bhi);
    if (m.size == 0) continue;
    blocks.push_back(m);
    if (r.alo < m.a && r.blo < m.b) queue.push_back({r.alo, m.a, r.blo, m.b});
    if (m.a + m.size < r.ahi && m.b + m.size < r.bhi) queue.push_back({m.a + m.size, r.ahi, m.b + m.size, r.bhi});
  }
  std::sort(blocks.begin(), blocks.end(), [](const MatchBlock& x, const MatchBlock& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  std::vector<MatchBlock> merged;
  for (const auto& m : blocks) {
    if (!merged.empty() && merged.back().a + merged.back().size == m.a && merged.back().b + merged.back().size == m.b) {
      merged.back().size += m.size;
    } else {
      merged.push_back(m);
    }
  }
  return merged;
}

std::vector<DmSlot> diff_predicted_dms(const TokenSequence& input, const TokenSequence& output,
                                       const std::vector<std::size_t>& candidate_positions, std::size_t window) {
  std::vector<std::vector<std::string>> pieces(candidate_positions.size());
  const auto blocks = matching_blocks(input, output);
  for (const auto& op : opcodes(blocks, input.size(), output.size())) {
    if (op.tag == 'd') continue;
    const auto [lo, hi] = trim_punct(output, op.j1, op.j2);
    if (lo == hi) continue;
    std::size_t best = candidate_positions.size();
    std::size_t best_dist = window + 1;
    for (std::size_t c = 0; c < candidate_positions.size(); ++c) {
      const std::size_t pos = candidate_positions[c];
      const std::size_t dist = pos > op.i1 ? pos - op.i1 : op.i1 - pos;
      // ties go to the later candidate: DMs precede their ADU
      if (dist < best_dist || (dist == best_dist && best < candidate_positions.size() && pos >= op.i1)) {
        best = c;
        best_dist = dist;
      }
    }
    if (best == candidate_positions.size()) continue;
    pieces[best].push_back(detokenize(output.slice(lo, hi)));
  }
  std::vector<DmSlot> slots;
  slots.reserve(candidate_positions.size());
  for (std::size_t c = 0; c < candidate_positions.size(); ++c) {
    std::string joined;
    for (const auto& piece : pieces[c]) joined += (joined.empty() ? "" : " ") + piece;
    slots.push_back({c, std::move(joined)});
  }
  return slots;
}

}  // namespace dmaug
