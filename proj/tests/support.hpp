#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dmaug/alignment.hpp"
#include "dmaug/artificial.hpp"
#include "dmaug/core.hpp"
#include "dmaug/extraction.hpp"

namespace support {

inline std::string data(const std::string& name) { return std::string(DMAUG_DATA_DIR) + "/" + name; }

// Four-ADU paragraph: explicit DMs before ADUs 2 and 4 only.
inline const char* kFourAduOriginal =
    "Competition can effectively promote the development of economy. However, it may also harm the "
    "relationships between people. Individuals who only care about winning tend to ignore the feelings of "
    "others. In my opinion, cooperation is more important than competition for the growth of children.";

inline const char* kFourAduAugmented =
    "Indeed, competition can effectively promote the development of economy. However, it may also harm the "
    "relationships between people. Furthermore, individuals who only care about winning tend to ignore the "
    "feelings of others. In fact, cooperation is more important than competition for the growth of children.";

// Marks each listed ADU text (first occurrence) inside tokenize(text).
inline dmaug::AnnotatedParagraph annotate(const std::string& text,
                                          const std::vector<std::pair<std::string, std::string>>& adus) {
  const dmaug::TokenSequence toks = dmaug::tokenize(text);
  std::vector<dmaug::AduSpan> spans;
  std::size_t from = 0;
  for (const auto& [adu, label] : adus) {
    const auto needle = dmaug::tokenize(adu);
    for (std::size_t s = from; s + needle.size() <= toks.size(); ++s) {
      if (std::equal(needle.begin(), needle.end(), toks.begin() + static_cast<std::ptrdiff_t>(s))) {
        spans.push_back({s, s + needle.size(), label});
        from = s + needle.size();
        break;
      }
    }
  }
  if (spans.size() != adus.size()) throw std::logic_error("fixture ADU not found");
  return dmaug::AnnotatedParagraph::from(toks, std::move(spans));
}

inline dmaug::AnnotatedParagraph four_adu_paragraph() {
  return annotate(kFourAduOriginal, {{"Competition can effectively promote the development of economy", "Premise"},
                                 {"it may also harm the relationships between people", "Premise"},
                                 {"Individuals who only care about winning tend to ignore the feelings of others",
                                  "Premise"},
                                 {"cooperation is more important than competition for the growth of children",
                                  "MajorClaim"}});
}

inline std::vector<dmaug::CoreElements> demo_cores() { return dmaug::read_cores(data("demo_cores.tsv")); }

// Draw key render_sample uses for a sample.
inline std::string draw_key(const dmaug::ArtificialSample& s) {
  dmaug::TemplateConfig c = s.config;
  c.prediction_type = dmaug::PredictionType::dm1;
  return s.copa_id + "#" + c.key();
}

inline dmaug::AnnotatedParagraph sample_paragraph(const dmaug::ArtificialSample& s) {
  return dmaug::AnnotatedParagraph::from(dmaug::tokenize(s.full_text), s.adu_spans);
}

// ---------------------------------------------------------------------------
// Needleman-Wunsch oracle: the best score over every order-preserving set of
// aligned pairs. Unpaired tokens on either side are gaps, so a pair set with
// d pairs has la + lb - 2d gaps regardless of where they are placed.

// Bit i*8+j stands for the pair (i, j).
inline void enumerate_pairings(int la, int lb, int i, int j, std::uint64_t cur, std::vector<std::uint64_t>& out) {
  out.push_back(cur);
  for (int a = i; a < la; ++a) {
    for (int b = j; b < lb; ++b) enumerate_pairings(la, lb, a + 1, b + 1, cur | (1ULL << (a * 8 + b)), out);
  }
}

inline std::vector<std::uint64_t> pairings(int la, int lb) {
  std::vector<std::uint64_t> out;
  enumerate_pairings(la, lb, 0, 0, 0, out);
  return out;
}

inline std::uint64_t equality_mask(const std::vector<int>& a, const std::vector<int>& b) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i] == b[j]) m |= 1ULL << (i * 8 + j);
    }
  }
  return m;
}

// match 1, mismatch -1, gap -1
inline int brute_force_score(const std::vector<std::uint64_t>& all_pairings, std::uint64_t eq, int la, int lb) {
  int best = -1000;
  for (std::uint64_t p : all_pairings) {
    const int d = std::popcount(p);
    const int m = std::popcount(p & eq);
    best = std::max(best, m - (d - m) - (la + lb - 2 * d));
  }
  return best;
}

inline dmaug::TokenSequence symbols(const std::vector<int>& v) {
  static const char* kAlpha[] = {"a", "b", "c", "d"};
  std::vector<std::string> t;
  for (int x : v) t.emplace_back(kAlpha[x]);
  return dmaug::TokenSequence(std::move(t));
}

// Pair indices strictly increase on each side and cover both sequences.
inline bool alignment_well_formed(const dmaug::Alignment& al, std::size_t la, std::size_t lb) {
  std::size_t next_a = 0;
  std::size_t next_b = 0;
  for (const auto& p : al.pairs) {
    if (p.a == dmaug::kGap && p.b == dmaug::kGap) return false;
    if (p.a != dmaug::kGap) {
      if (p.a != next_a) return false;
      ++next_a;
    }
    if (p.b != dmaug::kGap) {
      if (p.b != next_b) return false;
      ++next_b;
    }
  }
  return next_a == la && next_b == lb;
}

// ---------------------------------------------------------------------------
// Span-F1 oracle: checks every (start, end, label) triple directly against
// the labelings, without decoding spans first.

inline bool has_span(const dmaug::LabelSequence& l, std::size_t s, std::size_t e, const std::string& type) {
  if (l[s] != "B-" + type && l[s] != "I-" + type) return false;
  // an I- start only opens a span when the previous tag does not continue it
  if (l[s][0] == 'I' && s > 0 && (l[s - 1] == "B-" + type || l[s - 1] == "I-" + type)) return false;
  for (std::size_t t = s + 1; t < e; ++t) {
    if (l[t] != "I-" + type) return false;
  }
  return e == l.size() || l[e] != "I-" + type;
}

struct BruteCounts {
  std::size_t tp = 0, gold = 0, pred = 0;
};

inline BruteCounts brute_span_counts(const dmaug::LabelSequence& g, const dmaug::LabelSequence& p,
                                     const std::vector<std::string>& types) {
  BruteCounts c;
  for (std::size_t s = 0; s < g.size(); ++s) {
    for (std::size_t e = s + 1; e <= g.size(); ++e) {
      for (const auto& t : types) {
        const bool in_g = has_span(g, s, e, t);
        const bool in_p = has_span(p, s, e, t);
        c.gold += in_g;
        c.pred += in_p;
        c.tp += in_g && in_p;
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Random paragraphs for projection properties. Content words never collide
// with DM tokens, so an insert-only edit has exactly one optimal alignment.

struct RandomParagraph {
  dmaug::TokenSequence tokens;
  dmaug::LabelSequence labels;
  std::vector<dmaug::AduSpan> adus;
};

inline RandomParagraph random_paragraph(std::mt19937_64& rng) {
  static const std::vector<std::string> kWords = {"cats", "rain", "people", "should", "vote", "taxes", "help",
                                                  "the", "city", "runs", "fast", "green", "energy", "costs",
                                                  "money", "we", "it", "is", "good", "bad"};
  static const std::vector<std::string> kLabels = {"Claim", "Premise", "MajorClaim"};
  std::uniform_int_distribution<int> n_sent(1, 4), sent_len(3, 12), word(0, static_cast<int>(kWords.size()) - 1),
      label(0, 2);
  std::vector<std::string> toks;
  std::vector<dmaug::AduSpan> adus;
  const int sentences = n_sent(rng);
  for (int s = 0; s < sentences; ++s) {
    const int len = sent_len(rng);
    const std::size_t begin = toks.size();
    for (int k = 0; k < len; ++k) toks.push_back(kWords[static_cast<std::size_t>(word(rng))]);
    // one or two ADUs per sentence, with optional gaps
    std::uniform_int_distribution<int> cut(0, len);
    int a = cut(rng), b = cut(rng);
    if (a > b) std::swap(a, b);
    if (b - a >= 1) adus.push_back({begin + static_cast<std::size_t>(a), begin + static_cast<std::size_t>(b),
                                    kLabels[static_cast<std::size_t>(label(rng))]});
    if (len - b >= 2 && rng() % 2) {
      adus.push_back({begin + static_cast<std::size_t>(b) + 1, begin + static_cast<std::size_t>(len),
                      kLabels[static_cast<std::size_t>(label(rng))]});
    }
    toks.push_back(".");
  }
  RandomParagraph p;
  p.tokens = dmaug::TokenSequence(std::move(toks));
  p.labels = dmaug::spans_to_bio(adus, p.tokens.size());
  p.adus = std::move(adus);
  return p;
}

// Inserts DM tokens (never content words) only at positions outside ADUs
// or right before an ADU start.
inline dmaug::TokenSequence insert_dms(const RandomParagraph& p, std::mt19937_64& rng) {
  static const std::vector<std::vector<std::string>> kDms = {
      {"However", ","}, {"because"}, {"In", "addition", ","}, {"moreover"}, {"I", "think", "that"}, {"although"}};
  std::vector<bool> inside(p.tokens.size() + 1, false);
  for (const auto& a : p.adus) {
    for (std::size_t t = a.start + 1; t < a.end; ++t) inside[t] = true;
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= p.tokens.size(); ++i) {
    if (!inside[i] && rng() % 3 == 0) {
      const auto& dm = kDms[rng() % kDms.size()];
      out.insert(out.end(), dm.begin(), dm.end());
    }
    if (i < p.tokens.size()) out.push_back(p.tokens[i]);
  }
  return dmaug::TokenSequence(std::move(out));
}

}  // namespace support

#ifdef DOCTEST_VERSION_STR
namespace doctest {
template <>
struct StringMaker<std::vector<std::string>> {
  static String convert(const std::vector<std::string>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", \"" : "\"") + v[i] + "\"";
    return (out + "]").c_str();
  }
};
}  // namespace doctest
#endif
