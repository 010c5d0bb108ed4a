#pragma once

// DM-level metrics (embedding similarity, sense agreement, explicit accuracy,
// coverage), sequence-labeling metrics, and agreement statistics.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "dmaug/core.hpp"

namespace dmaug {

// Word -> vector table read from the usual text format
// ("count dim" header, then "word v1 ... vd").
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension) : dim_(dimension) {}

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  // Throws DataError on a dimension mismatch.
  void add(std::string word, std::vector<double> vec);
  // Exact word first, then its case-folded form.
  const std::vector<double>* lookup(std::string_view word) const;

  static EmbeddingTable read(std::istream& in);
  static EmbeddingTable read(const std::filesystem::path& path);

 private:
  std::size_t dim_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
  std::unordered_map<std::string, std::string> folded_;  // folded -> first key
};

enum class SenseKind { arg_marker, disc_rel };
std::string to_string(SenseKind k);

class SenseLexicon {
 public:
  explicit SenseLexicon(SenseKind kind) : kind_(kind) {}

  SenseKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return map_.size(); }
  const std::map<std::string, std::string>& entries() const noexcept { return map_; }

  // Throws DataError for a sense outside the kind's label set. A repeated
  // arg-marker entry keeps the sense ranked first in
  // thesis > rebuttal > backward > forward; a conflicting disc-rel entry is
  // an error (disc-rel files must be pre-resolved).
  void add(std::string_view dm, std::string_view sense);
  std::optional<std::string> sense_of(std::string_view dm) const;

  static const std::vector<std::string>& labels(SenseKind kind);

  // TSV "dm<TAB>sense", '#' comments. The kind is inferred from the labels
  // unless given.
  static SenseLexicon read(std::istream& in, std::optional<SenseKind> kind = std::nullopt);
  static SenseLexicon read(const std::filesystem::path& path, std::optional<SenseKind> kind = std::nullopt);

 private:
  SenseKind kind_;
  std::map<std::string, std::string> map_;
};

// Text -> fixed-dimension vector.
class SentenceEncoder {
 public:
  virtual ~SentenceEncoder() = default;
  virtual std::size_t dimension() const = 0;
  // Empty result when nothing in the text is encodable.
  virtual std::vector<double> encode(std::string_view text) const = 0;
};

// Mean of the word vectors of the text's tokens.
class TableSentenceEncoder : public SentenceEncoder {
 public:
  explicit TableSentenceEncoder(std::shared_ptr<const EmbeddingTable> table) : table_(std::move(table)) {}
  std::size_t dimension() const override { return table_->dimension(); }
  std::vector<double> encode(std::string_view text) const override;

 private:
  std::shared_ptr<const EmbeddingTable> table_;
};

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// Mean in-vocabulary word vector of a DM; empty when nothing is in vocabulary.
std::vector<double> average_vector(std::string_view dm, const EmbeddingTable& table);

// Cosine of averaged word vectors clamped to [0,1]. Identical non-empty DMs
// score 1, a side with no in-vocabulary word scores 0.
double avg_vector_similarity(std::string_view pred, std::string_view gold, const EmbeddingTable& table);
double sentence_similarity(std::string_view pred, std::string_view gold, const SentenceEncoder& enc);

std::optional<std::string> sense_of(std::string_view dm, const SenseLexicon& lex);

enum class SenseMatch { mismatch = 0, match = 1, excluded = 2 };
SenseMatch sense_match(std::string_view pred, std::string_view gold, const SenseLexicon& lex);

struct MetricResources {
  const EmbeddingTable* word = nullptr;
  const EmbeddingTable* retrofit = nullptr;
  const SentenceEncoder* encoder = nullptr;
  const SenseLexicon* arg_marker = nullptr;
  const SenseLexicon* disc_rel = nullptr;
};

struct MetricValue {
  double mean = 0.0;
  std::size_t occurrences = 0;  // gold slots scored
  std::size_t sequences = 0;    // sequences contributing to the mean
  std::size_t excluded = 0;     // sense metrics: unmapped gold slots
};

// A metric is absent when its resource was not supplied.
struct MetricReport {
  std::optional<MetricValue> word_embs;
  std::optional<MetricValue> retrofit_embs;
  std::optional<MetricValue> sbert_embs;
  std::optional<MetricValue> arg_marker;
  std::optional<MetricValue> disc_rel;
  std::size_t gold_slots = 0;  // non-empty gold slots

  nlohmann::ordered_json to_json() const;
};

using SlotTexts = std::vector<std::string>;

// Per non-empty gold slot, score the predicted slot (empty prediction scores
// 0); mean over a sequence's occurrences, then over sequences. Throws
// DataError when shapes differ.
MetricReport explicit_accuracy_report(const std::vector<SlotTexts>& gold, const std::vector<SlotTexts>& pred,
                                      const MetricResources& res);

struct CoverageReport {
  double coverage = 0.0;
  std::size_t slots = 0;
  std::size_t filled = 0;
};
// Fraction of slots with a non-empty prediction, per sequence then averaged.
CoverageReport coverage_report(const std::vector<SlotTexts>& gold, const std::vector<SlotTexts>& pred);

// Gold sense x predicted sense counts over non-empty gold slots; unmapped
// senses appear as "NONE".
struct SenseConfusion {
  SenseKind kind = SenseKind::arg_marker;
  std::map<std::string, std::map<std::string, std::size_t>> counts;

  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
};
SenseConfusion sense_confusion(const std::vector<SlotTexts>& gold, const std::vector<SlotTexts>& pred,
                               const SenseLexicon& lex);

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
};
// Exact-match span micro P/R/F1; labels are decoded tolerantly.
PrfScore span_f1(const std::vector<LabelSequence>& gold, const std::vector<LabelSequence>& pred);

struct TokenScore {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
};
// Macro-F1 over every tag seen in gold or prediction.
TokenScore token_metrics(const std::vector<LabelSequence>& gold, const std::vector<LabelSequence>& pred);

double cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b);
double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b);

// Throws DataError for fewer than two points or zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Human-readable table of a MetricReport.
std::string to_table(const MetricReport& r);

}  // namespace dmaug
