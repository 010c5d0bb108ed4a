#pragma once

// Downstream experiment harness: optional DM removal, augmentation, label
// projection onto the augmented text, back-projection of tagger output, and
// evaluation. The tagger itself is external; it trains on (x_m, y_m) and
// returns z_m as CoNLL.

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmaug/alignment.hpp"
#include "dmaug/artificial.hpp"
#include "dmaug/augmenter.hpp"
#include "dmaug/conll.hpp"
#include "dmaug/core.hpp"
#include "dmaug/extraction.hpp"
#include "dmaug/metrics.hpp"

namespace dmaug {

enum class InputMode { original, removed_dms };
enum class AugmenterKind { none, rule, remote };

InputMode parse_input_mode(std::string_view s);
AugmenterKind parse_augmenter(std::string_view s);
std::string to_string(InputMode m);
std::string to_string(AugmenterKind k);

struct RunConfig {
  InputMode input_mode = InputMode::original;
  AugmenterKind augmenter = AugmenterKind::none;
  CorpusSchema schema = CorpusSchema::pec();
  DmPolicy policy;
  RoleMap role_map = default_role_map(CorpusSchema::pec());
  ProjectionPolicy projection = ProjectionPolicy::contiguity;
  // Gold DMs come from the ADU prefix when set, else from the left context.
  const DmLexicon* lexicon = nullptr;
  const RemoteAugmenter* remote = nullptr;  // required for AugmenterKind::remote
};

struct DownstreamInstance {
  TokenSequence x;
  LabelSequence y;
  std::string x_s;    // text handed to the augmenter
  std::string x_s_m;  // augmented text
  TokenSequence x_m;
  LabelSequence y_m;
  std::optional<LabelSequence> z_m;
  std::optional<LabelSequence> z;

  // DM bookkeeping, one entry per ADU of y
  std::vector<std::string> gold_dms;
  std::vector<std::string> predicted_dms;

  std::string failed_stage;  // empty when complete
  std::string error;
  std::size_t dropped_spans = 0;  // z_m spans with no original token

  bool ok() const noexcept { return failed_stage.empty(); }
};

// Removal, augmentation and projection for one paragraph. Stage failures are recorded on the instance
// (failed_stage: "input", "remove", "augment", "tokenize", "project",
// "recover"), never thrown.
DownstreamInstance prepare_downstream(const TokenSequence& x, const LabelSequence& y, const RunConfig& cfg);

// The whole corpus. Remote requests go out in bounded batches; everything
// else runs per instance under OpenMP. Output order follows input order.
std::vector<DownstreamInstance> prepare_corpus(const std::vector<LabeledSequence>& corpus, const RunConfig& cfg);
std::vector<DownstreamInstance> prepare_corpus_serial(const std::vector<LabeledSequence>& corpus,
                                                      const RunConfig& cfg);

// z = projection of z_m back onto x. Throws DataError when z_m is
// missing or has the wrong length.
LabelSequence backproject_predictions(DownstreamInstance& inst,
                                      ProjectionPolicy policy = ProjectionPolicy::contiguity);

// Attaches predictions to the complete instances in order and back-projects.
// Throws DataError when the counts differ.
void attach_predictions(std::vector<DownstreamInstance>& instances, const std::vector<LabeledSequence>& z_m,
                        ProjectionPolicy policy = ProjectionPolicy::contiguity);

struct RunReport {
  std::size_t instances = 0;
  std::size_t complete = 0;
  std::map<std::string, std::size_t> failed;  // by stage
  std::size_t dropped_spans = 0;

  PrfScore span;
  TokenScore token;
  std::optional<MetricReport> dm;
  std::optional<CoverageReport> coverage;

  nlohmann::ordered_json to_json() const;
};

// Downstream metrics on (y, z) over instances carrying z; DM reports when
// gold DMs are present.
RunReport evaluate_run(const std::vector<DownstreamInstance>& instances, const MetricResources& res = {});

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
};
MeanStd mean_std(const std::vector<double>& values);

// span P/R/F1, token accuracy and macro-F1 as mean +- std over runs.
nlohmann::ordered_json summarize_runs(const std::vector<RunReport>& runs);

nlohmann::ordered_json to_json(const DownstreamInstance& inst);
DownstreamInstance instance_from_json(const nlohmann::json& j);
std::vector<DownstreamInstance> read_instances(std::istream& in);

}  // namespace dmaug
