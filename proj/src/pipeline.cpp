#include "dmaug/pipeline.hpp"

#include <cmath>
#include <string_view>

#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

namespace dmaug {

InputMode parse_input_mode(std::string_view s) {
  if (s == "original") return InputMode::original;
  if (s == "removed_dms" || s == "removed-dms" || s == "removed") return InputMode::removed_dms;
  throw std::invalid_argument("unknown input mode: " + std::string(s));
}

AugmenterKind parse_augmenter(std::string_view s) {
  if (s == "none") return AugmenterKind::none;
  if (s == "rule") return AugmenterKind::rule;
  if (s == "remote") return AugmenterKind::remote;
  throw std::invalid_argument("unknown augmenter: " + std::string(s));
}

std::string to_string(InputMode m) { return m == InputMode::original ? "original" : "removed_dms"; }

std::string to_string(AugmenterKind k) {
  switch (k) {
    case AugmenterKind::none: return "none";
    case AugmenterKind::rule: return "rule";
    case AugmenterKind::remote: return "remote";
  }
  return {};
}

namespace {

// Per-instance state carried between the steps.
struct Work {
  DownstreamInstance inst;
  TokenSequence tokens;  // sequence handed to the augmenter
  std::vector<AduSpan> adus;
  std::vector<DmSlot> slots;  // explicit DMs still present in `tokens`
  std::vector<std::size_t> candidates;
  std::vector<std::string> retained;
  std::string stage;
};

void fail(Work& w, const std::exception& e) {
  w.inst.failed_stage = w.stage;
  w.inst.error = e.what();
}

void step_input(Work& w, const TokenSequence& x, const LabelSequence& y, const RunConfig& cfg) {
  w.inst.x = x;
  w.inst.y = y;
  w.stage = "input";
  if (x.size() != y.size()) throw DataError("token and label counts differ");
  if (!is_valid_bio(y)) bio_to_spans(y, BioMode::strict);  // throws with the position
  for (const auto& span : bio_to_spans(y)) {
    if (!cfg.schema.has_label(span.label)) throw DataError("label '" + span.label + "' is not in schema " + cfg.schema.name);
  }
  AnnotatedParagraph para = AnnotatedParagraph::from_bio(x, y);
  std::vector<DmSlot> slots;
  if (cfg.lexicon) {
    auto [adus, s] = gold_dms_prefix_split(para, *cfg.lexicon);
    para = AnnotatedParagraph::from(x, std::move(adus));
    slots = std::move(s);
  } else {
    slots = gold_dms_left_context(para);
  }
  for (const auto& s : slots) w.inst.gold_dms.push_back(s.text);

  w.stage = "remove";
  if (cfg.input_mode == InputMode::removed_dms) {
    RemovalResult rr = remove_explicit_dms(para, slots);
    w.tokens = std::move(rr.tokens);
    w.adus = std::move(rr.adus);
    for (std::size_t k = 0; k < w.adus.size(); ++k) {
      w.slots.push_back({k, ""});
      w.candidates.push_back(w.adus[k].start);
    }
    w.retained.assign(w.adus.size(), "");
  } else {
    w.tokens = x;
    w.adus = para.adus;
    for (const auto& s : slots) {
      w.candidates.push_back(locate_dm(para, s).first);
      w.retained.push_back(s.text);
    }
    w.slots = std::move(slots);
  }
  w.inst.x_s = detokenize(w.tokens);
}

void step_augment_local(Work& w, const RunConfig& cfg) {
  w.stage = "augment";
  switch (cfg.augmenter) {
    case AugmenterKind::none:
      w.inst.x_s_m = w.inst.x_s;
      break;
    case AugmenterKind::rule:
      w.inst.x_s_m = rule_based_augment(AnnotatedParagraph::from(w.tokens, w.adus), w.slots, cfg.policy,
                                        cfg.role_map, w.inst.x_s)
                         .text();
      break;
    case AugmenterKind::remote:
      if (!cfg.remote) throw DataError("remote augmenter selected without an endpoint");
      w.inst.x_s_m = cfg.remote->augment(w.inst.x_s);
      break;
  }
}

void step_finish(Work& w, const RunConfig& cfg) {
  w.stage = "tokenize";
  w.inst.x_m = cfg.augmenter == AugmenterKind::none ? w.tokens : tokenize(w.inst.x_s_m);
  if (w.inst.x_m.empty()) throw DataError("augmented text is empty");
  w.stage = "project";
  w.inst.y_m = project(w.inst.x, w.inst.y, w.inst.x_m, cfg.projection);
  w.stage = "recover";
  const auto found = diff_predicted_dms(w.tokens, w.inst.x_m, w.candidates);
  for (std::size_t k = 0; k < found.size(); ++k) {
    w.inst.predicted_dms.push_back(found[k].text.empty() ? w.retained[k] : found[k].text);
  }
}

// Runs a step unless the instance already failed; failures are recorded.
template <class F>
void guarded(Work& w, F&& f) {
  if (!w.inst.ok()) return;
  try {
    f();
  } catch (const std::exception& e) {
    fail(w, e);
  }
}

void remote_batch(std::vector<Work>& work, const RunConfig& cfg) {
  if (!cfg.remote) {
    for (auto& w : work) guarded(w, [&] { step_augment_local(w, cfg); });
    return;
  }
  std::vector<std::size_t> idx;
  std::vector<std::string> texts;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!work[i].inst.ok()) continue;
    idx.push_back(i);
    texts.push_back(work[i].inst.x_s);
  }
  const auto outcomes = cfg.remote->augment_batch(texts);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    Work& w = work[idx[k]];
    if (outcomes[k].text) {
      w.inst.x_s_m = *outcomes[k].text;
    } else {
      w.inst.failed_stage = "augment";
      w.inst.error = outcomes[k].error;
    }
  }
}

}  // namespace

DownstreamInstance prepare_downstream(const TokenSequence& x, const LabelSequence& y, const RunConfig& cfg) {
  Work w;
  guarded(w, [&] { step_input(w, x, y, cfg); });
  guarded(w, [&] { step_augment_local(w, cfg); });
  guarded(w, [&] { step_finish(w, cfg); });
  return std::move(w.inst);
}

std::vector<DownstreamInstance> prepare_corpus_serial(const std::vector<LabeledSequence>& corpus,
                                                      const RunConfig& cfg) {
  std::vector<DownstreamInstance> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) out.push_back(prepare_downstream(s.tokens, s.labels, cfg));
  return out;
}

std::vector<DownstreamInstance> prepare_corpus(const std::vector<LabeledSequence>& corpus, const RunConfig& cfg) {
  std::vector<Work> work(corpus.size());
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
  const bool remote = cfg.augmenter == AugmenterKind::remote;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Work& w = work[static_cast<std::size_t>(i)];
    const auto& s = corpus[static_cast<std::size_t>(i)];
    guarded(w, [&] { step_input(w, s.tokens, s.labels, cfg); });
    if (!remote) guarded(w, [&] { step_augment_local(w, cfg); });
  }
  if (remote) remote_batch(work, cfg);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    Work& w = work[static_cast<std::size_t>(i)];
    guarded(w, [&] { step_finish(w, cfg); });
  }
  std::vector<DownstreamInstance> out;
  out.reserve(work.size());
  for (auto& w : work) out.push_back(std::move(w.inst));
  return out;
}

LabelSequence backproject_predictions(DownstreamInstance& inst, ProjectionPolicy policy) {
  if (!inst.z_m) throw DataError("instance has no predictions to back-project");
  if (inst.z_m->size() != inst.x_m.size()) {
    throw DataError("prediction has " + std::to_string(inst.z_m->size()) + " labels for " +
                    std::to_string(inst.x_m.size()) + " tokens");
  }
  const Alignment al = needleman_wunsch(inst.x_m, inst.x);
  std::vector<bool> aligned(inst.x_m.size(), false);
  for (const auto& p : al.pairs) {
    if (p.a != kGap && p.b != kGap) aligned[p.a] = true;
  }
  inst.dropped_spans = 0;
  for (const auto& span : bio_to_spans(*inst.z_m)) {
    bool any = false;
    for (std::size_t t = span.start; t < span.end && !any; ++t) any = aligned[t];
    if (!any) ++inst.dropped_spans;
  }
  inst.z = project_labels(al, *inst.z_m, inst.x.size(), policy);
  return *inst.z;
}

void attach_predictions(std::vector<DownstreamInstance>& instances, const std::vector<LabeledSequence>& z_m,
                        ProjectionPolicy policy) {
  std::size_t k = 0;
  for (auto& inst : instances) {
    if (!inst.ok()) continue;
    if (k >= z_m.size()) throw DataError("fewer predicted sequences than complete instances");
    if (z_m[k].tokens != inst.x_m) {
      throw DataError("predicted sequence " + std::to_string(k) + " does not match the augmented tokens");
    }
    inst.z_m = z_m[k].labels;
    backproject_predictions(inst, policy);
    ++k;
  }
  if (k != z_m.size()) throw DataError("more predicted sequences than complete instances");
}

RunReport evaluate_run(const std::vector<DownstreamInstance>& instances, const MetricResources& res) {
  RunReport r;
  r.instances = instances.size();
  std::vector<LabelSequence> gold, pred;
  std::vector<SlotTexts> gold_dms, pred_dms;
  for (const auto& inst : instances) {
    if (!inst.ok()) {
      ++r.failed[inst.failed_stage];
      continue;
    }
    ++r.complete;
    r.dropped_spans += inst.dropped_spans;
    if (inst.z) {
      gold.push_back(inst.y);
      pred.push_back(*inst.z);
    }
    if (!inst.gold_dms.empty() && inst.gold_dms.size() == inst.predicted_dms.size()) {
      gold_dms.push_back(inst.gold_dms);
      pred_dms.push_back(inst.predicted_dms);
    }
  }
  r.span = span_f1(gold, pred);
  r.token = token_metrics(gold, pred);
  if (!gold_dms.empty()) {
    r.coverage = coverage_report(gold_dms, pred_dms);
    if (res.word || res.retrofit || res.encoder || res.arg_marker || res.disc_rel) {
      r.dm = explicit_accuracy_report(gold_dms, pred_dms, res);
    }
  }
  return r;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["instances"] = instances;
  j["complete"] = complete;
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [stage, n] : failed) f[stage] = n;
  j["failed"] = f;
  j["dropped_spans"] = dropped_spans;
  j["span_precision"] = span.precision;
  j["span_recall"] = span.recall;
  j["span_f1"] = span.f1;
  j["token_accuracy"] = token.accuracy;
  j["token_macro_f1"] = token.macro_f1;
  if (coverage) {
    j["coverage"] = {{"coverage", coverage->coverage}, {"slots", coverage->slots}, {"filled", coverage->filled}};
  }
  if (dm) j["dm"] = dm->to_json();
  return j;
}

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd m;
  if (values.empty()) return m;
  double sum = 0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  double sq = 0;
  for (double v : values) sq += (v - m.mean) * (v - m.mean);
  m.std = std::sqrt(sq / static_cast<double>(values.size()));
  return m;
}

nlohmann::ordered_json summarize_runs(const std::vector<RunReport>& runs) {
  nlohmann::ordered_json j;
  j["runs"] = runs.size();
  auto put = [&](const char* name, auto get) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(get(r));
    const MeanStd m = mean_std(v);
    j[name] = {{"mean", m.mean}, {"std", m.std}};
  };
  put("span_precision", [](const RunReport& r) { return r.span.precision; });
  put("span_recall", [](const RunReport& r) { return r.span.recall; });
  put("span_f1", [](const RunReport& r) { return r.span.f1; });
  put("token_accuracy", [](const RunReport& r) { return r.token.accuracy; });
  put("token_macro_f1", [](const RunReport& r) { return r.token.macro_f1; });
  return j;
}

nlohmann::ordered_json to_json(const DownstreamInstance& inst) {
  nlohmann::ordered_json j;
  j["status"] = inst.ok() ? "ok" : "failed";
  if (!inst.ok()) {
    j["stage"] = inst.failed_stage;
    j["error"] = inst.error;
  }
  j["x"] = inst.x.tokens();
  j["y"] = inst.y.labels();
  j["x_s"] = inst.x_s;
  j["x_s_m"] = inst.x_s_m;
  j["x_m"] = inst.x_m.tokens();
  j["y_m"] = inst.y_m.labels();
  if (inst.z_m) j["z_m"] = inst.z_m->labels();
  if (inst.z) j["z"] = inst.z->labels();
  j["gold_dms"] = inst.gold_dms;
  j["predicted_dms"] = inst.predicted_dms;
  j["dropped_spans"] = inst.dropped_spans;
  return j;
}

DownstreamInstance instance_from_json(const nlohmann::json& j) {
  DownstreamInstance inst;
  try {
    if (j.value("status", "ok") != "ok") {
      inst.failed_stage = j.value("stage", "unknown");
      inst.error = j.value("error", "");
    }
    inst.x = TokenSequence(j.at("x").get<std::vector<std::string>>());
    inst.y = LabelSequence(j.at("y").get<std::vector<std::string>>());
    inst.x_s = j.value("x_s", "");
    inst.x_s_m = j.value("x_s_m", "");
    inst.x_m = TokenSequence(j.value("x_m", std::vector<std::string>{}));
    inst.y_m = LabelSequence(j.value("y_m", std::vector<std::string>{}));
    if (j.contains("z_m")) inst.z_m = LabelSequence(j["z_m"].get<std::vector<std::string>>());
    if (j.contains("z")) inst.z = LabelSequence(j["z"].get<std::vector<std::string>>());
    inst.gold_dms = j.value("gold_dms", std::vector<std::string>{});
    inst.predicted_dms = j.value("predicted_dms", std::vector<std::string>{});
    inst.dropped_spans = j.value("dropped_spans", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad instance record: ") + e.what());
  }
  if (inst.x.size() != inst.y.size()) throw DataError("instance record: x and y differ in length");
  return inst;
}

std::vector<DownstreamInstance> read_instances(std::istream& in) {
  std::vector<DownstreamInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw DataError("instances line " + std::to_string(lineno) + ": invalid JSON");
    out.push_back(instance_from_json(j));
  }
  return out;
}

}  // namespace dmaug
