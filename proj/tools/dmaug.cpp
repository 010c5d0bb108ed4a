// dmaug: command-line front end for the DM augmentation toolkit.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 remote-service error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmaug/alignment.hpp"
#include "dmaug/artificial.hpp"
#include "dmaug/augmenter.hpp"
#include "dmaug/conll.hpp"
#include "dmaug/core.hpp"
#include "dmaug/errors.hpp"
#include "dmaug/extraction.hpp"
#include "dmaug/metrics.hpp"
#include "dmaug/pipeline.hpp"

namespace fs = std::filesystem;
using namespace dmaug;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// stdout when path is empty or "-"
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot write " + path);
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

ProjectionPolicy parse_policy(const std::string& s) {
  if (s == "contiguity") return ProjectionPolicy::contiguity;
  if (s == "strict_o" || s == "strict-o") return ProjectionPolicy::strict_o;
  throw UsageError("unknown projection policy: " + s);
}

std::vector<SlotTexts> read_slot_file(const std::string& path) {
  auto in = open_in(path);
  std::vector<SlotTexts> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw DataError(path + ":" + std::to_string(lineno) + ": invalid JSON");
    const auto& arr = j.is_object() ? j.value("dms", nlohmann::json()) : j;
    if (!arr.is_array()) throw DataError(path + ":" + std::to_string(lineno) + ": expected a list of DM slots");
    SlotTexts slots;
    for (const auto& s : arr) {
      if (s.is_null()) {
        slots.emplace_back();
      } else if (s.is_string()) {
        slots.push_back(s.get<std::string>());
      } else {
        throw DataError(path + ":" + std::to_string(lineno) + ": DM slots must be strings");
      }
    }
    out.push_back(std::move(slots));
  }
  return out;
}

// Loaded metric resources; pointers in `res` refer to the members.
struct Resources {
  std::optional<EmbeddingTable> word, retrofit;
  std::shared_ptr<const EmbeddingTable> sentence_table;
  std::unique_ptr<TableSentenceEncoder> encoder;
  std::optional<SenseLexicon> arg, rel;
  MetricResources res;

  void load(const std::string& vectors, const std::string& retrofit_vectors, const std::string& sentence_vectors,
            const std::vector<std::string>& lexicons) {
    if (!vectors.empty()) word = EmbeddingTable::read(fs::path(vectors));
    if (!retrofit_vectors.empty()) retrofit = EmbeddingTable::read(fs::path(retrofit_vectors));
    if (!sentence_vectors.empty()) {
      sentence_table = std::make_shared<const EmbeddingTable>(EmbeddingTable::read(fs::path(sentence_vectors)));
      encoder = std::make_unique<TableSentenceEncoder>(sentence_table);
    }
    for (const auto& path : lexicons) {
      SenseLexicon lex = SenseLexicon::read(fs::path(path));
      auto& slot = lex.kind() == SenseKind::arg_marker ? arg : rel;
      if (slot) throw UsageError("two " + to_string(lex.kind()) + " lexicons given");
      slot = std::move(lex);
    }
    res.word = word ? &*word : nullptr;
    res.retrofit = retrofit ? &*retrofit : nullptr;
    res.encoder = encoder.get();
    res.arg_marker = arg ? &*arg : nullptr;
    res.disc_rel = rel ? &*rel : nullptr;
  }
};

struct MetricFlags {
  std::string vectors, retrofit_vectors, sentence_vectors;
  std::vector<std::string> lexicons;

  void add_to(CLI::App* app) {
    app->add_option("--vectors", vectors, "word vectors (text format)");
    app->add_option("--retrofit-vectors", retrofit_vectors, "retrofitted word vectors");
    app->add_option("--sentence-vectors", sentence_vectors, "vectors for the mean-vector sentence encoder");
    app->add_option("--lexicon", lexicons, "sense lexicon TSV (repeatable; kind inferred)");
  }
};

std::vector<AnnotatedParagraph> paragraphs(const std::vector<LabeledSequence>& corpus, const std::string& schema) {
  const CorpusSchema cs = CorpusSchema::by_name(schema);
  std::vector<AnnotatedParagraph> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) {
    out.push_back(AnnotatedParagraph::from_bio(s.tokens, s.labels));
    for (const auto& adu : out.back().adus) {
      if (!cs.has_label(adu.label)) throw DataError("label '" + adu.label + "' is not in schema " + cs.name);
    }
  }
  return out;
}

std::pair<AnnotatedParagraph, std::vector<DmSlot>> gold_slots(const AnnotatedParagraph& p, const DmLexicon* lex) {
  if (!lex) return {p, gold_dms_left_context(p)};
  auto [adus, slots] = gold_dms_prefix_split(p, *lex);
  return {AnnotatedParagraph::from(p.tokens, std::move(adus)), std::move(slots)};
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string cores, out, conll, split = "test", mask = std::string(kDefaultMask), stance = "both",
                                  format = "jsonl";
  std::uint64_t seed = DmPolicy::kDefaultSeed;
};

int run_generate(const GenerateArgs& a) {
  std::set<StanceRole> roles;
  if (a.stance == "both") {
    roles = {StanceRole::original, StanceRole::opposite};
  } else if (a.stance == "original") {
    roles = {StanceRole::original};
  } else {
    throw UsageError("--stance must be 'both' or 'original'");
  }
  DmPolicy policy;
  policy.seed = a.seed;
  const auto samples = generate_split(read_cores(a.cores), roles, policy, a.mask);
  Output out(a.out);
  for (const auto& s : samples) {
    if (a.format == "e2e") {
      const auto [in, full] = make_e2e_pair(s);
      nlohmann::ordered_json j;
      j["input_text"] = in;
      j["output_text"] = full;
      out.get() << j.dump() << '\n';
    } else {
      out.get() << to_json(s, a.split).dump() << '\n';
    }
  }
  if (!a.conll.empty()) {
    // one sequence per distinct text
    std::vector<LabeledSequence> corpus;
    std::set<std::string> seen;
    for (const auto& s : samples) {
      if (!seen.insert(s.full_text).second) continue;
      TokenSequence toks = tokenize(s.full_text);
      LabelSequence labels = spans_to_bio(s.adu_spans, toks.size());
      corpus.push_back({std::move(toks), std::move(labels)});
    }
    write_conll(fs::path(a.conll), corpus);
  }
  std::cerr << samples.size() << " samples\n";
  return 0;
}

struct CorpusArgs {
  std::string input, out, schema = "pec", lexicon;
};

int run_extract(const CorpusArgs& a) {
  const auto corpus = read_conll(fs::path(a.input));
  std::optional<DmLexicon> lex;
  if (!a.lexicon.empty()) lex = DmLexicon::read(fs::path(a.lexicon));
  Output out(a.out);
  for (const auto& p : paragraphs(corpus, a.schema)) {
    const auto [para, slots] = gold_slots(p, lex ? &*lex : nullptr);
    nlohmann::ordered_json j;
    std::vector<std::string> dms, adus;
    for (const auto& s : slots) dms.push_back(s.text);
    for (const auto& adu : para.adus) adus.push_back(detokenize(para.tokens.slice(adu.start, adu.end)));
    j["dms"] = dms;
    j["adus"] = adus;
    out.get() << j.dump() << '\n';
  }
  return 0;
}

int run_remove(const CorpusArgs& a) {
  const auto corpus = read_conll(fs::path(a.input));
  std::optional<DmLexicon> lex;
  if (!a.lexicon.empty()) lex = DmLexicon::read(fs::path(a.lexicon));
  std::vector<LabeledSequence> result;
  for (const auto& p : paragraphs(corpus, a.schema)) {
    const auto [para, slots] = gold_slots(p, lex ? &*lex : nullptr);
    RemovalResult rr = remove_explicit_dms(para, slots);
    LabelSequence labels = spans_to_bio(rr.adus, rr.tokens.size());
    result.push_back({std::move(rr.tokens), std::move(labels)});
  }
  Output out(a.out);
  write_conll(out.get(), result);
  return 0;
}

struct AugmentArgs {
  std::string input, out, schema = "pec", lexicon, input_mode = "original", augmenter = "rule", endpoint,
                          projection = "contiguity";
  std::uint64_t seed = DmPolicy::kDefaultSeed;
  double timeout = 30.0;
  std::size_t in_flight = 4;
};

int run_augment(const AugmentArgs& a) {
  RunConfig cfg;
  cfg.input_mode = parse_input_mode(a.input_mode);
  cfg.augmenter = parse_augmenter(a.augmenter);
  cfg.schema = CorpusSchema::by_name(a.schema);
  cfg.role_map = default_role_map(cfg.schema);
  cfg.policy.seed = a.seed;
  cfg.projection = parse_policy(a.projection);
  std::optional<DmLexicon> lex;
  if (!a.lexicon.empty()) lex = DmLexicon::read(fs::path(a.lexicon));
  cfg.lexicon = lex ? &*lex : nullptr;
  std::optional<RemoteAugmenter> remote;
  if (cfg.augmenter == AugmenterKind::remote) {
    if (a.endpoint.empty()) throw UsageError("--augmenter remote needs --endpoint");
    RemoteOptions opts;
    opts.timeout = std::chrono::milliseconds(static_cast<long>(a.timeout * 1000));
    opts.max_in_flight = a.in_flight;
    remote.emplace(a.endpoint, opts);
    cfg.remote = &*remote;
  }

  const auto instances = prepare_corpus(read_conll(fs::path(a.input)), cfg);
  const fs::path dir(a.out.empty() ? "." : a.out);
  fs::create_directories(dir);
  std::vector<LabeledSequence> train;
  std::ofstream jsonl(dir / "instances.jsonl");
  if (!jsonl) throw DataError("cannot write " + (dir / "instances.jsonl").string());
  std::size_t remote_failures = 0;
  std::map<std::string, std::size_t> failed;
  for (const auto& inst : instances) {
    jsonl << to_json(inst).dump() << '\n';
    if (inst.ok()) {
      train.push_back({inst.x_m, inst.y_m});
    } else {
      ++failed[inst.failed_stage];
      if (inst.failed_stage == "augment" && cfg.augmenter == AugmenterKind::remote) ++remote_failures;
      std::cerr << "instance failed at " << inst.failed_stage << ": " << inst.error << '\n';
    }
  }
  write_conll(dir / "x_m.conll", train);
  std::cerr << train.size() << " of " << instances.size() << " instances written to " << dir.string() << '\n';
  return remote_failures > 0 ? 3 : 0;
}

struct PairArgs {
  std::string input, out, format = "discovery";
  bool tsv = false;
};

int run_pairs(const PairArgs& a) {
  auto in = open_in(a.input);
  std::vector<std::pair<std::string, std::string>> pairs;
  if (a.format == "discovery") {
    for (const auto& d : read_discovery_tsv(in)) pairs.push_back(prepare_discovery_pair(d));
  } else if (a.format == "pdtb") {
    for (const auto& r : read_pdtb_jsonl(in)) pairs.push_back(prepare_pdtb_pairs(r));
  } else {
    throw UsageError("--format must be 'discovery' or 'pdtb'");
  }
  Output out(a.out);
  for (const auto& [input, output] : pairs) {
    if (a.tsv) {
      out.get() << input << '\t' << output << '\n';
    } else {
      nlohmann::ordered_json j;
      j["input_text"] = input;
      j["output_text"] = output;
      out.get() << j.dump() << '\n';
    }
  }
  return 0;
}

struct ProjectArgs {
  std::string source, target, out, policy = "contiguity";
};

int run_project(const ProjectArgs& a) {
  const auto source = read_conll(fs::path(a.source));
  std::vector<TokenSequence> targets;
  if (fs::path(a.target).extension() == ".conll") {
    for (auto& s : read_conll(fs::path(a.target))) targets.push_back(std::move(s.tokens));
  } else {
    auto in = open_in(a.target);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      targets.push_back(tokenize(line));
    }
  }
  if (targets.size() != source.size()) {
    throw DataError("source has " + std::to_string(source.size()) + " sequences, target has " +
                    std::to_string(targets.size()));
  }
  std::vector<ProjectionTask> tasks;
  for (std::size_t i = 0; i < source.size(); ++i) tasks.push_back({&source[i].tokens, &source[i].labels, &targets[i]});
  auto labels = project_batch(tasks, parse_policy(a.policy));
  std::vector<LabeledSequence> result;
  for (std::size_t i = 0; i < targets.size(); ++i) result.push_back({targets[i], std::move(labels[i])});
  Output out(a.out);
  write_conll(out.get(), result);
  return 0;
}

struct EvalDmArgs {
  std::string gold, pred, instances, out;
  bool confusion = false;
  MetricFlags metrics;
};

int run_eval_dm(const EvalDmArgs& a) {
  std::vector<SlotTexts> gold, pred;
  if (!a.instances.empty()) {
    auto in = open_in(a.instances);
    for (const auto& inst : read_instances(in)) {
      if (!inst.ok()) continue;
      gold.push_back(inst.gold_dms);
      pred.push_back(inst.predicted_dms);
    }
  } else {
    if (a.gold.empty() || a.pred.empty()) throw UsageError("give --instances or both --gold and --pred");
    gold = read_slot_file(a.gold);
    pred = read_slot_file(a.pred);
  }
  Resources r;
  r.load(a.metrics.vectors, a.metrics.retrofit_vectors, a.metrics.sentence_vectors, a.metrics.lexicons);
  const MetricReport report = explicit_accuracy_report(gold, pred, r.res);
  const CoverageReport cov = coverage_report(gold, pred);

  nlohmann::ordered_json j;
  j["sequences"] = gold.size();
  j["explicit"] = report.to_json();
  j["coverage"] = {{"coverage", cov.coverage}, {"slots", cov.slots}, {"filled", cov.filled}};
  std::cout << to_table(report) << "coverage " << cov.coverage << " (" << cov.filled << "/" << cov.slots << ")\n";
  if (a.confusion) {
    nlohmann::ordered_json c = nlohmann::ordered_json::array();
    for (const SenseLexicon* lex : {r.res.arg_marker, r.res.disc_rel}) {
      if (!lex) continue;
      const auto conf = sense_confusion(gold, pred, *lex);
      c.push_back(conf.to_json());
      std::cout << '\n' << to_string(lex->kind()) << '\n' << conf.to_table();
    }
    j["confusion"] = c;
  }
  if (!a.out.empty()) {
    Output out(a.out);
    out.get() << j.dump() << '\n';
  }
  return 0;
}

struct EvalDownstreamArgs {
  std::string instances, out, policy = "contiguity";
  std::vector<std::string> preds;
  MetricFlags metrics;
};

int run_eval_downstream(const EvalDownstreamArgs& a) {
  auto in = open_in(a.instances);
  const auto base = read_instances(in);
  Resources r;
  r.load(a.metrics.vectors, a.metrics.retrofit_vectors, a.metrics.sentence_vectors, a.metrics.lexicons);
  const ProjectionPolicy policy = parse_policy(a.policy);

  std::vector<RunReport> runs;
  Output out(a.out);
  for (const auto& path : a.preds) {
    auto instances = base;
    attach_predictions(instances, read_conll(fs::path(path)), policy);
    runs.push_back(evaluate_run(instances, r.res));
    nlohmann::ordered_json j;
    j["pred"] = fs::path(path).filename().string();
    j["report"] = runs.back().to_json();
    out.get() << j.dump() << '\n';
  }
  nlohmann::ordered_json summary;
  summary["summary"] = summarize_runs(runs);
  out.get() << summary.dump() << '\n';
  if (!a.out.empty() && a.out != "-") {
    const auto s = summarize_runs(runs);
    for (const char* k : {"span_f1", "token_accuracy", "token_macro_f1"}) {
      std::cout << k << ' ' << s[k]["mean"].get<double>() << " (+- " << s[k]["std"].get<double>() << ")\n";
    }
  }
  return 0;
}

struct AgreementArgs {
  std::string a, b, metric = "kappa";
};

std::vector<std::string> read_lines(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(line.substr(line.find_first_not_of(" \t")));
  }
  return out;
}

std::vector<double> to_numbers(const std::vector<std::string>& v, const std::string& path) {
  std::vector<double> out;
  for (const auto& s : v) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(s, &used));
      if (s.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(s);
    } catch (const std::logic_error&) {
      throw DataError(path + ": '" + s + "' is not a number");
    }
  }
  return out;
}

int run_agreement(const AgreementArgs& a) {
  const auto ra = read_lines(a.a);
  const auto rb = read_lines(a.b);
  nlohmann::ordered_json j;
  j["n"] = ra.size();
  if (a.metric == "kappa" || a.metric == "both") j["kappa"] = cohens_kappa(ra, rb);
  if (a.metric == "pearson" || a.metric == "both") j["pearson"] = pearson(to_numbers(ra, a.a), to_numbers(rb, a.b));
  if (!j.contains("kappa") && !j.contains("pearson")) throw UsageError("--metric must be kappa, pearson or both");
  std::cout << j.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discourse-marker augmentation and evaluation toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate-artificial", "render the template dataset from core elements");
  g->add_option("--cores", gen.cores, "core elements (.tsv or .jsonl)")->required();
  g->add_option("--stance", gen.stance, "both | original");
  g->add_option("--seed", gen.seed, "DM draw seed");
  g->add_option("--mask", gen.mask, "mask placeholder");
  g->add_option("--split", gen.split, "split name stored in each record");
  g->add_option("--format", gen.format, "jsonl | e2e");
  g->add_option("--conll", gen.conll, "also write distinct texts with ADU labels as CoNLL");
  g->add_option("--out", gen.out, "output file (default stdout)");

  CorpusArgs ext;
  auto* e = app.add_subcommand("extract-dms", "gold DM slots per paragraph");
  e->add_option("--input", ext.input, "CoNLL corpus")->required();
  e->add_option("--schema", ext.schema, "pec | mtx | hotel | artificial");
  e->add_option("--lexicon", ext.lexicon, "DM list: use the ADU-prefix heuristic");
  e->add_option("--out", ext.out, "output JSONL (default stdout)");

  CorpusArgs rem;
  auto* r = app.add_subcommand("remove-dms", "delete explicit DMs and repair the text");
  r->add_option("--input", rem.input, "CoNLL corpus")->required();
  r->add_option("--schema", rem.schema, "pec | mtx | hotel | artificial");
  r->add_option("--lexicon", rem.lexicon, "DM list: use the ADU-prefix heuristic");
  r->add_option("--out", rem.out, "output CoNLL (default stdout)");

  AugmentArgs aug;
  auto* au = app.add_subcommand("augment", "remove, augment and project: write x_m/y_m training files");
  au->add_option("--input", aug.input, "CoNLL corpus")->required();
  au->add_option("--input-mode", aug.input_mode, "original | removed_dms");
  au->add_option("--augmenter", aug.augmenter, "none | rule | remote");
  au->add_option("--endpoint", aug.endpoint, "augmentation service, e.g. http://localhost:8000");
  au->add_option("--timeout", aug.timeout, "request timeout in seconds");
  au->add_option("--in-flight", aug.in_flight, "concurrent remote requests");
  au->add_option("--seed", aug.seed, "DM draw seed for the rule augmenter");
  au->add_option("--schema", aug.schema, "pec | mtx | hotel | artificial");
  au->add_option("--lexicon", aug.lexicon, "DM list: gold DMs from the ADU prefix");
  au->add_option("--projection", aug.projection, "contiguity | strict_o");
  au->add_option("--out", aug.out, "output directory");

  PairArgs pr;
  auto* pp = app.add_subcommand("prepare-pairs", "seq2seq training pairs");
  pp->add_option("--format", pr.format, "discovery | pdtb");
  pp->add_option("--input", pr.input, "Discovery TSV or relation JSONL")->required();
  pp->add_flag("--tsv", pr.tsv, "write TSV instead of JSONL");
  pp->add_option("--out", pr.out, "output file (default stdout)");

  ProjectArgs pj;
  auto* p = app.add_subcommand("project", "carry labels onto edited token sequences");
  p->add_option("--source", pj.source, "labeled CoNLL")->required();
  p->add_option("--target", pj.target, "edited texts, one per line, or a .conll file")->required();
  p->add_option("--policy", pj.policy, "contiguity | strict_o");
  p->add_option("--out", pj.out, "output CoNLL (default stdout)");

  EvalDmArgs ed;
  auto* edm = app.add_subcommand("eval-dm", "DM accuracy and coverage");
  edm->add_option("--gold", ed.gold, "JSONL, one slot list per line");
  edm->add_option("--pred", ed.pred, "JSONL, one slot list per line");
  edm->add_option("--instances", ed.instances, "instances.jsonl from augment");
  edm->add_flag("--confusion", ed.confusion, "print sense confusion tables");
  edm->add_option("--out", ed.out, "write the JSON report here");
  ed.metrics.add_to(edm);

  EvalDownstreamArgs eds;
  auto* edown = app.add_subcommand("eval-downstream", "back-project tagger output and score it");
  edown->add_option("--instances", eds.instances, "instances.jsonl from augment")->required();
  edown->add_option("--pred", eds.preds, "tagger output on x_m as CoNLL (repeat per seed)")->required();
  edown->add_option("--policy", eds.policy, "contiguity | strict_o");
  edown->add_option("--out", eds.out, "report JSONL (default stdout)");
  eds.metrics.add_to(edown);

  AgreementArgs ag;
  auto* agr = app.add_subcommand("agreement", "Cohen's kappa / Pearson correlation");
  agr->add_option("--a", ag.a, "ratings, one per line")->required();
  agr->add_option("--b", ag.b, "ratings, one per line")->required();
  agr->add_option("--metric", ag.metric, "kappa | pearson | both");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 1;
  }

  try {
    if (g->parsed()) return run_generate(gen);
    if (e->parsed()) return run_extract(ext);
    if (r->parsed()) return run_remove(rem);
    if (au->parsed()) return run_augment(aug);
    if (pp->parsed()) return run_pairs(pr);
    if (p->parsed()) return run_project(pj);
    if (edm->parsed()) return run_eval_dm(ed);
    if (edown->parsed()) return run_eval_downstream(eds);
    if (agr->parsed()) return run_agreement(ag);
  } catch (const UsageError& ex) {
    std::cerr << "dmaug: " << ex.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "dmaug: " << ex.what() << '\n';
    return 1;
  } catch (const RemoteError& ex) {
    std::cerr << "dmaug: remote: " << ex.what() << '\n';
    return 3;
  } catch (const DataError& ex) {
    std::cerr << "dmaug: " << ex.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& ex) {
    std::cerr << "dmaug: " << ex.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& ex) {
    std::cerr << "dmaug: " << ex.what() << '\n';
    return 2;
  }
  return 1;
}
