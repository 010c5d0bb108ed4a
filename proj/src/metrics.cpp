#include "dmaug/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

namespace dmaug {

void EmbeddingTable::add(std::string word, std::vector<double> vec) {
  if (vec.size() != dim_) {
    throw DataError("vector for '" + word + "' has dimension " + std::to_string(vec.size()) + ", expected " +
                    std::to_string(dim_));
  }
  folded_.try_emplace(text::fold(word), word);
  vectors_[std::move(word)] = std::move(vec);
}

const std::vector<double>* EmbeddingTable::lookup(std::string_view word) const {
  if (auto it = vectors_.find(std::string(word)); it != vectors_.end()) return &it->second;
  const std::string f = text::fold(word);
  if (auto it = vectors_.find(f); it != vectors_.end()) return &it->second;
  if (auto it = folded_.find(f); it != folded_.end()) return &vectors_.at(it->second);
  return nullptr;
}

EmbeddingTable EmbeddingTable::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("vector file is empty");
  std::istringstream header(line);
  std::size_t count = 0;
  std::size_t dim = 0;
  if (!(header >> count >> dim) || dim == 0) throw DataError("vector file header must be 'count dimension'");
  EmbeddingTable table(dim);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    std::istringstream row(line);
    std::string word;
    row >> word;
    std::vector<double> vec;
    vec.reserve(dim);
    double v = 0;
    while (row >> v) vec.push_back(v);
    if (!row.eof()) throw DataError("vector file line " + std::to_string(lineno) + ": bad number");
    if (vec.size() != dim) {
      throw DataError("vector file line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                      " values, got " + std::to_string(vec.size()));
    }
    table.add(text::nfc(word), std::move(vec));
  }
  if (table.size() != count) {
    throw DataError("vector file declares " + std::to_string(count) + " words but holds " +
                    std::to_string(table.size()));
  }
  return table;
}

EmbeddingTable EmbeddingTable::read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read(in);
}

std::string to_string(SenseKind k) { return k == SenseKind::arg_marker ? "arg_marker" : "disc_rel"; }

const std::vector<std::string>& SenseLexicon::labels(SenseKind kind) {
  // arg-marker labels in precedence order
  static const std::vector<std::string> arg{"thesis", "rebuttal", "backward", "forward"};
  static const std::vector<std::string> rel{"Comparison", "Contingency", "Expansion", "Temporal"};
  return kind == SenseKind::arg_marker ? arg : rel;
}

void SenseLexicon::add(std::string_view dm, std::string_view sense) {
  const auto& allowed = labels(kind_);
  const auto rank = std::find(allowed.begin(), allowed.end(), sense);
  if (rank == allowed.end()) {
    throw DataError("'" + std::string(sense) + "' is not a " + to_string(kind_) + " sense");
  }
  const std::string key = normalize_dm(dm);
  if (key.empty()) throw DataError("empty DM in sense lexicon");
  auto [it, inserted] = map_.try_emplace(key, *rank);
  if (inserted || it->second == *rank) return;
  if (kind_ == SenseKind::disc_rel) {
    throw DataError("DM '" + key + "' listed with senses " + it->second + " and " + std::string(sense));
  }
  if (rank < std::find(allowed.begin(), allowed.end(), it->second)) it->second = *rank;
}

std::optional<std::string> SenseLexicon::sense_of(std::string_view dm) const {
  auto it = map_.find(normalize_dm(dm));
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

SenseLexicon SenseLexicon::read(std::istream& in, std::optional<SenseKind> kind) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("sense lexicon line " + std::to_string(lineno) + ": expected dm<TAB>sense");
    std::string sense = text::trim(line.substr(tab + 1));
    // trailing comments are allowed after the sense
    if (auto hash = sense.find('#'); hash != std::string::npos) sense = text::trim(sense.substr(0, hash));
    rows.emplace_back(line.substr(0, tab), sense);
  }
  if (rows.empty()) throw DataError("sense lexicon is empty");
  if (!kind) {
    auto all_in = [&](SenseKind k) {
      const auto& allowed = labels(k);
      return std::all_of(rows.begin(), rows.end(), [&](const auto& r) {
        return std::find(allowed.begin(), allowed.end(), r.second) != allowed.end();
      });
    };
    if (all_in(SenseKind::arg_marker)) {
      kind = SenseKind::arg_marker;
    } else if (all_in(SenseKind::disc_rel)) {
      kind = SenseKind::disc_rel;
    } else {
      throw DataError("sense lexicon mixes labels of both kinds or uses unknown senses");
    }
  }
  SenseLexicon lex(*kind);
  for (const auto& [dm, sense] : rows) lex.add(dm, sense);
  return lex;
}

SenseLexicon SenseLexicon::read(const std::filesystem::path& path, std::optional<SenseKind> kind) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read(in, kind);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) return 0.0;
  double dot = 0;
  double na = 0;
  double nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> average_vector(std::string_view dm, const EmbeddingTable& table) {
  std::vector<double> sum(table.dimension(), 0.0);
  std::size_t found = 0;
  for (const auto& tok : tokenize(dm)) {
    const auto* v = table.lookup(tok);
    if (!v) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    ++found;
  }
  if (found == 0) return {};
  for (auto& x : sum) x /= static_cast<double>(found);
  return sum;
}

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

bool same_dm(std::string_view a, std::string_view b) {
  const std::string na = normalize_dm(a);
  return !na.empty() && na == normalize_dm(b);
}

}  // namespace

double avg_vector_similarity(std::string_view pred, std::string_view gold, const EmbeddingTable& table) {
  if (same_dm(pred, gold)) return 1.0;
  const auto p = average_vector(pred, table);
  const auto g = average_vector(gold, table);
  if (p.empty() || g.empty()) return 0.0;
  return clamp01(cosine(p, g));
}

std::vector<double> TableSentenceEncoder::encode(std::string_view text) const {
  return average_vector(text, *table_);
}

double sentence_similarity(std::string_view pred, std::string_view gold, const SentenceEncoder& enc) {
  if (same_dm(pred, gold)) return 1.0;
  const auto p = enc.encode(pred);
  const auto g = enc.encode(gold);
  if (p.empty() || g.empty()) return 0.0;
  return clamp01(cosine(p, g));
}

std::optional<std::string> sense_of(std::string_view dm, const SenseLexicon& lex) { return lex.sense_of(dm); }

SenseMatch sense_match(std::string_view pred, std::string_view gold, const SenseLexicon& lex) {
  const auto g = lex.sense_of(gold);
  if (!g) return SenseMatch::excluded;
  const auto p = lex.sense_of(pred);
  return p && *p == *g ? SenseMatch::match : SenseMatch::mismatch;
}

namespace {

void check_shapes(const std::vector<SlotTexts>& gold, const std::vector<SlotTexts>& pred) {
  if (gold.size() != pred.size()) {
    throw DataError("gold has " + std::to_string(gold.size()) + " sequences, prediction has " +
                    std::to_string(pred.size()));
  }
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw DataError("sequence " + std::to_string(i) + ": gold has " + std::to_string(gold[i].size()) +
                      " slots, prediction has " + std::to_string(pred[i].size()));
    }
  }
}

// Accumulates the sequence-then-corpus mean for one metric.
struct Averager {
  double corpus_sum = 0;
  double seq_sum = 0;
  std::size_t seq_n = 0;
  MetricValue v;

  void add(double x) {
    seq_sum += x;
    ++seq_n;
    ++v.occurrences;
  }
  void end_sequence() {
    if (seq_n > 0) {
      corpus_sum += seq_sum / static_cast<double>(seq_n);
      ++v.sequences;
    }
    seq_sum = 0;
    seq_n = 0;
  }
  MetricValue result() const {
    MetricValue out = v;
    out.mean = v.sequences ? corpus_sum / static_cast<double>(v.sequences) : 0.0;
    return out;
  }
};

bool has_text(const std::string& s) { return !text::trim(s).empty(); }

nlohmann::ordered_json value_json(const std::optional<MetricValue>& v, bool sense) {
  if (!v) return nullptr;
  nlohmann::ordered_json j;
  j["mean"] = v->mean;
  j["occurrences"] = v->occurrences;
  j["sequences"] = v->sequences;
  if (sense) j["excluded"] = v->excluded;
  return j;
}

}  // namespace

MetricReport explicit_accuracy_report(const std::vector<SlotTexts>& gold, const std::vector<SlotTexts>& pred,
                                      const MetricResources& res) {
  check_shapes(gold, pred);
  Averager word, retro, sbert, arg, rel;
  MetricReport report;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    for (std::size_t k = 0; k < gold[s].size(); ++k) {
      const std::string& g = gold[s][k];
      if (!has_text(g)) continue;
      const std::string& p = pred[s][k];
      ++report.gold_slots;
      if (res.word) word.add(avg_vector_similarity(p, g, *res.word));
      if (res.retrofit) retro.add(avg_vector_similarity(p, g, *res.retrofit));
      if (res.encoder) sbert.add(sentence_similarity(p, g, *res.encoder));
      auto sense = [&](Averager& acc, const SenseLexicon* lex) {
        if (!lex) return;
        const SenseMatch m = sense_match(p, g, *lex);
        if (m == SenseMatch::excluded) {
          ++acc.v.excluded;
        } else {
          acc.add(m == SenseMatch::match ? 1.0 : 0.0);
        }
      };
      sense(arg, res.arg_marker);
      sense(rel, res.disc_rel);
    }
    for (Averager* a : {&word, &retro, &sbert, &arg, &rel}) a->end_sequence();
  }
  if (res.word) report.word_embs = word.result();
  if (res.retrofit) report.retrofit_embs = retro.result();
  if (res.encoder) report.sbert_embs = sbert.result();
  if (res.arg_marker) report.arg_marker = arg.result();
  if (res.disc_rel) report.disc_rel = rel.result();
  return report;
}

nlohmann::ordered_json MetricReport::to_json() const {
  nlohmann::ordered_json j;
  j["gold_slots"] = gold_slots;
  // absent metrics are omitted rather than reported as zero
  auto put = [&](const char* name, const std::optional<MetricValue>& v, bool sense) {
    if (v) j[name] = value_json(v, sense);
  };
  put("word_embs", word_embs, false);
  put("retrofit_embs", retrofit_embs, false);
  put("sbert_embs", sbert_embs, false);
  put("arg_marker", arg_marker, true);
  put("disc_rel", disc_rel, true);
  return j;
}

std::string to_table(const MetricReport& r) {
  std::ostringstream out;
  out << std::left << std::setw(16) << "metric" << std::right << std::setw(8) << "mean" << std::setw(8) << "n"
      << std::setw(10) << "excluded" << '\n';
  auto row = [&](const char* name, const std::optional<MetricValue>& v) {
    out << std::left << std::setw(16) << name << std::right;
    if (!v) {
      out << std::setw(8) << "-" << std::setw(8) << "-" << std::setw(10) << "-" << '\n';
      return;
    }
    out << std::setw(8) << std::fixed << std::setprecision(4) << v->mean << std::setw(8) << v->occurrences
        << std::setw(10) << v->excluded << '\n';
  };
  row("word_embs", r.word_embs);
  row("retrofit_embs", r.retrofit_embs);
  row("sbert_embs", r.sbert_embs);
  row("arg_marker", r.arg_marker);
  row("disc_rel", r.disc_rel);
  return out.str();
}

CoverageReport coverage_report(const std::vector<SlotTexts>& gold, const std::vector<SlotTexts>& pred) {
  check_shapes(gold, pred);
  CoverageReport r;
  double sum = 0;
  std::size_t seqs = 0;
  for (const auto& seq : pred) {
    if (seq.empty()) continue;
    std::size_t filled = 0;
    for (const auto& p : seq) filled += has_text(p) ? 1 : 0;
    sum += static_cast<double>(filled) / static_cast<double>(seq.size());
    ++seqs;
    r.slots += seq.size();
    r.filled += filled;
  }
  r.coverage = seqs ? sum / static_cast<double>(seqs) : 0.0;
  return r;
}

SenseConfusion sense_confusion(const std::vector<SlotTexts>& gold, const std::vector<SlotTexts>& pred,
                               const SenseLexicon& lex) {
  check_shapes(gold, pred);
  SenseConfusion c;
  c.kind = lex.kind();
  for (std::size_t s = 0; s < gold.size(); ++s) {
    for (std::size_t k = 0; k < gold[s].size(); ++k) {
      if (!has_text(gold[s][k])) continue;
      const std::string g = lex.sense_of(gold[s][k]).value_or("NONE");
      const std::string p = lex.sense_of(pred[s][k]).value_or("NONE");
      ++c.counts[g][p];
    }
  }
  return c;
}

nlohmann::ordered_json SenseConfusion::to_json() const {
  nlohmann::ordered_json j;
  j["kind"] = to_string(kind);
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  for (const auto& [g, row] : counts) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (const auto& [p, n] : row) r[p] = n;
    m[g] = r;
  }
  j["counts"] = m;
  return j;
}

std::string SenseConfusion::to_table() const {
  std::set<std::string> cols;
  for (const auto& [g, row] : counts) {
    for (const auto& [p, n] : row) cols.insert(p);
  }
  std::size_t w = 8;
  for (const auto& c : cols) w = std::max(w, c.size() + 2);
  for (const auto& [g, row] : counts) w = std::max(w, g.size() + 2);
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(w)) << "gold\\pred";
  for (const auto& c : cols) out << std::right << std::setw(static_cast<int>(w)) << c;
  out << '\n';
  for (const auto& [g, row] : counts) {
    out << std::left << std::setw(static_cast<int>(w)) << g;
    for (const auto& c : cols) {
      auto it = row.find(c);
      out << std::right << std::setw(static_cast<int>(w)) << (it == row.end() ? 0 : it->second);
    }
    out << '\n';
  }
  return out.str();
}

namespace {

void check_labels(const std::vector<LabelSequence>& gold, const std::vector<LabelSequence>& pred) {
  if (gold.size() != pred.size()) throw DataError("gold and prediction hold different numbers of sequences");
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i].size() != pred[i].size()) {
      throw DataError("sequence " + std::to_string(i) + ": gold has " + std::to_string(gold[i].size()) +
                      " labels, prediction has " + std::to_string(pred[i].size()));
    }
  }
}

double f1_of(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

}  // namespace

PrfScore span_f1(const std::vector<LabelSequence>& gold, const std::vector<LabelSequence>& pred) {
  check_labels(gold, pred);
  PrfScore s;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto gs = bio_to_spans(gold[i]);
    const auto ps = bio_to_spans(pred[i]);
    s.gold += gs.size();
    s.predicted += ps.size();
    for (const auto& p : ps) {
      if (std::find(gs.begin(), gs.end(), p) != gs.end()) ++s.true_positives;
    }
  }
  s.precision = s.predicted ? static_cast<double>(s.true_positives) / static_cast<double>(s.predicted) : 0.0;
  s.recall = s.gold ? static_cast<double>(s.true_positives) / static_cast<double>(s.gold) : 0.0;
  s.f1 = f1_of(s.precision, s.recall);
  return s;
}

TokenScore token_metrics(const std::vector<LabelSequence>& gold, const std::vector<LabelSequence>& pred) {
  check_labels(gold, pred);
  struct Counts {
    std::size_t tp = 0, gold = 0, pred = 0;
  };
  std::map<std::string, Counts> per;
  std::size_t total = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    for (std::size_t k = 0; k < gold[i].size(); ++k) {
      const auto& g = gold[i][k];
      const auto& p = pred[i][k];
      ++per[g].gold;
      ++per[p].pred;
      if (g == p) {
        ++per[g].tp;
        ++correct;
      }
      ++total;
    }
  }
  TokenScore s;
  if (total == 0) return s;
  s.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  double sum = 0;
  for (const auto& [label, c] : per) {
    const double p = c.pred ? static_cast<double>(c.tp) / static_cast<double>(c.pred) : 0.0;
    const double r = c.gold ? static_cast<double>(c.tp) / static_cast<double>(c.gold) : 0.0;
    sum += f1_of(p, r);
  }
  s.macro_f1 = sum / static_cast<double>(per.size());
  return s;
}

double cohens_kappa(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() != b.size()) throw DataError("kappa: rating arrays differ in length");
  if (a.empty()) throw DataError("kappa: no ratings");
  const double n = static_cast<double>(a.size());
  std::map<std::string, std::pair<std::size_t, std::size_t>> marg;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marg[a[i]].first;
    ++marg[b[i]].second;
    agree += a[i] == b[i] ? 1 : 0;
  }
  // p_e = 1 exactly when both raters use one and the same label throughout
  if (marg.size() == 1) return 1.0;
  double pe = 0;
  for (const auto& [label, c] : marg) pe += (static_cast<double>(c.first) / n) * (static_cast<double>(c.second) / n);
  const double po = static_cast<double>(agree) / n;
  return (po - pe) / (1.0 - pe);
}

double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<std::string> sa, sb;
  sa.reserve(a.size());
  sb.reserve(b.size());
  for (int x : a) sa.push_back(std::to_string(x));
  for (int x : b) sb.push_back(std::to_string(x));
  return cohens_kappa(sa, sb);
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DataError("pearson: arrays differ in length");
  if (x.size() < 2) throw DataError("pearson: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0) throw DataError("pearson: x has zero variance");
  if (syy == 0) throw DataError("pearson: y has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace dmaug
