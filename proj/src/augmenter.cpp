#include "dmaug/augmenter.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

namespace dmaug {

RoleMap default_role_map(const CorpusSchema& schema) {
  if (schema.name == "artificial") {
    return {{"Claim", RoleClass::claim}, {"Support", RoleClass::support}, {"Attack", RoleClass::attack}};
  }
  RoleMap m;
  for (const auto& label : schema.adu_labels) {
    const bool claim = label == "Claim" || label == "MajorClaim" || label == "Recommendation";
    m[label] = claim ? RoleClass::claim : RoleClass::support;
  }
  return m;
}

RuleAugmentResult rule_based_augment(const AnnotatedParagraph& p, const std::vector<DmSlot>& slots,
                                     const DmPolicy& policy, const RoleMap& role_map, std::string_view key) {
  std::vector<bool> explicit_dm(p.adus.size(), false);
  for (const auto& s : slots) {
    if (s.adu_index >= p.adus.size()) throw DataError("DM slot refers to a missing ADU");
    if (!text::trim(s.text).empty()) explicit_dm[s.adu_index] = true;
  }

  struct Insertion {
    std::vector<std::string> tokens;
    bool decapitalize = false;
    std::size_t adu = 0;
    std::string display;
  };
  std::map<std::size_t, Insertion> at;  // keyed by token index
  for (std::size_t k = 0; k < p.adus.size(); ++k) {
    if (explicit_dm[k]) continue;
    const AduSpan& adu = p.adus[k];
    auto role = role_map.find(adu.label);
    if (role == role_map.end()) throw DataError("no role class for ADU label '" + adu.label + "'");

    const std::size_t sent = p.sentence_start_of(adu.start);
    bool initial = true;
    for (std::size_t t = sent; t < adu.start && initial; ++t) initial = text::is_punct(p.tokens[t]);
    bool alone = true;
    const std::size_t sent_end = p.sentence_end_of(adu.start);
    for (std::size_t j = k + 1; j < p.adus.size() && alone; ++j) alone = p.adus[j].start >= sent_end;
    const bool lead = initial && alone && role->second != RoleClass::claim;

    const std::string& dm =
        policy.pick(role->second, lead ? SlotKind::lead : SlotKind::mid, std::string(key) + "#" + std::to_string(k + 1));
    Insertion ins;
    ins.display = initial ? text::upper_first(dm) : dm;
    ins.tokens = tokenize(ins.display).tokens();
    if (lead) ins.tokens.emplace_back(",");
    ins.decapitalize = initial;
    ins.adu = k;
    at[adu.start] = std::move(ins);
  }

  RuleAugmentResult r;
  r.inserted.resize(p.adus.size());
  for (std::size_t k = 0; k < p.adus.size(); ++k) r.inserted[k].adu_index = k;
  std::vector<std::string> out;
  std::vector<std::size_t> index_of(p.tokens.size() + 1, 0);
  for (std::size_t i = 0; i < p.tokens.size(); ++i) {
    auto it = at.find(i);
    if (it != at.end()) {
      out.insert(out.end(), it->second.tokens.begin(), it->second.tokens.end());
      r.inserted[it->second.adu].text = it->second.display;
    }
    index_of[i] = out.size();
    const bool decap = it != at.end() && it->second.decapitalize;
    out.push_back(decap ? text::decapitalize_word(p.tokens[i]) : p.tokens[i]);
  }
  r.tokens = TokenSequence(std::move(out));
  for (const auto& adu : p.adus) r.adus.push_back({index_of[adu.start], index_of[adu.end - 1] + 1, adu.label});
  return r;
}

RuleAugmentResult rule_based_augment(const AnnotatedParagraph& p, const DmPolicy& policy, const RoleMap& role_map) {
  return rule_based_augment(p, gold_dms_left_context(p), policy, role_map, detokenize(p.tokens));
}

// ---------------------------------------------------------------------------

RemoteAugmenter::RemoteAugmenter(std::string endpoint, RemoteOptions options)
    : endpoint_(std::move(endpoint)), options_(options) {
  std::string e = text::trim(endpoint_);
  if (e.find("://") == std::string::npos) e = "http://" + e;
  if (e.rfind("http://", 0) != 0) throw std::invalid_argument("endpoint must be an http:// URL: " + endpoint_);
  const auto path = e.find('/', 7);
  host_ = e.substr(0, path);
  const std::string authority = host_.substr(7);
  if (authority.empty() || authority.find_first_of(" \t@") != std::string::npos) {
    throw std::invalid_argument("malformed endpoint: " + endpoint_);
  }
  prefix_ = path == std::string::npos ? "" : e.substr(path);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
}

std::string RemoteAugmenter::augment(const AugmentRequest& req) const {
  httplib::Client cli(host_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(options_.timeout - secs);
  cli.set_connection_timeout(secs.count(), usecs.count());
  cli.set_read_timeout(secs.count(), usecs.count());
  cli.set_write_timeout(secs.count(), usecs.count());

  const std::string body = nlohmann::json{{"text", req.text}}.dump();
  const std::string path = prefix_ + "/v1/augment";
  for (int attempt = 0;; ++attempt) {
    const bool last = attempt >= options_.retries;
    const auto started = std::chrono::steady_clock::now();
    auto res = cli.Post(path, body, "application/json");
    if (!res) {
      const auto err = res.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read &&
                              std::chrono::steady_clock::now() - started >= options_.timeout);
      if (!last) continue;
      const std::string what = endpoint_ + ": " + httplib::to_string(err);
      if (timed_out) throw RemoteTimeoutError(what);
      throw RemoteConnectionError(what);
    }
    if (res->status >= 500 && !last) continue;
    if (res->status != 200) {
      throw RemoteStatusError(res->status, endpoint_ + " answered HTTP " + std::to_string(res->status));
    }
    nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("augmented_text") || !j["augmented_text"].is_string()) {
      throw RemoteMalformedResponse(endpoint_ + ": response lacks a string 'augmented_text'");
    }
    return j["augmented_text"].get<std::string>();
  }
}

std::vector<RemoteAugmenter::Outcome> RemoteAugmenter::augment_batch(const std::vector<std::string>& texts) const {
  std::vector<Outcome> out(texts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < texts.size(); i = next++) {
      try {
        out[i].text = augment(texts[i]);
      } catch (const RemoteError& e) {
        out[i].error = e.what();
      }
    }
  };
  const std::size_t n = std::min(options_.max_in_flight, texts.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool is_terminal_char(char c) { return c == '.' || c == '!' || c == '?'; }

constexpr std::string_view kEllipsis = "\xE2\x80\xA6";

std::string with_single_terminal(std::string s) {
  std::string run;
  for (;;) {
    if (!s.empty() && is_terminal_char(s.back())) {
      run.insert(run.begin(), s.back());
      s.pop_back();
    } else if (s.size() >= kEllipsis.size() && s.compare(s.size() - kEllipsis.size(), kEllipsis.size(), kEllipsis) == 0) {
      run.insert(0, ".");
      s.resize(s.size() - kEllipsis.size());
    } else {
      break;
    }
  }
  s = text::trim(s);
  const char mark = run.find('?') != std::string::npos ? '?' : run.find('!') != std::string::npos ? '!' : '.';
  return s + mark;
}

// Lowercases the first word of s when it is a plain capitalized word.
std::string decapitalize_start(const std::string& s) {
  const auto ws = s.find_first_of(" \t\n");
  const std::string first = s.substr(0, ws);
  return text::decapitalize_word(first) + (ws == std::string::npos ? "" : s.substr(ws));
}

std::string rtrim(std::string_view s) {
  const auto last = s.find_last_not_of(" \t\r\n");
  return last == std::string_view::npos ? std::string() : std::string(s.substr(0, last + 1));
}

std::string ltrim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  return first == std::string_view::npos ? std::string() : std::string(s.substr(first));
}

// Whether text ending in `left` (already right-trimmed) is at a sentence start.
bool at_sentence_start(const std::string& left) {
  if (left.empty()) return true;
  std::string l = left;
  // closing quotes and brackets after the terminal mark
  while (!l.empty() && (l.back() == '"' || l.back() == '\'' || l.back() == ')')) l.pop_back();
  if (l.size() >= 3 && (l.compare(l.size() - 3, 3, "\xE2\x80\x9D") == 0 || l.compare(l.size() - 3, 3, "\xE2\x80\x99") == 0)) {
    l.resize(l.size() - 3);
  }
  if (l.empty()) return false;
  if (is_terminal_char(l.back())) return true;
  return l.size() >= kEllipsis.size() && l.compare(l.size() - kEllipsis.size(), kEllipsis.size(), kEllipsis) == 0;
}

// Last code point of s as UTF-8 text.
std::string last_char(const std::string& s) {
  std::size_t i = s.size();
  while (i > 0) {
    --i;
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) break;
  }
  return s.substr(i);
}

}  // namespace

std::pair<std::string, std::string> prepare_discovery_pair(const DiscoveryPair& d) {
  const std::string s1 = text::trim(d.s1);
  const std::string s2 = text::trim(d.s2);
  const std::string y = text::trim(d.y);
  if (s1.empty()) throw DataError("discovery pair: empty s1");
  if (s2.empty()) throw DataError("discovery pair: empty s2");
  if (y.empty()) throw DataError("discovery pair: empty connective");
  const std::string head = with_single_terminal(s1);
  return {head + " " + s2, head + " " + text::upper_first(y) + " " + decapitalize_start(s2)};
}

std::string remove_connectives(const std::string& text, std::vector<ExplicitConnective> spans) {
  std::sort(spans.begin(), spans.end(), [](const auto& a, const auto& b) { return a.start > b.start; });
  std::string out = text;
  for (const auto& s : spans) {
    std::string left = rtrim(std::string_view(out).substr(0, s.start));
    std::string right = ltrim(std::string_view(out).substr(s.end));
    if (at_sentence_start(left)) {
      if (!right.empty() && right[0] == ',') right = ltrim(std::string_view(right).substr(1));
      right = text::upper_first(right);
      out = left.empty() ? right : left + " " + right;
    } else if (text::is_punct(last_char(left))) {
      if (!right.empty() && right[0] == ',') right = ltrim(std::string_view(right).substr(1));
      out = left + (right.empty() ? "" : " ") + right;
    } else if (!right.empty() && right[0] == ',') {
      out = left + right;
    } else {
      out = left + ", " + right;
    }
  }
  return out;
}

std::string insert_connectives(const std::string& text, std::vector<ImplicitConnective> points) {
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.offset > b.offset; });
  std::string out = text;
  for (const auto& p : points) {
    const std::string left = rtrim(std::string_view(out).substr(0, p.offset));
    const std::string right = ltrim(std::string_view(out).substr(p.offset));
    const std::string dm = text::trim(p.connective);
    std::string middle;
    if (at_sentence_start(left)) {
      middle = text::upper_first(dm) + (right.empty() ? "" : " " + decapitalize_start(right));
    } else {
      middle = dm + (right.empty() ? "" : " " + right);
    }
    out = left.empty() ? middle : left + " " + middle;
  }
  return out;
}

std::pair<std::string, std::string> prepare_pdtb_pairs(const PdtbRecord& doc) {
  // (start, end) intervals; an implicit point is an empty interval
  std::vector<std::pair<std::size_t, std::size_t>> all;
  for (const auto& e : doc.explicit_dms) {
    if (e.start >= e.end || e.end > doc.text.size()) {
      throw DataError("explicit connective span [" + std::to_string(e.start) + ", " + std::to_string(e.end) +
                      ") is out of range");
    }
    all.emplace_back(e.start, e.end);
  }
  for (const auto& i : doc.implicit_dms) {
    if (i.offset > doc.text.size()) throw DataError("implicit insertion point " + std::to_string(i.offset) + " is out of range");
    if (text::trim(i.connective).empty()) throw DataError("implicit connective without text");
    all.emplace_back(i.offset, i.offset);
  }
  std::sort(all.begin(), all.end());
  for (std::size_t k = 1; k < all.size(); ++k) {
    const auto& a = all[k - 1];
    const auto& b = all[k];
    const bool clash = b.first < a.second || a.first == b.first;
    if (clash) throw DataError("overlapping connective annotations at offset " + std::to_string(b.first));
  }
  return {remove_connectives(doc.text, doc.explicit_dms), insert_connectives(doc.text, doc.implicit_dms)};
}

std::vector<DiscoveryPair> read_discovery_tsv(std::istream& in) {
  std::vector<DiscoveryPair> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    std::vector<std::string> f;
    std::size_t from = 0;
    for (;;) {
      const auto tab = line.find('\t', from);
      f.push_back(line.substr(from, tab == std::string::npos ? std::string::npos : tab - from));
      if (tab == std::string::npos) break;
      from = tab + 1;
    }
    if (f.size() != 3) throw DataError("discovery line " + std::to_string(lineno) + ": expected 3 columns");
    if (out.empty() && lineno == 1 && f[0] == "s1" && f[1] == "s2" && f[2] == "y") continue;
    out.push_back({text::nfc(f[0]), text::nfc(f[1]), text::nfc(f[2])});
  }
  return out;
}

std::vector<PdtbRecord> read_pdtb_jsonl(std::istream& in) {
  std::vector<PdtbRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      PdtbRecord r;
      r.text = j.at("text").get<std::string>();
      if (j.contains("explicit")) {
        for (const auto& e : j.at("explicit")) {
          r.explicit_dms.push_back(
              {e.at("start").get<std::size_t>(), e.at("end").get<std::size_t>(), e.value("connective", "")});
        }
      }
      if (j.contains("implicit")) {
        for (const auto& i : j.at("implicit")) {
          r.implicit_dms.push_back({i.at("offset").get<std::size_t>(), i.at("connective").get<std::string>()});
        }
      }
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("relation record line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace dmaug
