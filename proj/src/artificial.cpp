#include "dmaug/artificial.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "dmaug/errors.hpp"
#include "dmaug/hash.hpp"
#include "dmaug/text.hpp"

namespace dmaug {

void CoreElements::validate() const {
  const std::pair<const char*, const std::string*> fields[] = {
      {"copa_id", &copa_id},
      {"claim_template", &claim_template},
      {"original_stance", &original_stance},
      {"opposite_stance", &opposite_stance},
      {"premise_support", &premise_support},
      {"premise_attack", &premise_attack},
  };
  for (const auto& [name, value] : fields) {
    if (text::trim(*value).empty()) throw DataError("core '" + copa_id + "': field " + name + " is empty");
  }
  const auto first = claim_template.find(kStancePlaceholder);
  if (first == std::string::npos) {
    throw DataError("core '" + copa_id + "': claim_template lacks the <STANCE> placeholder");
  }
  if (claim_template.find(kStancePlaceholder, first + 1) != std::string::npos) {
    throw DataError("core '" + copa_id + "': claim_template has more than one <STANCE> placeholder");
  }
}

void TemplateConfig::validate() const {
  if (num_adus != 2 && num_adus != 3) throw DataError("num_adus must be 2 or 3");
  if (claim_position != 1 && claim_position != 2) throw DataError("claim_position must be 1 or 2");
  if (num_adus == 2) {
    if (!premise_role) throw DataError("premise_role is required for 2-ADU templates");
    if (supportive_premise_position) throw DataError("supportive_premise_position is only used with 3 ADUs");
    if (prediction_type == PredictionType::dm3) throw DataError("prediction type dm3 requires 3 ADUs");
  } else {
    if (premise_role) throw DataError("premise_role is only used with 2 ADUs");
    if (!supportive_premise_position || (*supportive_premise_position != 1 && *supportive_premise_position != 2)) {
      throw DataError("supportive_premise_position must be 1 or 2 for 3-ADU templates");
    }
  }
}

std::string to_string(StanceRole r) { return r == StanceRole::original ? "original" : "opposite"; }
std::string to_string(PremiseRole r) { return r == PremiseRole::support ? "support" : "attack"; }
std::string to_string(RoleClass r) {
  switch (r) {
    case RoleClass::claim: return "claim";
    case RoleClass::support: return "support";
    case RoleClass::attack: return "attack";
  }
  return {};
}

std::string TemplateConfig::key() const {
  std::string k = std::to_string(num_adus) + "|" + to_string(stance_role) + "|c" + std::to_string(claim_position);
  if (premise_role) k += "|" + to_string(*premise_role);
  if (supportive_premise_position) k += "|sp" + std::to_string(*supportive_premise_position);
  k += "|dm" + std::to_string(static_cast<int>(prediction_type));
  return k;
}

const std::vector<std::string>& DmPolicy::set_for(RoleClass role, SlotKind slot) const {
  switch (role) {
    case RoleClass::claim: return claim_dms;
    case RoleClass::support: return slot == SlotKind::lead ? support_lead_dms : support_mid_dms;
    case RoleClass::attack: return slot == SlotKind::lead ? attack_lead_dms : attack_mid_dms;
  }
  return claim_dms;
}

const std::string& DmPolicy::pick(RoleClass role, SlotKind slot, std::string_view key) const {
  const auto& set = set_for(role, slot);
  if (set.empty()) throw DataError("DM policy has no entries for role " + to_string(role));
  const std::uint64_t h = mix64(fnv1a64(key) ^ mix64(seed));
  return set[static_cast<std::size_t>(h % set.size())];
}

std::vector<TemplateConfig> enumerate_configs(const std::set<StanceRole>& stance_roles) {
  if (stance_roles.empty()) throw DataError("at least one stance role is required");
  std::vector<TemplateConfig> configs;
  for (StanceRole stance : stance_roles) {
    for (int claim_position : {1, 2}) {
      for (PremiseRole role : {PremiseRole::support, PremiseRole::attack}) {
        for (PredictionType pt : {PredictionType::dm1, PredictionType::dm2}) {
          configs.push_back({2, stance, claim_position, role, std::nullopt, pt});
        }
      }
      for (int sp : {1, 2}) {
        for (PredictionType pt : {PredictionType::dm1, PredictionType::dm2, PredictionType::dm3}) {
          configs.push_back({3, stance, claim_position, std::nullopt, sp, pt});
        }
      }
    }
  }
  std::sort(configs.begin(), configs.end());
  return configs;
}

namespace {

struct Adu {
  std::string text;
  RoleClass role;
};

std::string replace_stance(const std::string& tmpl, const std::string& stance) {
  std::string out = tmpl;
  out.replace(out.find(kStancePlaceholder), kStancePlaceholder.size(), stance);
  return out;
}

std::string label_for(RoleClass role) {
  switch (role) {
    case RoleClass::claim: return "Claim";
    case RoleClass::support: return "Support";
    case RoleClass::attack: return "Attack";
  }
  return {};
}

// Assembles "D1 X1, D2 X2." (+ " D3, X3.") from parts; a null DM omits it.
struct Renderer {
  std::vector<Adu> adus;
  std::vector<std::string> dms;  // display forms

  std::string render(std::optional<std::size_t> masked, std::string_view mask, bool with_dms) const {
    auto dm_part = [&](std::size_t k) -> std::string {
      if (masked && *masked == k) return std::string(mask);
      return with_dms ? dms[k] : std::string();
    };
    auto join = [](const std::string& dm, const std::string& content) {
      return dm.empty() ? text::upper_first(content) : dm + " " + content;
    };
    std::string out = join(dm_part(0), adus[0].text) + ", ";
    const std::string d2 = dm_part(1);
    out += d2.empty() ? adus[1].text : d2 + " " + adus[1].text;
    out += ".";
    if (adus.size() == 3) {
      const std::string d3 = dm_part(2);
      out += " ";
      out += d3.empty() ? text::upper_first(adus[2].text) : d3 + ", " + adus[2].text;
      out += ".";
    }
    return out;
  }

  // Token offsets of each ADU inside the full text.
  std::vector<AduSpan> spans() const {
    std::vector<AduSpan> result;
    std::string prefix;
    for (std::size_t k = 0; k < adus.size(); ++k) {
      if (k == 1) prefix += ", ";
      if (k == 2) prefix += ". ";
      prefix += dms[k];
      if (k == 2 && !dms[k].empty()) prefix += ",";
      prefix += " ";
      const std::size_t start = tokenize(prefix).size();
      prefix += adus[k].text;
      const std::size_t end = tokenize(prefix).size();
      result.push_back({start, end, label_for(adus[k].role)});
    }
    return result;
  }
};

}  // namespace

ArtificialSample render_sample(const CoreElements& core, const TemplateConfig& config, const DmPolicy& policy,
                               std::string_view mask) {
  core.validate();
  config.validate();
  const bool original = config.stance_role == StanceRole::original;
  const std::string claim =
      replace_stance(core.claim_template, original ? core.original_stance : core.opposite_stance);
  // Premise roles are inverted for the opposite stance.
  const std::string& supporting = original ? core.premise_support : core.premise_attack;
  const std::string& attacking = original ? core.premise_attack : core.premise_support;

  Renderer r;
  if (config.num_adus == 2) {
    const bool support = *config.premise_role == PremiseRole::support;
    Adu premise{support ? supporting : attacking, support ? RoleClass::support : RoleClass::attack};
    Adu claim_adu{claim, RoleClass::claim};
    r.adus = config.claim_position == 1 ? std::vector<Adu>{claim_adu, premise} : std::vector<Adu>{premise, claim_adu};
  } else {
    const bool support_first = *config.supportive_premise_position == 1;
    Adu first{support_first ? supporting : attacking, support_first ? RoleClass::support : RoleClass::attack};
    Adu second{support_first ? attacking : supporting, support_first ? RoleClass::attack : RoleClass::support};
    Adu claim_adu{claim, RoleClass::claim};
    r.adus = config.claim_position == 1 ? std::vector<Adu>{claim_adu, first, second}
                                        : std::vector<Adu>{first, claim_adu, second};
  }

  // The draw ignores the prediction type so that samples differing only in
  // which DM is masked share the same text.
  TemplateConfig draw_config = config;
  draw_config.prediction_type = PredictionType::dm1;
  const std::string draw_key = core.copa_id + "#" + draw_config.key();
  for (std::size_t k = 0; k < r.adus.size(); ++k) {
    const SlotKind slot = k == 2 ? SlotKind::lead : SlotKind::mid;
    const std::string& dm = policy.pick(r.adus[k].role, slot, draw_key + "#" + std::to_string(k + 1));
    r.dms.push_back(k == 1 ? dm : text::upper_first(dm));
  }

  const std::size_t masked = static_cast<std::size_t>(config.prediction_type) - 1;
  ArtificialSample sample;
  sample.full_text = r.render(std::nullopt, mask, true);
  sample.masked_text = r.render(masked, mask, true);
  sample.input_text = r.render(std::nullopt, mask, false);
  sample.gold_dm = r.dms[masked];
  sample.adu_spans = r.spans();
  sample.dms = r.dms;
  sample.config = config;
  sample.copa_id = core.copa_id;
  return sample;
}

std::string unmask(const ArtificialSample& sample, std::string_view mask) {
  std::string out = sample.masked_text;
  const auto pos = out.find(mask);
  if (pos == std::string::npos) return out;
  out.replace(pos, mask.size(), sample.gold_dm);
  return out;
}

namespace {

void check_cores(const std::vector<CoreElements>& cores) {
  if (cores.empty()) throw DataError("no core elements supplied");
  std::unordered_set<std::string> seen;
  for (const auto& core : cores) {
    if (!seen.insert(core.copa_id).second) throw DataError("duplicate copa_id in split: " + core.copa_id);
  }
}

std::vector<ArtificialSample> render_core(const CoreElements& core, const std::vector<TemplateConfig>& configs,
                                          const DmPolicy& policy, std::string_view mask) {
  std::vector<ArtificialSample> out;
  out.reserve(configs.size());
  for (const auto& config : configs) out.push_back(render_sample(core, config, policy, mask));
  return out;
}

}  // namespace

std::vector<ArtificialSample> generate_split_serial(const std::vector<CoreElements>& cores,
                                                    const std::set<StanceRole>& stance_roles,
                                                    const DmPolicy& policy, std::string_view mask) {
  check_cores(cores);
  const auto configs = enumerate_configs(stance_roles);
  std::vector<ArtificialSample> out;
  out.reserve(cores.size() * configs.size());
  for (const auto& core : cores) {
    auto part = render_core(core, configs, policy, mask);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<ArtificialSample> generate_split(const std::vector<CoreElements>& cores,
                                             const std::set<StanceRole>& stance_roles, const DmPolicy& policy,
                                             std::string_view mask) {
  check_cores(cores);
  for (const auto& core : cores) core.validate();
  const auto configs = enumerate_configs(stance_roles);
  std::vector<std::vector<ArtificialSample>> parts(cores.size());
  const auto n = static_cast<std::ptrdiff_t>(cores.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    parts[static_cast<std::size_t>(i)] = render_core(cores[static_cast<std::size_t>(i)], configs, policy, mask);
  }
  std::vector<ArtificialSample> out;
  out.reserve(cores.size() * configs.size());
  for (auto& part : parts) std::move(part.begin(), part.end(), std::back_inserter(out));
  return out;
}

std::pair<std::string, std::string> make_e2e_pair(const ArtificialSample& sample) {
  return {sample.input_text, sample.full_text};
}

// ---------------------------------------------------------------------------
// Readers

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const auto tab = line.find('\t', begin);
    fields.push_back(text::trim(line.substr(begin, tab == std::string::npos ? std::string::npos : tab - begin)));
    if (tab == std::string::npos) break;
    begin = tab + 1;
  }
  return fields;
}

}  // namespace

std::vector<CoreElements> read_cores_tsv(std::istream& in) {
  std::vector<CoreElements> cores;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    auto f = split_tabs(text::nfc(line));
    if (f.size() != 6) {
      throw DataError("core file line " + std::to_string(line_no) + ": expected 6 tab-separated fields, got " +
                      std::to_string(f.size()));
    }
    if (f[0] == "copa_id") continue;
    CoreElements core{f[0], f[1], f[2], f[3], f[4], f[5]};
    core.validate();
    cores.push_back(std::move(core));
  }
  return cores;
}

std::vector<CoreElements> read_cores_jsonl(std::istream& in) {
  std::vector<CoreElements> cores;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      CoreElements core{text::nfc(j.at("copa_id").get<std::string>()),
                        text::nfc(j.at("claim_template").get<std::string>()),
                        text::nfc(j.at("original_stance").get<std::string>()),
                        text::nfc(j.at("opposite_stance").get<std::string>()),
                        text::nfc(j.at("premise_support").get<std::string>()),
                        text::nfc(j.at("premise_attack").get<std::string>())};
      core.validate();
      cores.push_back(std::move(core));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("core file line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cores;
}

std::vector<CoreElements> read_cores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  const auto ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".json") return read_cores_jsonl(in);
  return read_cores_tsv(in);
}

nlohmann::ordered_json to_json(const ArtificialSample& sample, std::string_view split) {
  nlohmann::ordered_json j;
  j["split"] = split;
  j["copa_id"] = sample.copa_id;
  j["num_adus"] = sample.config.num_adus;
  j["stance_role"] = to_string(sample.config.stance_role);
  j["claim_position"] = sample.config.claim_position;
  j["premise_role"] = sample.config.premise_role ? nlohmann::ordered_json(to_string(*sample.config.premise_role))
                                                 : nlohmann::ordered_json(nullptr);
  j["supportive_premise_position"] = sample.config.supportive_premise_position
                                         ? nlohmann::ordered_json(*sample.config.supportive_premise_position)
                                         : nlohmann::ordered_json(nullptr);
  j["prediction_type"] = "dm" + std::to_string(static_cast<int>(sample.config.prediction_type));
  j["full_text"] = sample.full_text;
  j["masked_text"] = sample.masked_text;
  j["gold_dm"] = sample.gold_dm;
  const auto [input, output] = make_e2e_pair(sample);
  j["input_text"] = input;
  j["output_text"] = output;
  auto spans = nlohmann::ordered_json::array();
  for (const auto& s : sample.adu_spans) spans.push_back({{"start", s.start}, {"end", s.end}, {"label", s.label}});
  j["adu_spans"] = spans;
  return j;
}

}  // namespace dmaug
