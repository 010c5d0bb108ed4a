#pragma once

// Template-based synthetic DM dataset: core-element seeds are rendered under
// every template configuration, with one DM per ADU drawn from fixed sets.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dmaug/core.hpp"

namespace dmaug {

inline constexpr std::string_view kStancePlaceholder = "<STANCE>";
inline constexpr std::string_view kDefaultMask = "<mask>";

struct CoreElements {
  std::string copa_id;
  std::string claim_template;  // contains <STANCE> exactly once
  std::string original_stance;
  std::string opposite_stance;
  std::string premise_support;
  std::string premise_attack;

  // Throws DataError when a field is empty or the placeholder count is not 1.
  void validate() const;
};

enum class StanceRole { original, opposite };
enum class PremiseRole { support, attack };
enum class PredictionType { dm1 = 1, dm2 = 2, dm3 = 3 };

struct TemplateConfig {
  int num_adus = 2;
  StanceRole stance_role = StanceRole::original;
  int claim_position = 1;                            // 1 | 2
  std::optional<PremiseRole> premise_role;           // iff num_adus == 2
  std::optional<int> supportive_premise_position;    // iff num_adus == 3
  PredictionType prediction_type = PredictionType::dm1;

  void validate() const;
  // Stable textual key, e.g. "3|original|c2|sp1|dm1".
  std::string key() const;

  friend auto operator<=>(const TemplateConfig&, const TemplateConfig&) = default;
};

std::string to_string(StanceRole r);
std::string to_string(PremiseRole r);

// Role class of an ADU for DM selection.
enum class RoleClass { claim, support, attack };
// Where the DM sits: the adverbial "Dm3," slot at the start of a following
// sentence, or anywhere else (sentence-initial subordinate or mid-sentence).
enum class SlotKind { lead, mid };

std::string to_string(RoleClass r);

struct DmPolicy {
  static constexpr std::uint64_t kDefaultSeed = 13;

  std::vector<std::string> claim_dms{"I think that", "in my opinion", "I believe that"};
  std::vector<std::string> support_mid_dms{"because", "since", "given that"};
  std::vector<std::string> support_lead_dms{"moreover", "furthermore", "indeed"};
  std::vector<std::string> attack_mid_dms{"although", "even though", "even if"};
  std::vector<std::string> attack_lead_dms{"however", "on the other hand", "conversely"};
  std::uint64_t seed = kDefaultSeed;

  const std::vector<std::string>& set_for(RoleClass role, SlotKind slot) const;
  // Seeded deterministic draw keyed on an arbitrary string.
  const std::string& pick(RoleClass role, SlotKind slot, std::string_view key) const;
};

struct ArtificialSample {
  std::string full_text;
  std::string masked_text;
  std::string gold_dm;   // as it appears in full_text
  std::vector<AduSpan> adu_spans;  // over tokenize(full_text), labels from CorpusSchema::artificial()
  std::vector<std::string> dms;    // DM before each ADU, in text order
  TemplateConfig config;
  std::string copa_id;
  std::string input_text;   // DM-free version (end-to-end input)
};

// Cartesian product of the template parameters, sorted by field tuple.
std::vector<TemplateConfig> enumerate_configs(const std::set<StanceRole>& stance_roles);

ArtificialSample render_sample(const CoreElements& core, const TemplateConfig& config, const DmPolicy& policy,
                               std::string_view mask = kDefaultMask);

// Replaces the mask placeholder with the gold DM.
std::string unmask(const ArtificialSample& sample, std::string_view mask = kDefaultMask);

// Throws DataError on an empty core list or a duplicated copa_id.
std::vector<ArtificialSample> generate_split(const std::vector<CoreElements>& cores,
                                             const std::set<StanceRole>& stance_roles, const DmPolicy& policy,
                                             std::string_view mask = kDefaultMask);
// Single-threaded reference for generate_split.
std::vector<ArtificialSample> generate_split_serial(const std::vector<CoreElements>& cores,
                                                    const std::set<StanceRole>& stance_roles,
                                                    const DmPolicy& policy, std::string_view mask = kDefaultMask);

// (input_text, output_text): DM-free text and full text.
std::pair<std::string, std::string> make_e2e_pair(const ArtificialSample& sample);

// Core-element files: TSV (copa_id, claim_template, original_stance,
// opposite_stance, premise_support, premise_attack; optional header) or
// JSON lines with the same field names.
std::vector<CoreElements> read_cores_tsv(std::istream& in);
std::vector<CoreElements> read_cores_jsonl(std::istream& in);
std::vector<CoreElements> read_cores(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const ArtificialSample& sample, std::string_view split);

}  // namespace dmaug
