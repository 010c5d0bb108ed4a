#pragma once

// DM augmentation: a deterministic rule baseline over the DM policy, an HTTP
// client for external augmentation models, and seq2seq training-pair
// preparation (Discovery-style sentence pairs, PDTB-style relation records).

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dmaug/artificial.hpp"
#include "dmaug/core.hpp"
#include "dmaug/extraction.hpp"

namespace dmaug {

using RoleMap = std::map<std::string, RoleClass>;

// PEC: MajorClaim, Claim -> claim; Premise -> support. Premises count as
// supportive everywhere since attack relations are not read.
RoleMap default_role_map(const CorpusSchema& schema);

struct RuleAugmentResult {
  TokenSequence tokens;
  std::vector<AduSpan> adus;        // re-indexed over tokens
  std::vector<DmSlot> inserted;     // one per ADU, empty where nothing was inserted
  std::string text() const { return detokenize(tokens); }
};

// Inserts a policy DM before every ADU whose slot is empty. A DM opening a
// sentence that holds a later ADU is subordinate (mid set, no comma); one
// opening a single-ADU sentence comes from the lead set and takes a comma;
// anything else uses the mid set. Claims always draw from the claim set.
// The draw for ADU k is keyed on `key + "#" + (k+1)`. Throws DataError for an
// ADU label missing from role_map.
RuleAugmentResult rule_based_augment(const AnnotatedParagraph& p, const std::vector<DmSlot>& slots,
                                     const DmPolicy& policy, const RoleMap& role_map, std::string_view key);
// Slots from gold_dms_left_context, key from the paragraph text.
RuleAugmentResult rule_based_augment(const AnnotatedParagraph& p, const DmPolicy& policy, const RoleMap& role_map);

// ---------------------------------------------------------------------------
// Remote augmentation

class RemoteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class RemoteConnectionError : public RemoteError {
 public:
  using RemoteError::RemoteError;
};
class RemoteTimeoutError : public RemoteError {
 public:
  using RemoteError::RemoteError;
};
class RemoteMalformedResponse : public RemoteError {
 public:
  using RemoteError::RemoteError;
};
class RemoteStatusError : public RemoteError {
 public:
  RemoteStatusError(int status, const std::string& what) : RemoteError(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

struct RemoteOptions {
  std::chrono::milliseconds timeout{30000};
  int retries = 1;
  std::size_t max_in_flight = 4;
};

struct AugmentRequest {
  std::string text;
  std::vector<std::size_t> candidate_positions;  // client-side only, not sent
};

// POST {endpoint}/v1/augment with {"text"}; expects {"augmented_text"}.
// Connection failures and timeouts are retried; status and body errors are not.
class RemoteAugmenter {
 public:
  // endpoint: "http://host:port" with an optional path prefix; anything else
  // throws std::invalid_argument.
  explicit RemoteAugmenter(std::string endpoint, RemoteOptions options = {});

  std::string augment(const AugmentRequest& req) const;
  std::string augment(const std::string& text) const { return augment(AugmentRequest{text, {}}); }

  struct Outcome {
    std::optional<std::string> text;
    std::string error;  // set when text is empty
  };
  // At most options.max_in_flight concurrent requests; results in input order.
  std::vector<Outcome> augment_batch(const std::vector<std::string>& texts) const;

  const std::string& endpoint() const noexcept { return endpoint_; }

 private:
  std::string endpoint_;
  std::string host_;    // scheme://host:port
  std::string prefix_;  // path before /v1
  RemoteOptions options_;
};

// ---------------------------------------------------------------------------
// Training pairs

struct DiscoveryPair {
  std::string s1;
  std::string s2;
  std::string y;
};

// Input "s1 s2" with s1 ending in exactly one terminal mark; output inserts y,
// capitalized, before s2 whose first word is lowercased. Throws DataError for
// an empty s1, s2 or y.
std::pair<std::string, std::string> prepare_discovery_pair(const DiscoveryPair& d);

// Byte offsets into PdtbRecord::text.
struct ExplicitConnective {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string connective;
};
struct ImplicitConnective {
  std::size_t offset = 0;
  std::string connective;
};
struct PdtbRecord {
  std::string text;
  std::vector<ExplicitConnective> explicit_dms;
  std::vector<ImplicitConnective> implicit_dms;
};

// Removes explicit connectives from text. Mid-sentence removals not preceded
// by punctuation leave ", "; sentence-initial removals drop a following comma
// and uppercase what follows.
std::string remove_connectives(const std::string& text, std::vector<ExplicitConnective> spans);
// Inserts implicit connectives; a sentence-initial insertion is capitalized and
// the following word lowercased.
std::string insert_connectives(const std::string& text, std::vector<ImplicitConnective> points);

// (input, output) = (explicit DMs removed, implicit DMs inserted). Throws
// DataError for out-of-range or overlapping annotations.
std::pair<std::string, std::string> prepare_pdtb_pairs(const PdtbRecord& doc);

// TSV "s1<TAB>s2<TAB>y", optional header.
std::vector<DiscoveryPair> read_discovery_tsv(std::istream& in);
// JSON lines: {"text", "explicit": [{"start","end","connective"}],
// "implicit": [{"offset","connective"}]}.
std::vector<PdtbRecord> read_pdtb_jsonl(std::istream& in);

}  // namespace dmaug
