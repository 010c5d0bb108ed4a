#pragma once

// Global (Needleman-Wunsch) token alignment and BIO label projection between
// an original and a modified token sequence.

#include <cstddef>
#include <limits>
#include <vector>

#include "dmaug/core.hpp"

namespace dmaug {

struct ScoringScheme {
  int match = 1;
  int mismatch = -1;
  int gap = -1;
};

inline constexpr std::size_t kGap = std::numeric_limits<std::size_t>::max();

struct AlignedPair {
  std::size_t a = kGap;  // index into A, or kGap
  std::size_t b = kGap;  // index into B, or kGap
  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

struct Alignment {
  std::vector<AlignedPair> pairs;
  int score = 0;
};

// Globally optimal alignment; tokens compare case-insensitively. Traceback
// prefers match > mismatch > gap in B (A token unaligned) > gap in A.
Alignment needleman_wunsch(const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s = {});

// Optimal score only, in O(min) memory: row-by-row reference.
int nw_score(const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s = {});
// Same score, filling anti-diagonals in parallel (OpenMP).
int nw_score_wavefront(const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s = {});

// Score of an explicit alignment under s.
int alignment_score(const Alignment& al, const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s = {});

enum class ProjectionPolicy {
  // B tokens opposite a gap take I-t when they sit inside a span of type t.
  contiguity,
  // B tokens opposite a gap always take O.
  strict_o,
};

// Copies A labels onto aligned B tokens; see ProjectionPolicy for gap tokens.
// The result is repaired to valid BIO. Throws DataError on length mismatch.
LabelSequence project_labels(const Alignment& al, const LabelSequence& labels_a, std::size_t length_b,
                             ProjectionPolicy policy = ProjectionPolicy::contiguity);

// Convenience: align then project.
LabelSequence project(const TokenSequence& a, const LabelSequence& labels_a, const TokenSequence& b,
                      ProjectionPolicy policy = ProjectionPolicy::contiguity, const ScoringScheme& s = {});

struct ProjectionTask {
  const TokenSequence* source = nullptr;
  const LabelSequence* labels = nullptr;
  const TokenSequence* target = nullptr;
};

// Batch projection: OpenMP over tasks, results in task order.
std::vector<LabelSequence> project_batch(const std::vector<ProjectionTask>& tasks,
                                         ProjectionPolicy policy = ProjectionPolicy::contiguity,
                                         const ScoringScheme& s = {});
std::vector<LabelSequence> project_batch_serial(const std::vector<ProjectionTask>& tasks,
                                                ProjectionPolicy policy = ProjectionPolicy::contiguity,
                                                const ScoringScheme& s = {});

}  // namespace dmaug
