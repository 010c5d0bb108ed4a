#include "dmaug/alignment.hpp"

#include <algorithm>

#include "dmaug/errors.hpp"
#include "dmaug/text.hpp"

namespace dmaug {
namespace {

std::vector<std::string> fold_all(const TokenSequence& seq) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (const auto& t : seq) out.push_back(text::fold(t));
  return out;
}

}  // namespace

Alignment needleman_wunsch(const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s) {
  const auto fa = fold_all(a);
  const auto fb = fold_all(b);
  const std::size_t n = fa.size();
  const std::size_t m = fb.size();
  const std::size_t width = m + 1;
  std::vector<int> dp((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> int& { return dp[i * width + j]; };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<int>(i) * s.gap;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<int>(j) * s.gap;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int diag = at(i - 1, j - 1) + (fa[i - 1] == fb[j - 1] ? s.match : s.mismatch);
      at(i, j) = std::max({diag, at(i - 1, j) + s.gap, at(i, j - 1) + s.gap});
    }
  }

  Alignment al;
  al.score = at(n, m);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = fa[i - 1] == fb[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? s.match : s.mismatch)) {
        al.pairs.push_back({i - 1, j - 1});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + s.gap) {
      al.pairs.push_back({i - 1, kGap});
      --i;
      continue;
    }
    al.pairs.push_back({kGap, j - 1});
    --j;
  }
  std::reverse(al.pairs.begin(), al.pairs.end());
  return al;
}

int nw_score(const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s) {
  const auto fa = fold_all(a);
  const auto fb = fold_all(b);
  std::vector<int> row(fb.size() + 1);
  for (std::size_t j = 0; j <= fb.size(); ++j) row[j] = static_cast<int>(j) * s.gap;
  for (std::size_t i = 1; i <= fa.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i) * s.gap;
    for (std::size_t j = 1; j <= fb.size(); ++j) {
      const int up = row[j];
      row[j] = std::max({diag + (fa[i - 1] == fb[j - 1] ? s.match : s.mismatch), up + s.gap, row[j - 1] + s.gap});
      diag = up;
    }
  }
  return row[fb.size()];
}

int nw_score_wavefront(const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s) {
  const auto fa = fold_all(a);
  const auto fb = fold_all(b);
  const std::size_t n = fa.size();
  const std::size_t m = fb.size();
  // Three rolling anti-diagonals indexed by row i.
  std::vector<int> d0(n + 1), d1(n + 1), d2(n + 1);
  for (std::size_t d = 0; d <= n + m; ++d) {
    const std::size_t lo = d > m ? d - m : 0;
    const std::size_t hi = std::min(d, n);
#pragma omp parallel for schedule(static) if (hi - lo > 256)
    for (std::ptrdiff_t ii = static_cast<std::ptrdiff_t>(lo); ii <= static_cast<std::ptrdiff_t>(hi); ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const std::size_t j = d - i;
      int value;
      if (i == 0) {
        value = static_cast<int>(j) * s.gap;
      } else if (j == 0) {
        value = static_cast<int>(i) * s.gap;
      } else {
        // d1 holds diagonal d-1, d0 holds diagonal d-2
        const int diag = d0[i - 1] + (fa[i - 1] == fb[j - 1] ? s.match : s.mismatch);
        const int up = d1[i - 1] + s.gap;
        const int left = d1[i] + s.gap;
        value = std::max({diag, up, left});
      }
      d2[i] = value;
    }
    std::swap(d0, d1);
    std::swap(d1, d2);
  }
  return d1[n];
}

int alignment_score(const Alignment& al, const TokenSequence& a, const TokenSequence& b, const ScoringScheme& s) {
  int score = 0;
  for (const auto& p : al.pairs) {
    if (p.a == kGap || p.b == kGap) {
      score += s.gap;
    } else {
      score += text::equals_ci(a[p.a], b[p.b]) ? s.match : s.mismatch;
    }
  }
  return score;
}

LabelSequence project_labels(const Alignment& al, const LabelSequence& labels_a, std::size_t length_b,
                             ProjectionPolicy policy) {
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  for (const auto& p : al.pairs) {
    if (p.a != kGap) ++count_a;
    if (p.b != kGap) ++count_b;
  }
  if (count_a != labels_a.size()) {
    throw DataError("label sequence has " + std::to_string(labels_a.size()) + " labels but the alignment covers " +
                    std::to_string(count_a) + " source tokens");
  }
  if (count_b != length_b) throw DataError("alignment does not cover the target sequence");

  std::vector<std::string> out(length_b, "O");
  std::vector<bool> from_gap(length_b, false);
  for (const auto& p : al.pairs) {
    if (p.b == kGap) continue;
    if (p.a == kGap) {
      from_gap[p.b] = true;
    } else {
      out[p.b] = labels_a[p.a];
    }
  }

  if (policy == ProjectionPolicy::contiguity) {
    std::size_t j = 0;
    while (j < length_b) {
      if (!from_gap[j]) {
        ++j;
        continue;
      }
      std::size_t run_end = j;
      while (run_end < length_b && from_gap[run_end]) ++run_end;
      // Inside a span when the left neighbour opens or continues type t
      // and the right neighbour continues it.
      if (j > 0 && run_end < length_b) {
        const std::string& left = out[j - 1];
        const std::string& right = out[run_end];
        if (bio_prefix(left) != 'O' && bio_prefix(right) == 'I' && bio_type(left) == bio_type(right)) {
          for (std::size_t k = j; k < run_end; ++k) out[k] = "I-" + bio_type(right);
        }
      }
      j = run_end;
    }
  }
  return repair_bio(LabelSequence(std::move(out)));
}

LabelSequence project(const TokenSequence& a, const LabelSequence& labels_a, const TokenSequence& b,
                      ProjectionPolicy policy, const ScoringScheme& s) {
  if (a.size() != labels_a.size()) throw DataError("token and label sequences differ in length");
  return project_labels(needleman_wunsch(a, b, s), labels_a, b.size(), policy);
}

std::vector<LabelSequence> project_batch_serial(const std::vector<ProjectionTask>& tasks, ProjectionPolicy policy,
                                                const ScoringScheme& s) {
  std::vector<LabelSequence> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) out.push_back(project(*t.source, *t.labels, *t.target, policy, s));
  return out;
}

std::vector<LabelSequence> project_batch(const std::vector<ProjectionTask>& tasks, ProjectionPolicy policy,
                                         const ScoringScheme& s) {
  std::vector<LabelSequence> out(tasks.size());
  const auto n = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto& t = tasks[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = project(*t.source, *t.labels, *t.target, policy, s);
  }
  return out;
}

}  // namespace dmaug
