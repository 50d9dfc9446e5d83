#ifndef DEPCROSS_PREPROCESS_HPP
#define DEPCROSS_PREPROCESS_HPP

// Sentence preprocessing: removal of punctuation and null-element tokens
// with re-heading of the survivors, followed by the structural filter that
// decides whether a sentence enters the analysis.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "depcross/conll.hpp"
#include "depcross/tree.hpp"

namespace depcross {

enum class InclusionDecision {
  Included,
  ExcludedMalformed,
  ExcludedNotTree,
  ExcludedStarTree,
};

inline const char* to_string(InclusionDecision d) {
  switch (d) {
    case InclusionDecision::Included: return "included";
    case InclusionDecision::ExcludedMalformed: return "excluded-malformed";
    case InclusionDecision::ExcludedNotTree: return "excluded-not-tree";
    case InclusionDecision::ExcludedStarTree: return "excluded-star-tree";
  }
  return "?";
}

struct PruneResult {
  bool ok = false;
  TreeCandidate candidate;  // meaningful only when ok
  std::string error;        // meaningful only when !ok
};

// Removes non-word tokens and re-heads every surviving token to its nearest
// surviving ancestor, following the original head links upward. A survivor
// whose ancestors were all removed attaches to the artificial root. A cycle
// hit during the ancestor walk makes the sentence malformed.
inline PruneResult prune_non_words(const RawSentence& sent,
                                   std::span<const TokenClass> classes) {
  const int n = sent.size();
  PruneResult out;
  std::vector<int> new_index(std::size_t(n) + 1, 0);  // 0 = removed
  int kept = 0;
  for (int v = 1; v <= n; ++v) {
    if (classes[std::size_t(v - 1)] == TokenClass::Word)
      new_index[std::size_t(v)] = ++kept;
  }
  out.candidate.heads.reserve(std::size_t(kept));
  for (int v = 1; v <= n; ++v) {
    if (new_index[std::size_t(v)] == 0) continue;
    int h = sent.tokens[std::size_t(v - 1)].head;
    int steps = 0;
    while (h != 0 && new_index[std::size_t(h)] == 0) {
      h = sent.tokens[std::size_t(h - 1)].head;
      if (++steps > n) {
        out.error = "head cycle through removed tokens at position " +
                    std::to_string(v);
        return out;
      }
    }
    out.candidate.heads.push_back(h == 0 ? 0 : new_index[std::size_t(h)]);
  }
  out.ok = true;
  return out;
}

// Structural filter. Anything that is not a single rooted tree is rejected;
// so is any tree with a vertex of degree n-1 (which covers every tree with
// n <= 3). Accepted sentences therefore have n >= 4 and at least one pair
// of disjoint edges.
inline InclusionDecision filter_candidate(const TreeCandidate& cand) {
  const int n = cand.size();
  if (n == 0) return InclusionDecision::ExcludedNotTree;
  int root = 0;
  for (int v = 1; v <= n; ++v) {
    const int h = cand.heads[std::size_t(v - 1)];
    if (h < 0 || h > n || h == v) return InclusionDecision::ExcludedNotTree;
    if (h == 0) {
      if (root != 0) return InclusionDecision::ExcludedNotTree;
      root = v;
    }
  }
  if (root == 0) return InclusionDecision::ExcludedNotTree;
  std::vector<unsigned char> state(std::size_t(n) + 1, 0);
  state[std::size_t(root)] = 2;
  std::vector<int> chain;
  for (int v = 1; v <= n; ++v) {
    int u = v;
    chain.clear();
    while (state[std::size_t(u)] == 0) {
      state[std::size_t(u)] = 1;
      chain.push_back(u);
      u = cand.heads[std::size_t(u - 1)];
    }
    if (state[std::size_t(u)] == 1) return InclusionDecision::ExcludedNotTree;
    for (int w : chain) state[std::size_t(w)] = 2;
  }
  std::vector<int> deg(std::size_t(n) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    const int h = cand.heads[std::size_t(v - 1)];
    if (h != 0) {
      ++deg[std::size_t(v)];
      ++deg[std::size_t(h)];
    }
  }
  for (int v = 1; v <= n; ++v) {
    if (deg[std::size_t(v)] == n - 1)
      return InclusionDecision::ExcludedStarTree;
  }
  return InclusionDecision::Included;
}

struct ExclusionTally {
  long long included = 0;
  long long malformed = 0;
  long long not_tree = 0;
  long long star_tree = 0;

  long long raw() const { return included + malformed + not_tree + star_tree; }

  void add(InclusionDecision d) {
    switch (d) {
      case InclusionDecision::Included: ++included; break;
      case InclusionDecision::ExcludedMalformed: ++malformed; break;
      case InclusionDecision::ExcludedNotTree: ++not_tree; break;
      case InclusionDecision::ExcludedStarTree: ++star_tree; break;
    }
  }

  ExclusionTally& operator+=(const ExclusionTally& o) {
    included += o.included;
    malformed += o.malformed;
    not_tree += o.not_tree;
    star_tree += o.star_tree;
    return *this;
  }
};

struct PreprocessOutcome {
  InclusionDecision decision = InclusionDecision::ExcludedMalformed;
  std::optional<DependencyTree> tree;  // set iff decision == Included
  std::string error;                   // set for malformed sentences
};

// Full preprocessing of one parsed sentence: classify, prune, filter.
inline PreprocessOutcome preprocess_sentence(const RawSentence& sent,
                                             const IngestConfig& cfg) {
  PreprocessOutcome out;
  std::vector<TokenClass> classes;
  classes.reserve(sent.tokens.size());
  for (const RawToken& tok : sent.tokens)
    classes.push_back(classify_token(tok, cfg));
  PruneResult pruned = prune_non_words(sent, classes);
  if (!pruned.ok) {
    out.decision = InclusionDecision::ExcludedMalformed;
    out.error = std::move(pruned.error);
    return out;
  }
  out.decision = filter_candidate(pruned.candidate);
  if (out.decision == InclusionDecision::Included)
    out.tree.emplace(std::move(pruned.candidate.heads));
  return out;
}

}  // namespace depcross

#endif  // DEPCROSS_PREPROCESS_HPP
