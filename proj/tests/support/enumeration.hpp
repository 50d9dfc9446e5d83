#ifndef DEPCROSS_TESTS_ENUMERATION_HPP
#define DEPCROSS_TESTS_ENUMERATION_HPP

// Exhaustive generators and brute-force oracles. Test-suite only; nothing
// here is part of the library surface.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "depcross/ensembles.hpp"
#include "depcross/predictor.hpp"
#include "depcross/tree.hpp"
#include "depcross/tree_metrics.hpp"

namespace depcross::testing {

// Visits all n^(n-2) labeled trees on vertices 1..n, each rooted at n,
// by decoding every Pruefer sequence in mixed-radix order. n >= 2.
template <typename F>
void for_each_labeled_tree(int n, F&& f) {
  std::vector<int> code(std::size_t(n) - 2, 1);
  for (;;) {
    f(DependencyTree(
        detail::root_edges(n, detail::prufer_decode(n, code), n)));
    std::size_t i = 0;
    while (i < code.size()) {
      if (code[i] < n) {
        ++code[i];
        break;
      }
      code[i] = 1;
      ++i;
    }
    if (i == code.size()) break;
  }
}

// Visits all n! arrangements of the given tree.
template <typename F>
void for_each_arrangement(const DependencyTree& t, F&& f) {
  std::vector<int> pos(std::size_t(t.size()), 0);
  std::iota(pos.begin(), pos.end(), 1);
  do {
    f(relabel(t, pos));
  } while (std::next_permutation(pos.begin(), pos.end()));
}

// O(n^2) placement-count oracle over ordered pairs of placed edges: the
// first edge may take either length, so each start-cell grid is scanned
// for both length assignments when they differ.
inline PlacementCounts brute_placements(int n, int d1, int d2) {
  const auto scan = [n](int da, int db) {
    PlacementCounts c;
    for (int s1 = 1; s1 + da <= n; ++s1) {
      for (int s2 = 1; s2 + db <= n; ++s2) {
        const int t1 = s1 + da, t2 = s2 + db;
        if (s2 == s1 || s2 == t1 || t2 == s1 || t2 == t1) continue;
        ++c.beta;
        const bool s2_in = s1 < s2 && s2 < t1;
        const bool t2_in = s1 < t2 && t2 < t1;
        if (s2_in != t2_in) ++c.alpha;
      }
    }
    return c;
  };
  PlacementCounts c = scan(d1, d2);
  if (d1 != d2) {
    const PlacementCounts r = scan(d2, d1);
    c.alpha += r.alpha;
    c.beta += r.beta;
  }
  return c;
}

// Path 1-2-...-n with each vertex headed by its predecessor.
inline DependencyTree path_tree(int n) {
  std::vector<int> heads(std::size_t(n), 0);
  for (int v = 2; v <= n; ++v) heads[std::size_t(v - 1)] = v - 1;
  return DependencyTree(heads);
}

// Star with vertex 1 as hub.
inline DependencyTree star_tree(int n) {
  std::vector<int> heads(std::size_t(n), 1);
  heads[0] = 0;
  return DependencyTree(heads);
}

// Arrangement of the path that attains the maximum number of crossings,
// choose(n-2, 2): odd chain vertices first, then even, so every pair of
// non-adjacent chain edges interleaves.
inline DependencyTree max_crossing_path(int n) {
  std::vector<int> pos(std::size_t(n), 0);
  int next = 0;
  for (int v = 1; v <= n; v += 2) pos[std::size_t(v - 1)] = ++next;
  for (int v = 2; v <= n; v += 2) pos[std::size_t(v - 1)] = ++next;
  return relabel(path_tree(n), pos);
}

// Stable identity for counting distinct trees/arrangements.
inline std::string tree_key(const DependencyTree& t) {
  std::string key;
  for (int v = 1; v <= t.size(); ++v) {
    if (v > 1) key += ',';
    key += std::to_string(t.head(v));
  }
  return key;
}

// Binomial three-sigma band check for frequency tests.
inline bool within_three_sigma(long long observed, long long trials,
                               double p) {
  const double mean = double(trials) * p;
  const double sigma = std::sqrt(double(trials) * p * (1.0 - p));
  return std::abs(double(observed) - mean) <= 3.0 * sigma;
}

}  // namespace depcross::testing

#endif
