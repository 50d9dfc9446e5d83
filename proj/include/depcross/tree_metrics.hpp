#ifndef DEPCROSS_TREE_METRICS_HPP
#define DEPCROSS_TREE_METRICS_HPP

// Structural measurements on a dependency tree in a fixed linear
// arrangement: dependency lengths, degree second moment, hubiness, the set
// of disjoint edge pairs, and the actual crossing count.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "depcross/tree.hpp"

namespace depcross {

inline int edge_length(const Edge& e) { return e.b - e.a; }

struct LengthSummary {
  long long total = 0;      // sum of edge lengths
  double mean = 0.0;        // total / (n-1)
  double random_mean = 0.0; // expected mean length under a random arrangement
};

inline LengthSummary dependency_lengths(const DependencyTree& t) {
  LengthSummary s;
  for (const Edge& e : t.edges()) s.total += edge_length(e);
  const int n = t.size();
  s.mean = n > 1 ? double(s.total) / double(n - 1) : 0.0;
  s.random_mean = double(n + 1) / 3.0;
  return s;
}

// Mean of squared vertex degrees, (1/n) * sum deg(v)^2.
inline double degree_second_moment(const DependencyTree& t) {
  const auto deg = t.degrees();
  long long sum = 0;
  for (int v = 1; v <= t.size(); ++v) {
    const long long d = deg[std::size_t(v)];
    sum += d * d;
  }
  return double(sum) / double(t.size());
}

inline double degree_second_moment_star(int n) { return double(n - 1); }

inline double degree_second_moment_linear(int n) {
  return 4.0 - 6.0 / double(n);
}

// Normalized degree second moment: 0 for a linear tree, 1 for a star.
// Undefined below n = 4, where the two anchors coincide or collapse.
inline double hubiness(const DependencyTree& t) {
  const int n = t.size();
  if (n < 4) throw std::domain_error("hubiness undefined for n <= 3");
  const double k2 = degree_second_moment(t);
  const double lin = degree_second_moment_linear(n);
  return (k2 - lin) / (degree_second_moment_star(n) - lin);
}

// Number of vertex-disjoint edge pairs, |Q|. Integer-exact:
// |Q| = (n(n-1) - sum deg^2) / 2.
inline long long potential_crossings(const DependencyTree& t) {
  const long long n = t.size();
  const auto deg = t.degrees();
  long long sum_sq = 0;
  for (int v = 1; v <= t.size(); ++v) {
    const long long d = deg[std::size_t(v)];
    sum_sq += d * d;
  }
  return (n * (n - 1) - sum_sq) / 2;
}

// A pair of vertex-disjoint edges, normalized so first.a < second.a.
struct EdgePair {
  Edge first;
  Edge second;

  friend bool operator==(const EdgePair&, const EdgePair&) = default;
};

inline bool edges_disjoint(const Edge& x, const Edge& y) {
  return x.a != y.a && x.a != y.b && x.b != y.a && x.b != y.b;
}

// Two disjoint edges cross iff their endpoints interleave.
inline bool edges_cross(const Edge& x, const Edge& y) {
  if (!edges_disjoint(x, y)) return false;
  const Edge &l = x.a < y.a ? x : y, &r = x.a < y.a ? y : x;
  return r.a < l.b && l.b < r.b;
}

// All vertex-disjoint edge pairs in deterministic order (edges sorted by
// (a, b), pairs in lexicographic order of their indices).
inline std::vector<EdgePair> enumerate_q(const DependencyTree& t) {
  const auto& edges = t.edges();
  std::vector<EdgePair> q;
  q.reserve(std::size_t(potential_crossings(t)));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges_disjoint(edges[i], edges[j]))
        q.push_back({edges[i], edges[j]});
    }
  }
  return q;
}

// Actual number of crossing edge pairs in the current arrangement.
inline long long count_crossings(const DependencyTree& t) {
  const auto& edges = t.edges();
  long long c = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (edges_cross(edges[i], edges[j])) ++c;
    }
  }
  return c;
}

struct CrossingBounds {
  long long pairs_bound = 0;  // choose(n-1, 2): all edge pairs
  long long tight_bound = 0;  // choose(n-2, 2): attained by linear trees
};

inline CrossingBounds crossing_bounds(int n) {
  const auto choose2 = [](long long m) { return m < 2 ? 0 : m * (m - 1) / 2; };
  return {choose2(n - 1), choose2(n - 2)};
}

struct StructuralMetrics {
  int n = 0;
  long long d_total = 0;
  double d_mean = 0.0;
  double d_random_mean = 0.0;
  double k2 = 0.0;
  double hub = 0.0;
  long long q_size = 0;
  long long c_true = 0;
};

// One-pass bundle of the per-sentence structural measurements.
// Requires n >= 4 (hubiness); filtered sentences always satisfy this.
inline StructuralMetrics structural_metrics(const DependencyTree& t) {
  StructuralMetrics m;
  m.n = t.size();
  const LengthSummary ls = dependency_lengths(t);
  m.d_total = ls.total;
  m.d_mean = ls.mean;
  m.d_random_mean = ls.random_mean;
  m.k2 = degree_second_moment(t);
  m.hub = hubiness(t);
  m.q_size = potential_crossings(t);
  m.c_true = count_crossings(t);
  return m;
}

// Rebuilds the tree with positions permuted: pos[v] is the new position of
// the vertex currently at position v (pos is 1-based via pos[v-1]).
inline DependencyTree relabel(const DependencyTree& t,
                              const std::vector<int>& pos) {
  const int n = t.size();
  std::vector<int> heads(std::size_t(n), 0);
  for (int v = 1; v <= n; ++v) {
    const int h = t.head(v);
    heads[std::size_t(pos[std::size_t(v - 1)] - 1)] =
        h == 0 ? 0 : pos[std::size_t(h - 1)];
  }
  return DependencyTree(std::move(heads));
}

// Mirror arrangement: position v becomes n + 1 - v. Crossing counts and
// lengths are invariant under it.
inline DependencyTree reverse_arrangement(const DependencyTree& t) {
  const int n = t.size();
  std::vector<int> pos(std::size_t(n), 0);
  for (int v = 1; v <= n; ++v) pos[std::size_t(v - 1)] = n + 1 - v;
  return relabel(t, pos);
}

}  // namespace depcross

#endif  // DEPCROSS_TREE_METRICS_HPP
