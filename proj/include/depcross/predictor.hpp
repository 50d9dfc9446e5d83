#ifndef DEPCROSS_PREDICTOR_HPP
#define DEPCROSS_PREDICTOR_HPP

// Crossing predictors. The null baseline E0 ignores everything but |Q|;
// the length-conditioned predictor E2 sums, over all disjoint edge pairs,
// the probability that two randomly placed edges of the observed lengths
// cross each other.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "depcross/text.hpp"
#include "depcross/tree.hpp"
#include "depcross/tree_metrics.hpp"
#include "depcross/version.hpp"

namespace depcross {

// Placement counts for an ordered pair of vertex-disjoint edges whose
// lengths form the multiset {d1, d2} on n positions:
//   beta  - placements with all four endpoints distinct,
//   alpha - the subset whose endpoints interleave (the edges cross).
struct PlacementCounts {
  long long alpha = 0;
  long long beta = 0;
};

// O(n) count over the start-position grid. Both orders of an unequal length
// pair are counted, which doubles alpha and beta alike and leaves the
// crossing probability untouched.
inline PlacementCounts placement_counts(int n, int d1, int d2) {
  if (n < 2 || d1 < 1 || d2 < 1 || d1 > n - 1 || d2 > n - 1)
    throw std::invalid_argument("placement_counts: lengths must be in 1..n-1");
  PlacementCounts out;
  const int m1 = n - d1, m2 = n - d2;  // start position ranges
  if (m1 < 1 || m2 < 1) return out;
  const auto clamp_count = [m2](int lo, int hi) -> long long {
    if (lo < 1) lo = 1;
    if (hi > m2) hi = m2;
    return hi >= lo ? hi - lo + 1 : 0;
  };
  for (int s1 = 1; s1 <= m1; ++s1) {
    const int t1 = s1 + d1;
    // endpoint collisions: s2 or s2 + d2 equal to s1 or t1
    const int forbidden[4] = {s1, t1, s1 - d2, t1 - d2};
    int bad = 0;
    for (int i = 0; i < 4; ++i) {
      if (forbidden[i] < 1 || forbidden[i] > m2) continue;
      bool dup = false;
      for (int j = 0; j < i; ++j) dup = dup || forbidden[j] == forbidden[i];
      if (!dup) ++bad;
    }
    out.beta += m2 - bad;
    // crossing with e1 on the left: s1 < s2 < t1 < s2 + d2
    out.alpha += clamp_count(std::max(s1, t1 - d2) + 1, t1 - 1);
    // crossing with e1 on the right: s2 < s1 < s2 + d2 < t1
    out.alpha += clamp_count(s1 - d2 + 1, std::min(s1, t1 - d2) - 1);
  }
  if (d1 != d2) {
    out.alpha *= 2;
    out.beta *= 2;
  }
  return out;
}

// As placement_counts, but a pair with no valid placement is an error.
inline PlacementCounts pair_placements(int n, int d1, int d2) {
  PlacementCounts c = placement_counts(n, d1, d2);
  if (c.beta == 0)
    throw std::domain_error("no valid placements for lengths (" +
                            std::to_string(d1) + ", " + std::to_string(d2) +
                            ") on " + std::to_string(n) + " positions");
  return c;
}

// p(cross | d1, d2) = alpha / beta.
inline double crossing_probability(int n, int d1, int d2) {
  const PlacementCounts c = pair_placements(n, d1, d2);
  return double(c.alpha) / double(c.beta);
}

// Lazy memo table of crossing probabilities for one sentence length.
// Thread-safe; concurrent fills of the same cell compute the same value.
class CrossingProbabilityTable {
 public:
  explicit CrossingProbabilityTable(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("table needs n >= 2");
    if (n <= kDenseLimit)
      dense_.assign(std::size_t(n - 1) * std::size_t(n - 1),
                    std::numeric_limits<double>::quiet_NaN());
  }

  int size() const { return n_; }

  double probability(int d1, int d2) const {
    if (d1 < 1 || d2 < 1 || d1 > n_ - 1 || d2 > n_ - 1)
      throw std::invalid_argument("lengths must be in 1..n-1");
    const int lo = std::min(d1, d2), hi = std::max(d1, d2);
    const std::size_t key =
        std::size_t(lo - 1) * std::size_t(n_ - 1) + std::size_t(hi - 1);
    {
      std::shared_lock lock(mu_);
      if (!dense_.empty()) {
        const double v = dense_[key];
        if (!std::isnan(v)) return v;
      } else if (auto it = sparse_.find(key); it != sparse_.end()) {
        return it->second;
      }
    }
    const double v = crossing_probability(n_, lo, hi);  // outside the lock
    std::unique_lock lock(mu_);
    if (!dense_.empty())
      dense_[key] = v;
    else
      sparse_.emplace(key, v);
    return v;
  }

 private:
  static constexpr int kDenseLimit = 512;
  int n_;
  mutable std::shared_mutex mu_;
  mutable std::vector<double> dense_;  // NaN = not yet computed
  mutable std::unordered_map<std::size_t, double> sparse_;
};

// Shared per-length tables, for reuse across sentences and threads.
class ProbabilityCache {
 public:
  std::shared_ptr<const CrossingProbabilityTable> table_for(int n) {
    {
      std::shared_lock lock(mu_);
      if (auto it = tables_.find(n); it != tables_.end()) return it->second;
    }
    auto fresh = std::make_shared<CrossingProbabilityTable>(n);
    std::unique_lock lock(mu_);
    return tables_.try_emplace(n, std::move(fresh)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<int, std::shared_ptr<const CrossingProbabilityTable>> tables_;
};

// E0: every disjoint pair crosses with probability 1/3.
inline double expected_crossings_null(long long q_size) {
  return double(q_size) / 3.0;
}

// E2: sum of p(cross | length pair) over all disjoint pairs, accumulated
// with Kahan compensation so large sentences lose no precision.
inline double predicted_crossings_by_length(
    const DependencyTree& t, const CrossingProbabilityTable& table) {
  double sum = 0.0, comp = 0.0;
  const auto& edges = t.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      if (!edges_disjoint(edges[i], edges[j])) continue;
      const double p =
          table.probability(edge_length(edges[i]), edge_length(edges[j]));
      const double y = p - comp;
      const double tmp = sum + y;
      comp = (tmp - sum) - y;
      sum = tmp;
    }
  }
  return sum;
}

// Delta_x = (E_x - C_true) / |Q|; positive when the predictor overshoots.
inline double relative_error(double predicted, long long c_true,
                             long long q_size) {
  if (q_size <= 0) throw std::domain_error("relative error needs |Q| > 0");
  return (predicted - double(c_true)) / double(q_size);
}

struct PredictionResult {
  double e0 = 0.0;
  double e2 = 0.0;
  double delta0 = 0.0;
  double delta2 = 0.0;
  double cbar_true = 0.0;  // C_true / |Q|
};

inline PredictionResult predict(const DependencyTree& t,
                                const StructuralMetrics& m,
                                const CrossingProbabilityTable& table) {
  PredictionResult r;
  r.e0 = expected_crossings_null(m.q_size);
  r.e2 = predicted_crossings_by_length(t, table);
  r.delta0 = relative_error(r.e0, m.c_true, m.q_size);
  r.delta2 = relative_error(r.e2, m.c_true, m.q_size);
  r.cbar_true = double(m.c_true) / double(m.q_size);
  return r;
}

// TSV of every defined probability cell for one n: columns d1, d2, p with
// d1 <= d2, ordered by (d1, d2). Cells with no valid placement are omitted.
inline void write_probability_map(std::ostream& out, int n) {
  if (n < 2) throw std::invalid_argument("probability map needs n >= 2");
  out << "# " << kToolName << ' ' << kToolVersion << "\n# n: " << n
      << "\nd1\td2\tp\n";
  for (int d1 = 1; d1 <= n - 1; ++d1) {
    for (int d2 = d1; d2 <= n - 1; ++d2) {
      const PlacementCounts c = placement_counts(n, d1, d2);
      if (c.beta == 0) continue;
      out << d1 << '\t' << d2 << '\t'
          << format_double(double(c.alpha) / double(c.beta)) << '\n';
    }
  }
}

}  // namespace depcross

#endif  // DEPCROSS_PREDICTOR_HPP
