#ifndef DEPCROSS_ENSEMBLES_HPP
#define DEPCROSS_ENSEMBLES_HPP

// Random ensembles: uniform labeled trees, uniform arrangements, Monte
// Carlo estimates over them, and synthetic corpora. All randomness flows
// through RandomSource so a seed pins the full byte stream; the bounded
// draw and the shuffle are written out by hand because the standard
// library's distributions are not reproducible across implementations.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "depcross/predictor.hpp"
#include "depcross/tree.hpp"
#include "depcross/tree_metrics.hpp"

namespace depcross {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); rejection sampling keeps it exactly uniform.
  std::uint64_t bounded(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("bounded(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return double(engine_() >> 11) * 0x1.0p-53; }

  // Deterministic substream for parallel or per-item use.
  RandomSource stream(std::uint64_t idx) const {
    return RandomSource(splitmix64(seed_ ^ splitmix64(idx)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

// Fisher-Yates permutation of 1..n.
inline std::vector<int> random_permutation(int n, RandomSource& rng) {
  std::vector<int> perm(std::size_t(n), 0);
  std::iota(perm.begin(), perm.end(), 1);
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[std::size_t(rng.bounded(i))]);
  return perm;
}

// Uniformly random linear arrangement of the same tree.
inline DependencyTree shuffle_arrangement(const DependencyTree& t,
                                          RandomSource& rng) {
  return relabel(t, random_permutation(t.size(), rng));
}

namespace detail {

// Decodes a Pruefer sequence (values in 1..n, length n-2) into edges.
inline std::vector<Edge> prufer_decode(int n, const std::vector<int>& code) {
  std::vector<int> deg(std::size_t(n) + 1, 1);
  for (int c : code) ++deg[std::size_t(c)];
  std::vector<Edge> edges;
  edges.reserve(std::size_t(n) - 1);
  int ptr = 1;
  while (deg[std::size_t(ptr)] != 1) ++ptr;
  int leaf = ptr;
  for (int c : code) {
    edges.push_back(make_edge(leaf, c));
    if (--deg[std::size_t(c)] == 1 && c < ptr) {
      leaf = c;
    } else {
      ++ptr;
      while (deg[std::size_t(ptr)] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.push_back(make_edge(leaf, n));
  return edges;
}

// Roots an edge list at the given vertex and returns the head vector.
inline std::vector<int> root_edges(int n, const std::vector<Edge>& edges,
                                   int root) {
  std::vector<std::vector<int>> adj(std::size_t(n) + 1);
  for (const Edge& e : edges) {
    adj[std::size_t(e.a)].push_back(e.b);
    adj[std::size_t(e.b)].push_back(e.a);
  }
  std::vector<int> heads(std::size_t(n), -1);
  std::vector<int> queue{root};
  heads[std::size_t(root - 1)] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int v = queue[q];
    for (int w : adj[std::size_t(v)]) {
      if (heads[std::size_t(w - 1)] == -1) {
        heads[std::size_t(w - 1)] = v;
        queue.push_back(w);
      }
    }
  }
  return heads;
}

}  // namespace detail

// Uniform over all n^(n-2) labeled trees, via a uniform Pruefer sequence.
// Rooted at vertex n; the root choice does not affect any arrangement
// statistic because edges are undirected.
inline DependencyTree uniform_random_tree(int n, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("tree needs n >= 1");
  if (n == 1) return DependencyTree(std::vector<int>{0});
  std::vector<int> code(std::size_t(n) - 2);
  for (int& c : code) c = int(rng.bounded(std::uint64_t(n))) + 1;
  return DependencyTree(
      detail::root_edges(n, detail::prufer_decode(n, code), n));
}

// Random arrangement in which every subtree occupies a contiguous interval;
// such arrangements have no crossings.
inline DependencyTree planar_arrangement(const DependencyTree& t,
                                         RandomSource& rng) {
  const int n = t.size();
  std::vector<std::vector<int>> kids(std::size_t(n) + 1);
  for (int v = 1; v <= n; ++v) {
    if (t.head(v) != 0) kids[std::size_t(t.head(v))].push_back(v);
  }
  std::vector<int> pos(std::size_t(n), 0);
  int next = 0;
  struct Frame {
    int v;
    std::vector<int> items;  // 0 = the vertex itself, else a child subtree
    std::size_t i = 0;
  };
  std::vector<Frame> stack;
  const auto open = [&](int v) {
    Frame f;
    f.v = v;
    f.items.push_back(0);
    for (int c : kids[std::size_t(v)]) f.items.push_back(c);
    for (std::size_t i = f.items.size(); i > 1; --i)
      std::swap(f.items[i - 1], f.items[std::size_t(rng.bounded(i))]);
    stack.push_back(std::move(f));
  };
  open(t.root());
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.i == f.items.size()) {
      stack.pop_back();
      continue;
    }
    const int item = f.items[f.i++];
    const int v = f.v;
    if (item == 0)
      pos[std::size_t(v - 1)] = ++next;
    else
      open(item);  // may invalidate f
  }
  return relabel(t, pos);
}

// Applies the given number of random adjacent transpositions to the
// arrangement; a cheap way to move slightly away from planarity.
inline DependencyTree perturb_arrangement(const DependencyTree& t, int swaps,
                                          RandomSource& rng) {
  const int n = t.size();
  if (n < 2 || swaps <= 0) return t;
  std::vector<int> at(std::size_t(n), 0);  // at[p-1] = vertex at position p
  std::iota(at.begin(), at.end(), 1);
  for (int s = 0; s < swaps; ++s) {
    const std::size_t i = std::size_t(rng.bounded(std::uint64_t(n - 1)));
    std::swap(at[i], at[i + 1]);
  }
  std::vector<int> pos(std::size_t(n), 0);
  for (int p = 1; p <= n; ++p) pos[std::size_t(at[std::size_t(p - 1)] - 1)] = p;
  return relabel(t, pos);
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample stddev / sqrt(samples)
  long long samples = 0;
};

namespace detail {

// Finalizes a Welford accumulation.
inline MonteCarloEstimate finish_estimate(double mean, double m2,
                                          long long k) {
  MonteCarloEstimate e;
  e.mean = mean;
  e.samples = k;
  e.std_error = std::sqrt(m2 / (double(k) * double(k - 1)));
  return e;
}

}  // namespace detail

template <typename F>
inline MonteCarloEstimate monte_carlo(long long samples, F&& draw) {
  if (samples < 2)
    throw std::invalid_argument("a Monte Carlo estimate needs >= 2 samples");
  double mean = 0.0, m2 = 0.0;
  for (long long k = 1; k <= samples; ++k) {
    const double x = draw();
    const double d = x - mean;
    mean += d / double(k);
    m2 += d * (x - mean);
  }
  return detail::finish_estimate(mean, m2, samples);
}

// Count-weighted pooling of two estimates of the same quantity.
inline MonteCarloEstimate merge(const MonteCarloEstimate& a,
                                const MonteCarloEstimate& b) {
  if (a.samples == 0) return b;
  if (b.samples == 0) return a;
  const double ka = double(a.samples), kb = double(b.samples);
  const auto m2_of = [](const MonteCarloEstimate& e) {
    return e.std_error * e.std_error * double(e.samples) *
           double(e.samples - 1);
  };
  const double delta = b.mean - a.mean;
  const double mean = a.mean + delta * kb / (ka + kb);
  const double m2 = m2_of(a) + m2_of(b) + delta * delta * ka * kb / (ka + kb);
  return detail::finish_estimate(mean, m2, a.samples + b.samples);
}

// Mean crossings over uniformly random arrangements; converges to |Q|/3.
inline MonteCarloEstimate estimate_null_crossings(const DependencyTree& t,
                                                  long long samples,
                                                  RandomSource& rng) {
  return monte_carlo(samples, [&] {
    return double(count_crossings(shuffle_arrangement(t, rng)));
  });
}

// Mean of the length-conditioned prediction over uniformly random
// arrangements of the same tree.
inline MonteCarloEstimate estimate_e2_mean_over_arrangements(
    const DependencyTree& t, long long samples, RandomSource& rng,
    const CrossingProbabilityTable& table) {
  return monte_carlo(samples, [&] {
    return predicted_crossings_by_length(shuffle_arrangement(t, rng), table);
  });
}

struct SyntheticCorpusOptions {
  long long sentences = 100;
  int n_min = 10;
  int n_max = 10;
  int swaps = 2;  // adjacent transpositions applied after planarization
};

// Random trees in near-planar arrangements, emitted as CoNLL records.
// Sentence lengths are uniform over [n_min, n_max].
inline void write_synthetic_corpus(std::ostream& out,
                                   const SyntheticCorpusOptions& opt,
                                   RandomSource& rng) {
  if (opt.n_min < 2 || opt.n_max < opt.n_min)
    throw std::invalid_argument("need 2 <= n_min <= n_max");
  out << "# seed: " << rng.seed() << '\n';
  for (long long s = 0; s < opt.sentences; ++s) {
    const int n =
        opt.n_min +
        int(rng.bounded(std::uint64_t(opt.n_max - opt.n_min) + 1));
    DependencyTree tree = perturb_arrangement(
        planar_arrangement(uniform_random_tree(n, rng), rng), opt.swaps, rng);
    for (int v = 1; v <= n; ++v) {
      out << v << "\tw" << v << "\t_\tX\tX\t_\t" << tree.head(v) << "\tdep\t_\t_\n";
    }
    out << '\n';
  }
}

}  // namespace depcross

#endif  // DEPCROSS_ENSEMBLES_HPP
