#ifndef DEPCROSS_TREE_HPP
#define DEPCROSS_TREE_HPP

// Dependency trees over the positions 1..n of a sentence. The vertex id IS
// the linear position, so an arrangement change is a relabeling of vertices.

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace depcross {

// Undirected edge between two positions, stored with a < b.
struct Edge {
  int a = 0;
  int b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

inline Edge make_edge(int u, int v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

// A head assignment that has not been validated yet: heads[i] is the head
// position of the token at position i+1, 0 meaning the artificial root.
struct TreeCandidate {
  std::vector<int> heads;

  int size() const { return static_cast<int>(heads.size()); }
};

// A validated rooted tree. Construction checks that the head assignment is
// a single tree: every head in range, exactly one root, no cycles.
class DependencyTree {
 public:
  explicit DependencyTree(std::vector<int> heads) : heads_(std::move(heads)) {
    const int n = size();
    if (n < 1) throw std::invalid_argument("tree must have at least 1 vertex");
    root_ = 0;
    for (int v = 1; v <= n; ++v) {
      const int h = heads_[std::size_t(v - 1)];
      if (h < 0 || h > n)
        throw std::invalid_argument("head out of range at position " +
                                    std::to_string(v));
      if (h == v)
        throw std::invalid_argument("self-loop at position " +
                                    std::to_string(v));
      if (h == 0) {
        if (root_ != 0) throw std::invalid_argument("multiple roots");
        root_ = v;
      }
    }
    if (root_ == 0) throw std::invalid_argument("no root");
    // Walk each parent chain; a chain that never reaches the root reveals
    // a cycle. state: 0 unseen, 1 on current chain, 2 known good.
    std::vector<unsigned char> state(std::size_t(n) + 1, 0);
    state[std::size_t(root_)] = 2;
    std::vector<int> chain;
    for (int v = 1; v <= n; ++v) {
      int u = v;
      chain.clear();
      while (state[std::size_t(u)] == 0) {
        state[std::size_t(u)] = 1;
        chain.push_back(u);
        u = heads_[std::size_t(u - 1)];
      }
      if (state[std::size_t(u)] == 1)
        throw std::invalid_argument("cycle through position " +
                                    std::to_string(u));
      for (int w : chain) state[std::size_t(w)] = 2;
    }
    edges_.reserve(std::size_t(n) - 1);
    for (int v = 1; v <= n; ++v) {
      const int h = heads_[std::size_t(v - 1)];
      if (h != 0) edges_.push_back(make_edge(v, h));
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
      return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
  }

  explicit DependencyTree(const TreeCandidate& cand)
      : DependencyTree(cand.heads) {}

  int size() const { return static_cast<int>(heads_.size()); }
  int root() const { return root_; }

  int head(int v) const { return heads_.at(std::size_t(v - 1)); }
  const std::vector<int>& heads() const { return heads_; }

  // All n-1 edges, sorted by (a, b).
  const std::vector<Edge>& edges() const { return edges_; }

  // degrees()[v] for v in 1..n; index 0 unused.
  std::vector<int> degrees() const {
    std::vector<int> deg(std::size_t(size()) + 1, 0);
    for (const Edge& e : edges_) {
      ++deg[std::size_t(e.a)];
      ++deg[std::size_t(e.b)];
    }
    return deg;
  }

  friend bool operator==(const DependencyTree& x, const DependencyTree& y) {
    return x.heads_ == y.heads_;
  }

 private:
  std::vector<int> heads_;
  std::vector<Edge> edges_;
  int root_ = 0;
};

}  // namespace depcross

#endif  // DEPCROSS_TREE_HPP
