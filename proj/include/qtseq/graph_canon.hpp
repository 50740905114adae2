#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qtseq {

/// Simple undirected vertex-colored graph with bitset adjacency.
class ColoredGraph {
 public:
  explicit ColoredGraph(int vertices, std::vector<int> colors = {});

  int size() const { return n_; }
  int color(int v) const { return colors_[v]; }
  const std::vector<int>& colors() const { return colors_; }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1u; }
  const std::uint64_t* row(int v) const { return &adj_[static_cast<std::size_t>(v) * words_]; }
  int words() const { return words_; }
  int degree(int v) const;

  /// Graph with vertex v renamed to perm[v].
  ColoredGraph relabeled(const std::vector<int>& perm) const;

 private:
  int n_;
  int words_;
  std::vector<int> colors_;
  std::vector<std::uint64_t> adj_;
};

struct CanonicalLabeling {
  std::vector<int> label;  // vertex -> canonical position
  std::string certificate;
  std::size_t nodes = 0;  // search tree nodes visited
  std::size_t automorphisms = 0;
};

/// Color-respecting canonical labeling by partition refinement and
/// individualization with automorphism and invariant pruning. Two graphs get
/// the same certificate iff they are isomorphic by a color-preserving map
/// (colors are compared by value).
CanonicalLabeling canonical_labeling(const ColoredGraph& g);
inline std::string canonical_certificate(const ColoredGraph& g) { return canonical_labeling(g).certificate; }

std::string to_hex(const std::string& bytes);

}  // namespace qtseq
