#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cayleysep {

class Rng;

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr int kUnreachable = -1;

/// Sorted, duplicate-free set of vertex ids of some host graph.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> ids);

  static VertexSet from_unsorted(std::vector<VertexId> ids);
  /// Throws ArgumentError unless `ids` is strictly increasing.
  static VertexSet from_sorted(std::vector<VertexId> ids);
  /// Members of a 0/1 membership mask.
  static VertexSet from_mask(std::span<const char> mask);

  std::span<const VertexId> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(VertexId v) const;
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }
  VertexId operator[](std::size_t i) const { return ids_[i]; }

  /// 0/1 mask of length n; throws ArgumentError for ids outside [0, n).
  std::vector<char> mask(std::size_t n) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<VertexId> ids_;
};

/// Finite simple undirected graph in compressed adjacency form. Neighbor lists
/// are sorted ascending. Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Duplicate edges (in either orientation) are
  /// merged; self-loops and out-of-range endpoints throw ArgumentError.
  static Graph from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  int degree(VertexId v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  bool has_edge(VertexId u, VertexId v) const;

  bool has_labels() const noexcept { return !labels_.empty(); }
  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Edges (u, v) with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<VertexId> adjacency_;
  std::vector<std::string> labels_;
};

/// Unweighted distance to the nearest source; kUnreachable where no path.
/// Vertices with blocked[v] != 0 are neither entered nor used as sources.
std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources);
std::vector<int> bfs_distances(const Graph& g, std::span<const VertexId> sources,
                               std::span<const char> blocked, int max_depth = -1);

/// Open (d < r) or closed (d <= r) r-neighbourhood of V.
VertexSet neighborhood(const Graph& g, const VertexSet& V, int r, bool closed);

/// Closed R-neighbourhood minus open r-neighbourhood.
VertexSet annulus(const Graph& g, const VertexSet& V, int r, int R);

struct Subgraph {
  Graph graph;
  std::vector<VertexId> original_id;  // new id -> id in the host graph
};

Subgraph induced_subgraph(const Graph& g, const VertexSet& V);

/// Components of g minus `removed`, largest first; ties by smallest member.
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& removed = {});

/// Size of the largest component of g minus the vertices flagged in `removed`.
std::size_t largest_component_size(const Graph& g, std::span<const char> removed);

bool is_connected(const Graph& g);

// Edge-list text format: one edge per line as two non-negative integers,
// `#` starts a comment. Ids are remapped to 0..n-1 in ascending order of the
// original id, and the original id is kept as the vertex label.
Graph parse_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);
void write_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::filesystem::path& path);

namespace builders {

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph grid_graph(std::size_t width, std::size_t height);
/// Level-L Sierpinski triangle graph; level 0 is a triangle.
Graph sierpinski_graph(int level);
/// Random spanning tree on n vertices plus `extra_edges` random chords.
Graph random_connected_graph(std::size_t n, std::size_t extra_edges, Rng& rng);

}  // namespace builders

}  // namespace cayleysep
