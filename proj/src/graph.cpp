#include "cayleysep/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cayleysep/errors.hpp"
#include "cayleysep/rng.hpp"

namespace cayleysep {

VertexSet::VertexSet(std::initializer_list<VertexId> ids)
    : VertexSet(from_unsorted(std::vector<VertexId>(ids))) {}

VertexSet VertexSet::from_unsorted(std::vector<VertexId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  VertexSet s;
  s.ids_ = std::move(ids);
  return s;
}

VertexSet VertexSet::from_sorted(std::vector<VertexId> ids) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (ids[i - 1] >= ids[i]) throw ArgumentError("vertex set is not strictly increasing");
  }
  VertexSet s;
  s.ids_ = std::move(ids);
  return s;
}

VertexSet VertexSet::from_mask(std::span<const char> mask) {
  VertexSet s;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) s.ids_.push_back(static_cast<VertexId>(v));
  }
  return s;
}

bool VertexSet::contains(VertexId v) const {
  return std::binary_search(ids_.begin(), ids_.end(), v);
}

std::vector<char> VertexSet::mask(std::size_t n) const {
  std::vector<char> m(n, 0);
  for (VertexId v : ids_) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw ArgumentError("vertex id " + std::to_string(v) + " outside graph of " +
                          std::to_string(n) + " vertices");
    }
    m[v] = 1;
  }
  return m;
}

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertex_count) {
    throw ArgumentError("label count does not match vertex count");
  }
  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= vertex_count ||
        static_cast<std::size_t>(v) >= vertex_count) {
      throw ArgumentError("edge endpoint out of range");
    }
    if (u == v) throw ArgumentError("self-loop at vertex " + std::to_string(u));
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (auto [u, v] : arcs) ++g.offsets_[u + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.reserve(arcs.size());
  for (auto [u, v] : arcs) g.adjacency_.push_back(v);
  g.labels_ = std::move(labels);
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < static_cast<VertexId>(vertex_count()); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> bfs_distances(const Graph& g, std::span<const VertexId> sources,
                               std::span<const char> blocked, int max_depth) {
  const std::size_t n = g.vertex_count();
  std::vector<int> dist(n, kUnreachable);
  std::vector<VertexId> queue;
  queue.reserve(n);
  for (VertexId s : sources) {
    if (s < 0 || static_cast<std::size_t>(s) >= n) throw ArgumentError("source outside graph");
    if (!blocked.empty() && blocked[s]) continue;
    if (dist[s] == 0) continue;
    dist[s] = 0;
    queue.push_back(s);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const VertexId u = queue[head];
    if (max_depth >= 0 && dist[u] >= max_depth) continue;
    for (VertexId v : g.neighbors(u)) {
      if (dist[v] != kUnreachable || (!blocked.empty() && blocked[v])) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

std::vector<int> bfs_distances(const Graph& g, const VertexSet& sources) {
  if (sources.empty()) throw ArgumentError("bfs_distances needs at least one source");
  return bfs_distances(g, sources.ids(), {}, -1);
}

VertexSet neighborhood(const Graph& g, const VertexSet& V, int r, bool closed) {
  if (r < 0) throw ArgumentError("neighbourhood radius must be non-negative");
  if (V.empty()) return {};
  const int limit = closed ? r : r - 1;
  if (limit < 0) return {};
  const auto dist = bfs_distances(g, V.ids(), {}, limit);
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreachable && dist[v] <= limit) out.push_back(static_cast<VertexId>(v));
  }
  return VertexSet::from_sorted(std::move(out));
}

VertexSet annulus(const Graph& g, const VertexSet& V, int r, int R) {
  if (r < 0 || r > R) throw ArgumentError("annulus requires 0 <= r <= R");
  if (V.empty()) return {};
  const auto dist = bfs_distances(g, V.ids(), {}, R);
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] != kUnreachable && dist[v] >= r && dist[v] <= R) {
      out.push_back(static_cast<VertexId>(v));
    }
  }
  return VertexSet::from_sorted(std::move(out));
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& V) {
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> remap(n, -1);
  Subgraph out;
  out.original_id.assign(V.begin(), V.end());
  for (std::size_t i = 0; i < out.original_id.size(); ++i) {
    const VertexId v = out.original_id[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw ArgumentError("vertex outside graph");
    remap[v] = static_cast<VertexId>(i);
  }
  std::vector<Edge> edges;
  for (VertexId v : out.original_id) {
    for (VertexId w : g.neighbors(v)) {
      if (v < w && remap[w] >= 0) edges.emplace_back(remap[v], remap[w]);
    }
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.reserve(V.size());
    for (VertexId v : out.original_id) labels.push_back(g.label(v));
  }
  out.graph = Graph::from_edges(V.size(), edges, std::move(labels));
  return out;
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& removed) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen = removed.mask(n);
  std::vector<VertexSet> comps;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < static_cast<VertexId>(n); ++s) {
    if (seen[s]) continue;
    std::vector<VertexId> members;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (VertexId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    comps.push_back(VertexSet::from_unsorted(std::move(members)));
  }
  std::stable_sort(comps.begin(), comps.end(), [](const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a[0] < b[0];
  });
  return comps;
}

std::size_t largest_component_size(const Graph& g, std::span<const char> removed) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(removed.begin(), removed.end());
  std::vector<VertexId> stack;
  std::size_t best = 0;
  for (VertexId s = 0; s < static_cast<VertexId>(n); ++s) {
    if (seen[s]) continue;
    std::size_t size = 0;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    best = std::max(best, size);
  }
  return best;
}

bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  std::vector<char> none(g.vertex_count(), 0);
  return largest_component_size(g, none) == g.vertex_count();
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b)) throw ParseError("expected two vertex ids", line_no);
    if (fields >> extra) throw ParseError("unexpected token '" + extra + "'", line_no);
    auto parse_id = [&](const std::string& tok) {
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError("'" + tok + "' is not a non-negative integer", line_no);
      }
      return value;
    };
    const auto u = parse_id(a);
    const auto v = parse_id(b);
    if (u == v) throw ParseError("self-loop at vertex " + a, line_no);
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw ParseError("edge list contains no edges");

  std::map<std::uint64_t, VertexId> index;
  for (auto [u, v] : raw) {
    index.emplace(u, 0);
    index.emplace(v, 0);
  }
  std::vector<std::string> labels;
  labels.reserve(index.size());
  VertexId next = 0;
  for (auto& [orig, id] : index) {
    id = next++;
    labels.push_back(std::to_string(orig));
  }
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(index[u], index[v]);
  return Graph::from_edges(index.size(), edges, std::move(labels));
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open edge list '" + path.string() + "'");
  return parse_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
  write_edge_list(g, out);
}

namespace builders {

Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(i - 1, i);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw ArgumentError("a cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, edges);
}

Graph grid_graph(std::size_t width, std::size_t height) {
  std::vector<Edge> edges;
  auto id = [&](std::size_t x, std::size_t y) { return static_cast<VertexId>(y * width + x); };
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      if (x + 1 < width) edges.emplace_back(id(x, y), id(x + 1, y));
      if (y + 1 < height) edges.emplace_back(id(x, y), id(x, y + 1));
    }
  }
  return Graph::from_edges(width * height, edges);
}

Graph sierpinski_graph(int level) {
  if (level < 0 || level > 12) throw ArgumentError("sierpinski level must be in [0, 12]");
  // Unit triangles of the side-2^L triangular grid whose corner (i, j) has
  // no common bits survive (Pascal's triangle mod 2).
  const long side = 1L << level;
  std::map<std::pair<long, long>, VertexId> index;
  std::vector<std::pair<std::pair<long, long>, std::pair<long, long>>> raw;
  for (long i = 0; i < side; ++i) {
    for (long j = 0; i + j < side; ++j) {
      if ((i & j) != 0) continue;
      const std::pair<long, long> a{i, j}, b{i + 1, j}, c{i, j + 1};
      raw.push_back({a, b});
      raw.push_back({b, c});
      raw.push_back({a, c});
      index.emplace(a, 0);
      index.emplace(b, 0);
      index.emplace(c, 0);
    }
  }
  std::vector<std::string> labels;
  VertexId next = 0;
  for (auto& [p, id] : index) {
    id = next++;
    labels.push_back(std::to_string(p.first) + "," + std::to_string(p.second));
  }
  std::vector<Edge> edges;
  for (auto& [p, q] : raw) edges.emplace_back(index[p], index[q]);
  return Graph::from_edges(index.size(), edges, std::move(labels));
}

Graph random_connected_graph(std::size_t n, std::size_t extra_edges, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < n; ++v) {
    edges.emplace_back(static_cast<VertexId>(rng.below(v)), static_cast<VertexId>(v));
  }
  if (n >= 2) {
    for (std::size_t e = 0; e < extra_edges; ++e) {
      const auto u = static_cast<VertexId>(rng.below(n));
      const auto v = static_cast<VertexId>(rng.below(n));
      if (u != v) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace builders

}  // namespace cayleysep
