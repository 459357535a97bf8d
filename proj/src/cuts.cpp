#include "cayleysep/cuts.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "cayleysep/errors.hpp"
#include "cayleysep/parallel.hpp"
#include "cayleysep/rng.hpp"

namespace cayleysep {

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Exact: return "exact";
    case BoundKind::Upper: return "upper";
    case BoundKind::Lower: return "lower";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Largest component of g minus `removed`, giving up as soon as one exceeds
// `limit` (the returned value is then some size > limit).
std::size_t largest_component_capped(const Graph& g, std::span<const char> removed,
                                     std::size_t limit, std::vector<char>& seen,
                                     std::vector<VertexId>& stack) {
  const std::size_t n = g.vertex_count();
  seen.assign(removed.begin(), removed.end());
  std::size_t best = 0;
  for (VertexId s = 0; s < static_cast<VertexId>(n); ++s) {
    if (seen[s]) continue;
    std::size_t size = 0;
    seen[s] = 1;
    stack.clear();
    stack.push_back(s);
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      if (++size > limit) return size;
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

CutCertificate make_certificate(const Graph& g, std::vector<VertexId> sep, BoundKind kind,
                                std::string method) {
  CutCertificate c;
  c.kind = kind;
  c.separator = VertexSet::from_unsorted(std::move(sep));
  auto mask = c.separator->mask(g.vertex_count());
  c.largest_component_size = largest_component_size(g, mask);
  c.value = c.separator->size();
  c.method = std::move(method);
  return c;
}

}  // namespace

bool is_cut_set(const Graph& g, const VertexSet& S) {
  const auto mask = S.mask(g.vertex_count());
  return largest_component_size(g, mask) <= half_threshold(g.vertex_count());
}

CutCertificate cut_brute(const Graph& g, std::size_t max_vertices) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices) {
    throw ResourceError("cut_brute is capped at " + std::to_string(max_vertices) +
                        " vertices (graph has " + std::to_string(n) + "); use cut_exact");
  }
  const auto start = Clock::now();
  const std::size_t h = half_threshold(n);
  std::vector<char> removed(n, 0), seen;
  std::vector<VertexId> stack;
  std::uint64_t checked = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<VertexId> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::fill(removed.begin(), removed.end(), 0);
      for (VertexId v : pick) removed[v] = 1;
      ++checked;
      if (largest_component_capped(g, removed, h, seen, stack) <= h) {
        auto cert = make_certificate(g, pick, BoundKind::Exact, "brute");
        cert.stats.nodes = checked;
        cert.stats.elapsed_ms = elapsed_ms(start);
        return cert;
      }
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && static_cast<std::size_t>(pick[i - 1]) == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw std::logic_error("cut_brute: removing every vertex is always valid");
}

// ---------------------------------------------------------------------------
// Heuristic

namespace {

std::vector<VertexId> bfs_order(const Graph& g, VertexId start) {
  const std::size_t n = g.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<VertexId> order;
  order.reserve(n);
  auto run = [&](VertexId s) {
    std::size_t head = order.size();
    seen[s] = 1;
    order.push_back(s);
    for (; head < order.size(); ++head) {
      for (VertexId v : g.neighbors(order[head])) {
        if (!seen[v]) {
          seen[v] = 1;
          order.push_back(v);
        }
      }
    }
  };
  run(start);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (!seen[v]) run(v);
  }
  return order;
}

VertexId farthest_from(const Graph& g, VertexId s) {
  const auto d = bfs_distances(g, VertexSet{s});
  VertexId best = s;
  for (VertexId v = 0; v < static_cast<VertexId>(d.size()); ++v) {
    if (d[v] > d[best]) best = v;
  }
  return best;
}

// Vertices ordered by d(u, .) - d(v, .): prefixes approximate half-spaces.
std::vector<VertexId> bisector_order(const Graph& g, VertexId u, VertexId v) {
  const std::size_t n = g.vertex_count();
  auto du = bfs_distances(g, VertexSet{u});
  auto dv = bfs_distances(g, VertexSet{v});
  const int far = static_cast<int>(n) + 1;
  for (std::size_t x = 0; x < n; ++x) {
    if (du[x] == kUnreachable) du[x] = far;
    if (dv[x] == kUnreachable) dv[x] = far;
  }
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    const int fa = du[a] - dv[a], fb = du[b] - dv[b];
    if (fa != fb) return fa < fb;
    if (du[a] != du[b]) return du[a] < du[b];
    return a < b;
  });
  return order;
}

// Best prefix-boundary separator of an ordering, using the size test that
// guarantees validity without a component scan.
std::optional<std::vector<VertexId>> prefix_sweep(const Graph& g,
                                                  const std::vector<VertexId>& order) {
  const std::size_t n = g.vertex_count();
  const std::size_t h = half_threshold(n);
  std::vector<char> in_prefix(n, 0);
  std::vector<int> outside_neighbors(n, 0), inside_neighbors(n, 0);
  std::size_t inner = 0, outer = 0;
  std::size_t best_inner = n + 1, best_outer = n + 1, inner_at = 0, outer_at = 0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const VertexId x = order[j];
    in_prefix[x] = 1;
    if (inside_neighbors[x] > 0) --outer;
    int out_count = 0;
    for (VertexId y : g.neighbors(x)) {
      if (in_prefix[y]) {
        if (--outside_neighbors[y] == 0) --inner;
      } else {
        ++out_count;
        if (++inside_neighbors[y] == 1) ++outer;
      }
    }
    outside_neighbors[x] = out_count;
    if (out_count > 0) ++inner;
    const std::size_t size = j + 1;
    if (size - inner <= h && n - size <= h && inner < best_inner) {
      best_inner = inner;
      inner_at = size;
    }
    if (size <= h && n - size - outer <= h && outer < best_outer) {
      best_outer = outer;
      outer_at = size;
    }
  }
  if (best_inner > n && best_outer > n) return std::nullopt;
  const bool use_inner = best_inner <= best_outer;
  const std::size_t size = use_inner ? inner_at : outer_at;
  std::fill(in_prefix.begin(), in_prefix.end(), 0);
  for (std::size_t j = 0; j < size; ++j) in_prefix[order[j]] = 1;
  std::vector<VertexId> sep;
  for (VertexId x = 0; x < static_cast<VertexId>(n); ++x) {
    if (static_cast<bool>(in_prefix[x]) != use_inner) continue;
    for (VertexId y : g.neighbors(x)) {
      if (static_cast<bool>(in_prefix[y]) != use_inner) {
        sep.push_back(x);
        break;
      }
    }
  }
  return sep;
}

class Validator {
 public:
  explicit Validator(const Graph& g) : g_(g), removed_(g.vertex_count(), 0) {}

  std::size_t largest(const std::vector<VertexId>& sep) {
    std::fill(removed_.begin(), removed_.end(), 0);
    for (VertexId v : sep) removed_[v] = 1;
    return largest_component_capped(g_, removed_, g_.vertex_count(), seen_, stack_);
  }
  bool valid(const std::vector<VertexId>& sep) {
    return largest(sep) <= half_threshold(g_.vertex_count());
  }

 private:
  const Graph& g_;
  std::vector<char> removed_, seen_;
  std::vector<VertexId> stack_;
};

void refine(const Graph& g, std::vector<VertexId>& sep, int passes) {
  Validator check(g);
  auto drop_redundant = [&] {
    bool any = false;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < sep.size(); ++i) {
        std::vector<VertexId> trial = sep;
        trial.erase(trial.begin() + static_cast<long>(i));
        if (check.valid(trial)) {
          sep = std::move(trial);
          changed = any = true;
          break;
        }
      }
    }
    return any;
  };
  drop_redundant();
  for (int pass = 0; pass < passes; ++pass) {
    bool improved = false;
    std::size_t current = check.largest(sep);
    for (std::size_t i = 0; i < sep.size(); ++i) {
      const VertexId s = sep[i];
      for (VertexId t : g.neighbors(s)) {
        if (std::find(sep.begin(), sep.end(), t) != sep.end()) continue;
        std::vector<VertexId> trial = sep;
        trial[i] = t;
        const std::size_t largest = check.largest(trial);
        if (largest <= half_threshold(g.vertex_count()) && largest < current) {
          sep = std::move(trial);
          current = largest;
          improved = true;
          break;
        }
      }
    }
    if (drop_redundant()) improved = true;
    if (!improved) break;
  }
  std::sort(sep.begin(), sep.end());
}

}  // namespace

CutCertificate cut_heuristic(const Graph& g, std::uint64_t seed, std::span<const int> layering,
                             const HeuristicOptions& options) {
  const auto start = Clock::now();
  const std::size_t n = g.vertex_count();
  if (!layering.empty() && layering.size() != n) {
    throw ArgumentError("layering must give one distance per vertex");
  }
  auto finish = [&](std::vector<VertexId> sep, std::string method) {
    auto cert = make_certificate(g, std::move(sep), BoundKind::Upper, std::move(method));
    cert.stats.elapsed_ms = elapsed_ms(start);
    return cert;
  };
  if (n == 0) return finish({}, "empty");
  if (n == 1) return finish({0}, "singleton");

  Validator check(g);
  if (check.valid({})) return finish({}, "no-op");

  std::vector<VertexId> best(n - 1);
  std::iota(best.begin(), best.end(), 0);
  std::string best_method = "all-but-one";
  auto offer = [&](std::vector<VertexId> sep, const char* method) {
    std::sort(sep.begin(), sep.end());
    if (sep.size() < best.size() && check.valid(sep)) {
      best = std::move(sep);
      best_method = method;
    }
  };

  std::vector<std::vector<VertexId>> orderings;
  if (!layering.empty()) {
    const int top = *std::max_element(layering.begin(), layering.end());
    VertexId center = 0;
    for (int t = 0; t <= top; ++t) {
      std::vector<VertexId> sphere;
      for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
        if (layering[v] == t) sphere.push_back(v);
      }
      if (t == 0 && !sphere.empty()) center = sphere.front();
      offer(sphere, "sphere-sweep");
    }
    orderings.push_back(bfs_order(g, center));
    std::vector<VertexId> outer;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (layering[v] == top) outer.push_back(v);
    }
    const std::size_t samples = std::min<std::size_t>(outer.size(), 32);
    for (std::size_t i = 0; i < samples; ++i) {
      const VertexId u = outer[i * outer.size() / samples];
      orderings.push_back(bisector_order(g, u, farthest_from(g, u)));
    }
  }
  for (auto [u, v] : options.anchors) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
      throw ArgumentError("anchor vertex out of range");
    }
    orderings.push_back(bisector_order(g, u, v));
  }
  Rng rng(seed);
  for (int i = 0; i < options.orderings; ++i) {
    const auto s = static_cast<VertexId>(rng.below(n));
    if (i % 2 == 0) {
      orderings.push_back(bfs_order(g, s));
    } else {
      const VertexId u = farthest_from(g, s);
      orderings.push_back(bisector_order(g, u, farthest_from(g, u)));
    }
  }
  for (const auto& order : orderings) {
    if (auto sep = prefix_sweep(g, order)) offer(std::move(*sep), "prefix-sweep");
  }

  const std::size_t before = best.size();
  refine(g, best, options.refine_passes);
  if (best.size() < before) best_method += "+refine";
  return finish(std::move(best), best_method);
}

// ---------------------------------------------------------------------------
// Multicommodity flow lower bound

double separated_pairs_needed(std::size_t n, std::size_t k) {
  if (k >= n) return 0.0;
  const std::size_t h = half_threshold(n);
  if (h == 0) return 0.0;
  auto pairs = [](double x) { return x * (x - 1.0) / 2.0; };
  const std::size_t m = n - k;
  const double inside = static_cast<double>(m / h) * pairs(static_cast<double>(h)) +
                        pairs(static_cast<double>(m % h));
  return pairs(static_cast<double>(n)) - inside;
}

namespace {

constexpr double kFlowSlack = 1e-9;

bool flow_admits(double carried, double needed) {
  return carried >= needed * (1.0 - kFlowSlack) - kFlowSlack;
}

std::size_t flow_bound_value(std::vector<double> loads) {
  const std::size_t n = loads.size();
  std::sort(loads.begin(), loads.end(), std::greater<>());
  double carried = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    carried += loads[k - 1];
    if (flow_admits(carried, separated_pairs_needed(n, k))) return k;
  }
  return n;
}

// Shortest-path routing of all unordered pairs under vertex weights (the cost
// of a path is the weight of every vertex it enters). Ties split in proportion
// to path counts. Each pair is routed once from each end with weight 1/2.
std::vector<double> routing_loads(const Graph& g, const std::vector<double>& weight, int workers) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kBlock = 16;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(blocks);
  parallel_for(blocks, workers, [&](std::size_t b) {
    std::vector<double> local(n, 0.0), dist(n), sigma(n), delta(n);
    std::vector<VertexId> settled;
    settled.reserve(n);
    using Item = std::pair<double, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t src = b * kBlock; src < end; ++src) {
      const auto s = static_cast<VertexId>(src);
      std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      settled.clear();
      dist[s] = 0.0;
      sigma[s] = 1.0;
      heap.emplace(0.0, s);
      std::vector<char> done(n, 0);
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        settled.push_back(u);
        for (VertexId w : g.neighbors(u)) {
          if (done[w]) continue;
          const double nd = d + weight[w];
          if (nd < dist[w]) {
            dist[w] = nd;
            sigma[w] = sigma[u];
            heap.emplace(nd, w);
          } else if (nd == dist[w]) {
            sigma[w] += sigma[u];
          }
        }
      }
      for (auto it = settled.rbegin(); it != settled.rend(); ++it) {
        const VertexId w = *it;
        if (w == s) continue;
        for (VertexId v : g.neighbors(w)) {
          if (dist[v] + weight[w] == dist[w]) {
            delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
          }
        }
        local[w] += delta[w] + 1.0;
      }
      local[s] += static_cast<double>(settled.size() - 1);
    }
    partial[b] = std::move(local);
  });
  std::vector<double> loads(n, 0.0);
  for (const auto& part : partial) {
    for (std::size_t v = 0; v < n; ++v) loads[v] += part[v];
  }
  for (auto& x : loads) x *= 0.5;
  return loads;
}

}  // namespace

FlowBound multicommodity_lower_bound(const Graph& g, int iterations, int workers) {
  const std::size_t n = g.vertex_count();
  if (n < 2) return {n, std::vector<double>(n, 0.0)};
  if (!is_connected(g)) {
    throw ArgumentError("multicommodity bound needs a connected graph");
  }
  constexpr double kStep = 0.5;
  std::vector<double> weight(n, 1.0), average(n, 0.0);
  FlowBound best{0, {}};
  for (int it = 0; it < std::max(1, iterations); ++it) {
    const auto loads = routing_loads(g, weight, workers);
    for (std::size_t v = 0; v < n; ++v) {
      average[v] = (average[v] * it + loads[v]) / (it + 1);
    }
    const std::size_t value = flow_bound_value(average);
    if (value > best.value) best = {value, average};
    const double peak = *std::max_element(loads.begin(), loads.end());
    double total = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      weight[v] *= std::exp(kStep * loads[v] / peak);
      total += weight[v];
    }
    for (auto& w : weight) w *= static_cast<double>(n) / total;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

struct BudgetExhausted {};

class SeparatorSearch {
 public:
  SeparatorSearch(const Graph& g, const std::vector<double>* loads, std::uint64_t work_limit,
                  Clock::time_point deadline)
      : g_(g),
        n_(g.vertex_count()),
        h_(half_threshold(n_)),
        work_limit_(work_limit),
        deadline_(deadline),
        state_(n_, kFree),
        parent_(n_),
        size_(n_, 1),
        leaf_cost_(1 + (n_ + 2 * g.edge_count()) / 16) {
    std::iota(parent_.begin(), parent_.end(), 0);
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    if (loads) {
      std::stable_sort(order_.begin(), order_.end(),
                       [&](VertexId a, VertexId b) { return (*loads)[a] > (*loads)[b]; });
      sorted_loads_.resize(n_);
      for (std::size_t i = 0; i < n_; ++i) sorted_loads_[i] = (*loads)[order_[i]];
      prefix_.assign(n_ + 1, 0.0);
      for (std::size_t i = 0; i < n_; ++i) prefix_[i + 1] = prefix_[i] + sorted_loads_[i];
    } else {
      std::stable_sort(order_.begin(), order_.end(),
                       [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
    }
  }

  // Looks for a valid separator with exactly k vertices.
  std::optional<std::vector<VertexId>> find(std::size_t k) {
    k_ = k;
    need_ = separated_pairs_needed(n_, k);
    if (k > n_) return std::nullopt;
    if (dfs(0, 0, 0.0)) {
      std::vector<VertexId> sep;
      for (VertexId v = 0; v < static_cast<VertexId>(n_); ++v) {
        if (state_[v] == kCut) sep.push_back(v);
      }
      return sep;
    }
    return std::nullopt;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t work() const { return work_; }
  bool hit_wallclock() const { return hit_wallclock_; }

 private:
  static constexpr char kFree = 0, kCut = 1, kKept = 2;

  VertexId root(VertexId v) const {
    while (parent_[v] != v) v = parent_[v];
    return v;
  }

  void unite(VertexId a, VertexId b) {
    a = root(a);
    b = root(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    history_.push_back(b);
  }

  void rollback(std::size_t mark) {
    while (history_.size() > mark) {
      const VertexId b = history_.back();
      history_.pop_back();
      const VertexId a = parent_[b];
      size_[a] -= size_[b];
      parent_[b] = b;
    }
  }

  void charge(std::uint64_t units) {
    work_ += units;
    if (work_ > work_limit_) throw BudgetExhausted{};
    if ((++nodes_ & 0xfff) == 0 && Clock::now() > deadline_) {
      hit_wallclock_ = true;
      throw BudgetExhausted{};
    }
  }

  bool leaf_valid() {
    removed_.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) removed_[v] = state_[v] == kCut;
    return largest_component_capped(g_, removed_, h_, seen_, stack_) <= h_;
  }

  // With one vertex left to choose, a single articulation scan of the one
  // oversized component decides every remaining candidate at once.
  bool last_vertex(std::size_t i, double carried) {
    charge(leaf_cost_);
    const auto n = static_cast<VertexId>(n_);
    comp_.assign(n_, -1);
    int oversized = -1, oversized_count = 0;
    int label = 0;
    for (VertexId s = 0; s < n; ++s) {
      if (state_[s] == kCut || comp_[s] >= 0) continue;
      std::size_t size = 0;
      comp_[s] = label;
      stack_.clear();
      stack_.push_back(s);
      while (!stack_.empty()) {
        const VertexId u = stack_.back();
        stack_.pop_back();
        ++size;
        for (VertexId w : g_.neighbors(u)) {
          if (state_[w] != kCut && comp_[w] < 0) {
            comp_[w] = label;
            stack_.push_back(w);
          }
        }
      }
      if (size > h_) {
        oversized = label;
        if (++oversized_count > 1) return false;
      }
      ++label;
    }
    if (oversized < 0) {
      if (i >= n_) return false;
      state_[order_[i]] = kCut;
      return true;
    }

    // largest piece of the oversized component after deleting each vertex
    disc_.assign(n_, -1);
    low_.assign(n_, 0);
    sub_.assign(n_, 0);
    cut_sum_.assign(n_, 0);
    cut_max_.assign(n_, 0);
    parent_tree_.assign(n_, -1);
    VertexId r = -1;
    for (VertexId v = 0; v < n && r < 0; ++v) {
      if (comp_[v] == oversized) r = v;
    }
    int clock = 0;
    std::vector<std::pair<VertexId, std::size_t>>& frames = frames_;
    frames.clear();
    disc_[r] = low_[r] = clock++;
    sub_[r] = 1;
    frames.emplace_back(r, 0);
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto nb = g_.neighbors(v);
      if (next < nb.size()) {
        const VertexId w = nb[next++];
        if (comp_[w] != oversized) continue;
        if (disc_[w] < 0) {
          parent_tree_[w] = v;
          disc_[w] = low_[w] = clock++;
          sub_[w] = 1;
          frames.emplace_back(w, 0);
        } else if (w != parent_tree_[v]) {
          low_[v] = std::min(low_[v], disc_[w]);
        }
        continue;
      }
      const VertexId child = v;
      frames.pop_back();
      const VertexId p = parent_tree_[child];
      if (p < 0) continue;
      low_[p] = std::min(low_[p], low_[child]);
      sub_[p] += sub_[child];
      if (low_[child] >= disc_[p]) {
        cut_sum_[p] += sub_[child];
        cut_max_[p] = std::max(cut_max_[p], sub_[child]);
      }
    }
    const int total = sub_[r];
    for (std::size_t j = i; j < n_; ++j) {
      if (!prefix_.empty() && !flow_admits(carried + sorted_loads_[j], need_)) break;
      const VertexId x = order_[j];
      if (comp_[x] != oversized) continue;
      const int rest = total - 1 - cut_sum_[x];
      if (static_cast<std::size_t>(std::max(rest, cut_max_[x])) <= h_) {
        state_[x] = kCut;
        return true;
      }
    }
    return false;
  }

  bool dfs(std::size_t i, std::size_t chosen, double carried) {
    charge(1);
    if (chosen == k_) {
      charge(leaf_cost_);
      return leaf_valid();
    }
    if (chosen + 1 == k_) return last_vertex(i, carried);
    const std::size_t left = k_ - chosen;
    if (n_ - i < left) return false;
    if (!prefix_.empty() && !flow_admits(carried + prefix_[i + left] - prefix_[i], need_)) {
      return false;
    }
    const VertexId v = order_[i];

    state_[v] = kCut;
    if (dfs(i + 1, chosen + 1, carried + (sorted_loads_.empty() ? 0.0 : sorted_loads_[i]))) {
      return true;
    }

    state_[v] = kKept;
    const std::size_t mark = history_.size();
    for (VertexId w : g_.neighbors(v)) {
      if (state_[w] == kKept) unite(v, w);
    }
    bool found = false;
    if (static_cast<std::size_t>(size_[root(v)]) <= h_) found = dfs(i + 1, chosen, carried);
    rollback(mark);
    if (!found) state_[v] = kFree;
    return found;
  }

  const Graph& g_;
  std::size_t n_, h_, k_ = 0;
  double need_ = 0.0;
  std::uint64_t work_limit_;
  Clock::time_point deadline_;
  std::vector<char> state_;
  std::vector<VertexId> parent_;
  std::vector<int> size_;
  std::vector<VertexId> history_;
  std::vector<VertexId> order_;
  std::vector<double> sorted_loads_, prefix_;
  std::vector<char> removed_, seen_;
  std::vector<VertexId> stack_;
  std::vector<int> comp_, disc_, low_, sub_, cut_sum_, cut_max_;
  std::vector<VertexId> parent_tree_;
  std::vector<std::pair<VertexId, std::size_t>> frames_;
  std::uint64_t leaf_cost_;
  std::uint64_t nodes_ = 0, work_ = 0;
  bool hit_wallclock_ = false;
};

}  // namespace

CutBounds cut_exact(const Graph& g, const ExactOptions& options) {
  if (options.budget_ms <= 0) throw ArgumentError("budget_ms must be positive");
  const auto start = Clock::now();
  const std::size_t n = g.vertex_count();

  CutBounds out;
  if (n <= 1) {
    out.upper = make_certificate(g, n == 1 ? std::vector<VertexId>{0} : std::vector<VertexId>{},
                                 BoundKind::Exact, n == 1 ? "singleton" : "empty");
    return out;
  }

  CutCertificate upper = cut_heuristic(g, options.seed, options.layering, options.heuristic);
  std::size_t lower = 0;
  std::string lower_method = "trivial";
  {
    std::vector<char> none(n, 0);
    if (largest_component_size(g, none) > half_threshold(n)) lower = 1;
  }
  std::optional<FlowBound> flow;
  if (lower < upper.value && n <= options.flow_bound_max_vertices && is_connected(g)) {
    flow = multicommodity_lower_bound(g, options.flow_iterations, options.workers);
    if (flow->value > lower) {
      lower = flow->value;
      lower_method = "multicommodity-flow";
    }
  }

  const auto deadline =
      start + std::chrono::milliseconds(4 * options.budget_ms + 1000);
  SeparatorSearch search(g, flow ? &flow->loads : nullptr,
                         static_cast<std::uint64_t>(options.budget_ms) * kWorkUnitsPerMs, deadline);
  bool exhausted = false;
  std::optional<std::vector<VertexId>> found;
  try {
    while (lower < upper.value) {
      found = search.find(lower);
      if (found) break;
      ++lower;
      lower_method = "branch-and-bound";
    }
  } catch (const BudgetExhausted&) {
    exhausted = true;
  }

  SearchStats stats;
  stats.nodes = search.nodes();
  stats.work = search.work();
  stats.wallclock_guard = search.hit_wallclock();
  stats.elapsed_ms = elapsed_ms(start);

  if (found) {
    out.upper = make_certificate(g, std::move(*found), BoundKind::Exact, "branch-and-bound");
  } else if (!exhausted || lower >= upper.value) {
    out.upper = std::move(upper);
    out.upper.kind = BoundKind::Exact;
    if (lower_method == "multicommodity-flow" && lower == out.upper.value) {
      out.upper.method += "+flow-bound";
    } else {
      out.upper.method += "+branch-and-bound";
    }
  } else {
    out.upper = std::move(upper);
    CutCertificate lo;
    lo.kind = BoundKind::Lower;
    lo.value = lower;
    lo.method = lower_method;
    lo.stats = stats;
    out.lower = std::move(lo);
  }
  out.upper.stats = stats;
  return out;
}

// ---------------------------------------------------------------------------
// Treewidth

int treewidth_upper(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::set<VertexId>> adj(n);
  for (auto [u, v] : g.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> gone(n, 0);
  auto fill_in = [&](VertexId v) {
    std::size_t missing = 0;
    for (auto a = adj[v].begin(); a != adj[v].end(); ++a) {
      for (auto b = std::next(a); b != adj[v].end(); ++b) {
        if (!adj[*a].count(*b)) ++missing;
      }
    }
    return missing;
  };
  int width = 0;
  for (std::size_t step = 0; step < n; ++step) {
    VertexId pick = -1;
    std::size_t pick_fill = 0, pick_degree = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
      if (gone[v]) continue;
      const std::size_t f = fill_in(v), d = adj[v].size();
      if (pick < 0 || f < pick_fill || (f == pick_fill && d < pick_degree)) {
        pick = v;
        pick_fill = f;
        pick_degree = d;
      }
    }
    width = std::max(width, static_cast<int>(adj[pick].size()));
    std::vector<VertexId> nb(adj[pick].begin(), adj[pick].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      adj[nb[i]].erase(pick);
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    }
    adj[pick].clear();
    gone[pick] = 1;
  }
  return width;
}

}  // namespace cayleysep
