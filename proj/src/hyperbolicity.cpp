#include "cayleysep/hyperbolicity.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>

#include "cayleysep/errors.hpp"
#include "cayleysep/parallel.hpp"

namespace cayleysep {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw ArgumentError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num = g ? n / g : 0;
  den = g ? d / g : 1;
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::parse(std::string_view text) {
  auto bad = [&] { return ArgumentError("not a rational number: '" + std::string(text) + "'"); };
  auto integer = [&](std::string_view s) {
    if (s.empty() || s.size() > 12) throw bad();
    std::int64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw bad();
      v = v * 10 + (c - '0');
    }
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto d = integer(text.substr(slash + 1));
    if (d == 0) throw bad();
    return Rational(integer(text.substr(0, slash)), d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto frac = text.substr(dot + 1);
    if (frac.size() > 6) throw bad();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const auto whole = dot == 0 ? 0 : integer(text.substr(0, dot));
    return Rational(whole * scale + (frac.empty() ? 0 : integer(frac)), scale);
  }
  return Rational(integer(text));
}

std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Found: return "found";
    case WitnessStatus::Exhausted: return "exhausted";
    case WitnessStatus::BudgetLimited: return "budget_limited";
  }
  return "unknown";
}

namespace {

void check_cycle(const Graph& g, std::span<const VertexId> cycle) {
  const std::size_t L = cycle.size();
  if (L < 3) throw ArgumentError("a cycle needs at least 3 vertices");
  std::unordered_set<VertexId> seen;
  for (std::size_t i = 0; i < L; ++i) {
    const VertexId v = cycle[i];
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) {
      throw ArgumentError("cycle vertex " + std::to_string(v) + " is out of range");
    }
    if (!seen.insert(v).second) {
      throw ArgumentError("cycle repeats vertex " + std::to_string(v) + "; it is not embedded");
    }
  }
  for (std::size_t i = 0; i < L; ++i) {
    if (!g.has_edge(cycle[i], cycle[(i + 1) % L])) {
      throw ArgumentError("cycle vertices " + std::to_string(cycle[i]) + " and " +
                          std::to_string(cycle[(i + 1) % L]) + " are not adjacent");
    }
  }
}

Rational distortion_unchecked(const Graph& g, std::span<const VertexId> cycle) {
  const std::size_t L = cycle.size();
  Rational worst(1);
  for (std::size_t i = 0; i < L; ++i) {
    const auto dist = bfs_distances(g, VertexSet{cycle[i]});
    for (std::size_t j = i + 1; j < L; ++j) {
      const auto along = static_cast<std::int64_t>(std::min(j - i, L - (j - i)));
      const Rational r(along, dist[cycle[j]]);
      if (r > worst) worst = r;
    }
  }
  return worst;
}

}  // namespace

Rational cycle_distortion(const Graph& g, std::span<const VertexId> cycle) {
  check_cycle(g, cycle);
  return distortion_unchecked(g, cycle);
}

int required_ambient_radius(const Ball& ambient, std::span<const VertexId> cycle) {
  int far = 0;
  for (VertexId v : cycle) far = std::max(far, ambient.dist_from_center.at(v));
  return far + static_cast<int>((cycle.size() + 1) / 2);
}

Rational cycle_distortion(const Ball& ambient, std::span<const VertexId> cycle) {
  check_cycle(ambient.graph, cycle);
  const int need = required_ambient_radius(ambient, cycle);
  if (need > ambient.radius) {
    throw ArgumentError("cycle is too close to the ball boundary: ambient radius " +
                        std::to_string(ambient.radius) + " given, " + std::to_string(need) +
                        " required");
  }
  return distortion_unchecked(ambient.graph, cycle);
}

// ---------------------------------------------------------------------------
// Witness search

namespace {

// Walks from `from` to a vertex where `dist` is zero, each step moving to the
// smallest-id neighbor that lowers `dist` by one.
std::vector<VertexId> descend(const Graph& g, const std::vector<int>& dist, VertexId from) {
  std::vector<VertexId> path{from};
  while (dist[path.back()] > 0) {
    const VertexId cur = path.back();
    for (VertexId w : g.neighbors(cur)) {
      if (dist[w] == dist[cur] - 1) {
        path.push_back(w);
        break;
      }
    }
    if (path.back() == cur) break;  // cannot happen for BFS distances
  }
  return path;
}

struct Bigon {
  VertexId v = 0;
  int length = 0;
  int fatness = 0;  // distance from the farthest interval vertex to gamma'
};

class QuadrilateralBuilder {
 public:
  explicit QuadrilateralBuilder(const Ball& ball) : ball_(ball), g_(ball.graph) {}

  // Fatness of the bigon from the center to v (filling the working state).
  Bigon measure(VertexId v) {
    const auto& de = ball_.dist_from_center;
    d_ = de[v];
    v_ = v;
    dv_ = bfs_distances(g_, VertexSet{v});
    prime_.assign(1, ball_.center);
    for (int t = 0; t < d_; ++t) {
      const VertexId cur = prime_.back();
      for (VertexId w : g_.neighbors(cur)) {
        if (de[w] == t + 1 && dv_[w] == d_ - t - 1) {
          prime_.push_back(w);
          break;
        }
      }
    }
    dg_ = bfs_distances(g_, std::span<const VertexId>(prime_), {});
    far_ = ball_.center;
    for (VertexId x = 0; x < static_cast<VertexId>(g_.vertex_count()); ++x) {
      if (de[x] + dv_[x] != d_ || dv_[x] == kUnreachable) continue;
      if (dg_[x] > dg_[far_]) far_ = x;
    }
    return {v, d_, dg_[far_]};
  }

  // The quadrilateral gamma_1 beta_2 gamma_2 beta_1 around the farthest point.
  std::optional<std::vector<VertexId>> build() {
    const auto& de = ball_.dist_from_center;
    if (dg_[far_] == 0) return std::nullopt;
    const int k = de[far_];
    std::vector<VertexId> gamma(d_ + 1);
    gamma[k] = far_;
    for (int t = k; t > 0; --t) {
      for (VertexId w : g_.neighbors(gamma[t])) {
        if (de[w] == t - 1 && dv_[w] == d_ - t + 1) {
          gamma[t - 1] = w;
          break;
        }
      }
    }
    for (int t = k; t < d_; ++t) {
      for (VertexId w : g_.neighbors(gamma[t])) {
        if (de[w] == t + 1 && dv_[w] == d_ - t - 1) {
          gamma[t + 1] = w;
          break;
        }
      }
    }
    int l = 1;
    while (l < k && l < 2 * dg_[gamma[k - l]]) ++l;
    int lp = 1;
    while (lp < d_ - k && lp < 2 * dg_[gamma[k + lp]]) ++lp;
    const VertexId a = gamma[k - l], b = gamma[k + lp];

    auto foot = [&](VertexId from, std::vector<int>& dist) {
      dist = bfs_distances(g_, VertexSet{from});
      std::size_t best = 0;
      for (std::size_t j = 1; j < prime_.size(); ++j) {
        if (dist[prime_[j]] < dist[prime_[best]]) best = j;
      }
      return best;
    };
    std::vector<int> da, db;
    const std::size_t j1 = foot(a, da), j2 = foot(b, db);
    const auto beta1 = descend(g_, da, prime_[j1]);  // foot -> a
    const auto beta2 = descend(g_, db, prime_[j2]);  // foot -> b

    std::vector<VertexId> cycle(gamma.begin() + (k - l), gamma.begin() + (k + lp) + 1);
    for (auto it = beta2.rbegin() + 1; it != beta2.rend(); ++it) cycle.push_back(*it);
    if (j2 >= j1) {
      for (std::size_t j = j2; j > j1; --j) cycle.push_back(prime_[j - 1]);
    } else {
      for (std::size_t j = j2 + 1; j <= j1; ++j) cycle.push_back(prime_[j]);
    }
    // beta1 runs foot -> a; skip the foot (already placed) and a (the start)
    for (std::size_t i = 1; i + 1 < beta1.size(); ++i) cycle.push_back(beta1[i]);
    if (cycle.size() < 3) return std::nullopt;
    std::unordered_set<VertexId> seen(cycle.begin(), cycle.end());
    if (seen.size() != cycle.size()) return std::nullopt;
    return cycle;
  }

 private:
  const Ball& ball_;
  const Graph& g_;
  int d_ = 0;
  VertexId v_ = 0, far_ = 0;
  std::vector<int> dv_, dg_;
  std::vector<VertexId> prime_;
};

CycleWitness make_witness(const Ball& ball, std::vector<VertexId> cycle, Rational distortion,
                          std::string construction) {
  CycleWitness w;
  w.length = cycle.size();
  for (VertexId v : cycle) w.keys.push_back(ball.key(v));
  w.cycle = std::move(cycle);
  w.distortion = distortion;
  w.ambient_radius = ball.radius;
  w.construction = std::move(construction);
  return w;
}

}  // namespace

WitnessSearch find_distorted_cycle(const GroupModel& m, int target_length, Rational K,
                                   const WitnessOptions& options) {
  if (target_length < 3) throw ArgumentError("target length must be at least 3");
  if (K < Rational(1)) throw ArgumentError("distortion bound K must be at least 1");
  WitnessSearch out;
  if (m.cayley_graph_is_tree()) {
    out.status = WitnessStatus::Exhausted;
    out.detail = "the Cayley graph is a tree and has no cycles";
    return out;
  }

  const Ball ball = largest_cayley_ball(m, target_length, options.vertex_budget);
  out.ambient_radius = ball.radius;
  out.max_length_searchable = ball.radius;
  const bool complete = ball.radius >= target_length;
  auto attempt = [&](std::vector<VertexId> cycle, const char* construction) {
    if (static_cast<int>(cycle.size()) < target_length) return false;
    if (required_ambient_radius(ball, cycle) > ball.radius) {
      ++out.boundary_hits;
      return false;
    }
    const Rational k = cycle_distortion(ball, cycle);
    if (k > K) return false;
    out.witness = make_witness(ball, std::move(cycle), k, construction);
    out.status = WitnessStatus::Found;
    return true;
  };

  // Phase 1. The quadrilateral from a bigon of length d and fatness n has at
  // most min(5d/2, 12n) edges, which bounds the useful spheres and bigons.
  QuadrilateralBuilder builder(ball);
  for (int d = (2 * target_length + 4) / 5; d <= ball.radius; ++d) {
    std::vector<Bigon> bigons;
    for (VertexId v : ball.sphere(d)) {
      const Bigon b = builder.measure(v);
      if (12 * b.fatness >= target_length) bigons.push_back(b);
    }
    std::stable_sort(bigons.begin(), bigons.end(),
                     [](const Bigon& a, const Bigon& b) { return a.fatness > b.fatness; });
    for (const Bigon& b : bigons) {
      ++out.bigons_examined;
      builder.measure(b.v);
      if (auto cycle = builder.build(); cycle && attempt(std::move(*cycle), "quadrilateral")) {
        return out;
      }
    }
  }

  // Phase 2: rectangles g^p h^p g^-p h^-p traced from the identity.
  const auto& A = m.alphabet();
  for (int p = (target_length + 3) / 4; 4 * p <= 2 * ball.radius; ++p) {
    for (Symbol g = 0; g < static_cast<Symbol>(A.size()); ++g) {
      for (Symbol h = 0; h < static_cast<Symbol>(A.size()); ++h) {
        if (h == g || h == A.inverse(g)) continue;
        Word word;
        for (Symbol s : {g, h, A.inverse(g), A.inverse(h)}) word.insert(word.end(), p, s);
        std::vector<VertexId> cycle{ball.center};
        ElementKey key = m.identity();
        bool inside = true;
        for (std::size_t i = 0; i + 1 < word.size() && inside; ++i) {
          key = m.multiply(key, word[i]);
          auto v = ball.locate(m, key);
          if (!v) inside = false;
          else cycle.push_back(*v);
        }
        if (!inside) continue;
        if (!m.same_element(m.multiply(key, word.back()), m.identity())) continue;
        std::unordered_set<VertexId> seen(cycle.begin(), cycle.end());
        if (seen.size() != cycle.size()) continue;
        if (attempt(std::move(cycle), "rectangle")) return out;
      }
    }
  }

  if (complete && out.boundary_hits == 0) {
    out.status = WitnessStatus::Exhausted;
    out.detail = "no qualifying cycle from bigons or rectangles in the ball of radius " +
                 std::to_string(ball.radius);
  } else {
    out.status = WitnessStatus::BudgetLimited;
    out.detail = complete ? std::to_string(out.boundary_hits) +
                                " candidate cycles reached too close to the ball boundary"
                          : "vertex budget allows radius " + std::to_string(ball.radius) +
                                ", below the " + std::to_string(target_length) +
                                " this length needs";
  }
  return out;
}

CycleWitness verify_witness(const GroupModel& m, const std::vector<ElementKey>& keys,
                            int ambient_radius, std::size_t vertex_budget) {
  const Ball ball = cayley_ball(m, ambient_radius, vertex_budget);
  std::vector<VertexId> cycle;
  for (const auto& k : keys) {
    auto v = ball.locate(m, k);
    if (!v) throw ArgumentError("witness key '" + k + "' is not in the ambient ball");
    cycle.push_back(*v);
  }
  const Rational k = cycle_distortion(ball, cycle);
  return make_witness(ball, std::move(cycle), k, "verified");
}

// ---------------------------------------------------------------------------
// Bigons and bottlenecks

namespace {

Ball doubled_ball(const GroupModel& m, int radius, std::size_t budget, const char* what) {
  if (radius < 0) throw ArgumentError("radius must be non-negative");
  try {
    return cayley_ball(m, 2 * radius, budget);
  } catch (const ResourceError& e) {
    throw ResourceError(std::string(what) + " needs the ball of radius " +
                        std::to_string(2 * radius) + ": " + e.what());
  }
}

}  // namespace

BigonScan bigon_fatness_scan(const GroupModel& m, int radius, int workers, std::size_t keep,
                             std::size_t vertex_budget) {
  const Ball ball = doubled_ball(m, radius, std::min(vertex_budget, kBigonAmbientLimit), "bigon scan");
  const Graph& g = ball.graph;
  const std::size_t n = g.vertex_count();
  // all-pairs distances in the doubled ball; the limit keeps this small
  std::vector<std::vector<std::uint16_t>> dist(n);
  parallel_for(n, workers, [&](std::size_t s) {
    const auto d = bfs_distances(g, VertexSet{static_cast<VertexId>(s)});
    dist[s].assign(d.begin(), d.end());
  });
  std::vector<VertexId> inner;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (ball.dist_from_center[v] <= radius) inner.push_back(v);
  }
  std::vector<std::vector<BigonReport>> per_u(inner.size());
  std::vector<std::size_t> counted(inner.size(), 0);
  parallel_for(inner.size(), workers, [&](std::size_t iu) {
    const VertexId u = inner[iu];
    std::vector<std::vector<VertexId>> layers;
    for (std::size_t iv = iu + 1; iv < inner.size(); ++iv) {
      const VertexId v = inner[iv];
      const int d = dist[u][v];
      if (d < 4) continue;
      ++counted[iu];
      layers.assign(d + 1, {});
      for (VertexId x = 0; x < static_cast<VertexId>(n); ++x) {
        if (dist[u][x] + dist[x][v] == d) layers[dist[u][x]].push_back(x);
      }
      BigonReport rep{u, v, ball.key(u), ball.key(v), d, 0, 0};
      for (int i = 1; i < d; ++i) {
        const auto& L = layers[i];
        for (std::size_t a = 0; a < L.size(); ++a) {
          for (std::size_t b = a + 1; b < L.size(); ++b) {
            const int w = dist[L[a]][L[b]];
            if (w > rep.max_layer_diameter) {
              rep.max_layer_diameter = w;
              rep.layer = i;
            }
          }
        }
      }
      per_u[iu].push_back(std::move(rep));
    }
  });
  BigonScan scan;
  scan.radius = radius;
  std::vector<BigonReport> all;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    scan.pairs_scanned += counted[i];
    for (auto& r : per_u[i]) all.push_back(std::move(r));
  }
  std::stable_sort(all.begin(), all.end(), [](const BigonReport& a, const BigonReport& b) {
    if (a.max_layer_diameter != b.max_layer_diameter) {
      return a.max_layer_diameter > b.max_layer_diameter;
    }
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  if (all.size() > keep) all.resize(keep);
  scan.top = std::move(all);
  return scan;
}

BottleneckReport bottleneck_check(const GroupModel& m, int radius, int delta, int workers,
                                  std::size_t vertex_budget) {
  if (delta < 0) throw ArgumentError("delta must be non-negative");
  const Ball ball = doubled_ball(m, radius, vertex_budget, "bottleneck check");
  const Graph& g = ball.graph;
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> inner;
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v) {
    if (ball.dist_from_center[v] <= radius) inner.push_back(v);
  }
  std::vector<std::vector<BottleneckViolation>> found(inner.size());
  std::vector<std::size_t> counted(inner.size(), 0);
  parallel_for(inner.size(), workers, [&](std::size_t ix) {
    const VertexId x = inner[ix];
    const auto dx = bfs_distances(g, VertexSet{x});
    std::vector<char> blocked(n);
    for (std::size_t iy = ix + 1; iy < inner.size(); ++iy) {
      const VertexId y = inner[iy];
      ++counted[ix];
      // first geodesic in id order from x to y, walked back from y
      const auto path = descend(g, dx, y);  // y -> x
      const int d = dx[y];
      const VertexId w = path[path.size() - 1 - static_cast<std::size_t>(d / 2)];
      const auto dw = bfs_distances(g, VertexSet{w});
      for (std::size_t z = 0; z < n; ++z) blocked[z] = dw[z] <= delta;
      if (blocked[x] || blocked[y]) continue;
      const VertexId src[] = {x};
      const auto reach = bfs_distances(g, src, blocked);
      if (reach[y] != kUnreachable) {
        found[ix].push_back({x, y, w, ball.key(x), ball.key(y), ball.key(w)});
      }
    }
  });
  BottleneckReport report;
  report.radius = radius;
  report.delta = delta;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    report.pairs_checked += counted[i];
    for (auto& v : found[i]) report.violations.push_back(std::move(v));
  }
  return report;
}

}  // namespace cayleysep
