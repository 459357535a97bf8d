#include "cayleysep/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cayleysep/errors.hpp"
#include "cayleysep/rng.hpp"

namespace cayleysep {

Source resolve_source(std::string_view spec) {
  Source s;
  s.spec = std::string(spec);
  if (spec.starts_with("file:")) {
    s.graph = load_edge_list(std::string(spec.substr(5)));
    return s;
  }
  if (spec.starts_with("sierpinski:")) {
    const std::string level(spec.substr(11));
    int L = -1;
    try {
      std::size_t used = 0;
      L = std::stoi(level, &used);
      if (used != level.size()) L = -1;
    } catch (const std::exception&) {
      L = -1;
    }
    if (L < 0 || L > 12) {
      throw ConfigurationError("sierpinski level must be an integer in [0, 12], got '" + level + "'");
    }
    s.graph = builders::sierpinski_graph(L);
    return s;
  }
  s.group = catalog_group(spec);
  return s;
}

std::string to_string(CandidateFamily f) {
  switch (f) {
    case CandidateFamily::Balls: return "balls";
    case CandidateFamily::SpheresThickened: return "spheres-thickened";
    case CandidateFamily::RandomConnected: return "random-connected";
  }
  return "unknown";
}

CandidateFamily parse_family(std::string_view name) {
  if (name == "balls") return CandidateFamily::Balls;
  if (name == "spheres-thickened") return CandidateFamily::SpheresThickened;
  if (name == "random-connected") return CandidateFamily::RandomConnected;
  throw ArgumentError("unknown candidate family '" + std::string(name) +
                      "' (valid: balls, spheres-thickened, random-connected)");
}

std::vector<CandidateFamily> parse_families(std::string_view list) {
  std::vector<CandidateFamily> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const auto item = list.substr(start, comma - start);
    if (!item.empty()) {
      const auto f = parse_family(item);
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    }
    start = comma + 1;
  }
  if (out.empty()) throw ArgumentError("candidate family list is empty");
  return out;
}

Ball sub_ball(const Ball& ball, int r) {
  if (r < 0 || r > ball.radius) {
    throw ArgumentError("sub-ball radius " + std::to_string(r) + " outside [0, " +
                        std::to_string(ball.radius) + "]");
  }
  if (r == ball.radius) return ball;
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < static_cast<VertexId>(ball.dist_from_center.size()); ++v) {
    if (ball.dist_from_center[v] <= r) keep.push_back(v);
  }
  // layer-by-layer numbering makes the kept set a prefix of the ids
  auto sub = induced_subgraph(ball.graph, VertexSet::from_sorted(keep));
  Ball out;
  out.graph = std::move(sub.graph);
  out.center = ball.center;
  out.radius = r;
  const std::size_t n = keep.size();
  out.dist_from_center.assign(ball.dist_from_center.begin(), ball.dist_from_center.begin() + n);
  if (!ball.parent.empty()) {
    out.parent.assign(ball.parent.begin(), ball.parent.begin() + n);
    out.parent_symbol.assign(ball.parent_symbol.begin(), ball.parent_symbol.begin() + n);
  }
  for (const auto& [key, v] : ball.index) {
    if (static_cast<std::size_t>(v) < n) out.index.emplace(key, v);
  }
  for (const auto& [bucket, ids] : ball.buckets) {
    std::vector<VertexId> kept;
    for (VertexId v : ids) {
      if (static_cast<std::size_t>(v) < n) kept.push_back(v);
    }
    if (!kept.empty()) out.buckets.emplace(bucket, std::move(kept));
  }
  return out;
}

Ball graph_ball(const Graph& g, VertexId center, int r) {
  if (center < 0 || static_cast<std::size_t>(center) >= g.vertex_count()) {
    throw ArgumentError("ball center out of range");
  }
  const auto dist = bfs_distances(g, VertexSet{center});
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < static_cast<VertexId>(dist.size()); ++v) {
    if (dist[v] != kUnreachable && dist[v] <= r) keep.push_back(v);
  }
  auto sub = induced_subgraph(g, VertexSet::from_sorted(keep));
  Ball out;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const VertexId v = keep[i];
    if (v == center) out.center = static_cast<VertexId>(i);
    out.dist_from_center.push_back(dist[v]);
    labels.push_back(g.has_labels() ? g.label(v) : std::to_string(v));
    out.radius = std::max(out.radius, dist[v]);
  }
  out.graph = Graph::from_edges(keep.size(), sub.graph.edges(), labels);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.index.emplace(labels[i], static_cast<VertexId>(i));
  }
  return out;
}

std::vector<std::pair<VertexId, VertexId>> inverse_anchors(const GroupModel& m, const Ball& ball,
                                                           int radius, std::size_t count) {
  std::vector<std::pair<VertexId, VertexId>> out;
  if (ball.parent.empty()) return out;
  const auto outer = ball.sphere(radius);
  const std::size_t k = std::min(outer.size(), count);
  for (std::size_t i = 0; i < k; ++i) {
    const VertexId u = outer[i * outer.size() / k];
    if (auto v = ball.inverse_of(m, u); v && *v != u) out.emplace_back(u, *v);
  }
  return out;
}

std::vector<ProfilePoint> envelope(const std::vector<CandidateResult>& candidates) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return candidates[a].n < candidates[b].n; });
  std::vector<ProfilePoint> points;
  const CandidateResult* best = nullptr;
  for (std::size_t idx : order) {
    const auto& c = candidates[idx];
    if (!best || c.bounds.lower_value() > best->bounds.lower_value()) best = &c;
    ProfilePoint p{c.n, best->bounds.lower_value(), best->bounds.upper_value(), best->id,
                   best->bounds.exact()};
    if (!points.empty() && points.back().n == c.n) {
      points.back() = p;
    } else {
      points.push_back(p);
    }
  }
  return points;
}

namespace {

CutBounds solve(const Graph& g, std::span<const int> layering,
                std::vector<std::pair<VertexId, VertexId>> anchors, const ProfileOptions& options,
                std::uint64_t stream) {
  ExactOptions eo;
  eo.budget_ms = options.budget_ms;
  eo.seed = derive_seed(options.seed, stream);
  eo.workers = options.workers;
  eo.layering = layering;
  eo.heuristic.anchors = std::move(anchors);
  return cut_exact(g, eo);
}

std::vector<VertexId> random_connected_set(const Graph& g, std::size_t target, Rng& rng) {
  const std::size_t n = g.vertex_count();
  std::vector<char> state(n, 0);  // 1 chosen, 2 on the frontier
  std::vector<VertexId> chosen, frontier;
  auto take = [&](VertexId v) {
    state[v] = 1;
    chosen.push_back(v);
    for (VertexId w : g.neighbors(v)) {
      if (state[w] == 0) {
        state[w] = 2;
        frontier.push_back(w);
      }
    }
  };
  take(static_cast<VertexId>(rng.below(n)));
  while (chosen.size() < target && !frontier.empty()) {
    const std::size_t i = rng.below(frontier.size());
    const VertexId v = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    take(v);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

Ball profile_host(const Source& source, std::size_t max_n, std::size_t vertex_budget) {
  if (source.is_group()) {
    int R = 0;
    try {
      R = kappa(*source.group, std::min(max_n, vertex_budget - 1), vertex_budget);
    } catch (const ArgumentError&) {
      R = std::numeric_limits<int>::max();  // a finite group that fits entirely
    }
    return cayley_ball(*source.group, R, vertex_budget);
  }
  const Graph& g = *source.graph;
  Ball best = graph_ball(g, 0, 0);
  for (;;) {
    Ball next = graph_ball(g, 0, best.radius + 1);
    if (next.graph.vertex_count() > max_n || next.radius == best.radius) break;
    best = std::move(next);
  }
  return best;
}

Profile sep_profile(const Source& source, const ProfileOptions& options) {
  if (options.max_n < 1) throw ArgumentError("max_n must be at least 1");
  if (options.families.empty()) throw ArgumentError("candidate family list is empty");
  if (options.budget_ms <= 0) throw ArgumentError("budget_ms must be positive");

  Profile profile;
  profile.source = source.spec;
  auto wants = [&](CandidateFamily f) {
    return std::find(options.families.begin(), options.families.end(), f) !=
           options.families.end();
  };

  Ball host = profile_host(source, options.max_n, options.vertex_budget);
  if (source.is_group() && options.max_n >= options.vertex_budget) {
    profile.notes.push_back("balls capped by the vertex budget of " +
                            std::to_string(options.vertex_budget));
  }
  profile.host_radius = host.radius;
  std::uint64_t stream = 0;
  if (wants(CandidateFamily::Balls)) {
    for (int r = 0; r <= host.radius; ++r) {
      Ball b = sub_ball(host, r);
      auto anchors = source.is_group() ? inverse_anchors(*source.group, host, r)
                                       : std::vector<std::pair<VertexId, VertexId>>{};
      CandidateResult c;
      c.id = "ball:r=" + std::to_string(r);
      c.family = CandidateFamily::Balls;
      c.n = b.graph.vertex_count();
      c.radius = r;
      c.bounds = solve(b.graph, b.dist_from_center, std::move(anchors), options, stream++);
      profile.candidates.push_back(std::move(c));
    }
  }
  if (wants(CandidateFamily::SpheresThickened)) {
    for (int t = 1; t < host.radius; ++t) {
      std::vector<VertexId> shell;
      for (VertexId v = 0; v < static_cast<VertexId>(host.dist_from_center.size()); ++v) {
        const int d = host.dist_from_center[v];
        if (d >= t - 1 && d <= t + 1) shell.push_back(v);
      }
      auto sub = induced_subgraph(host.graph, VertexSet::from_sorted(shell));
      CandidateResult c;
      c.id = "shell:t=" + std::to_string(t);
      c.family = CandidateFamily::SpheresThickened;
      c.n = sub.graph.vertex_count();
      c.vertices = shell;
      c.bounds = solve(sub.graph, {}, {}, options, stream++);
      profile.candidates.push_back(std::move(c));
    }
  }
  if (wants(CandidateFamily::RandomConnected)) {
    const std::size_t cap = std::min(options.max_n, host.graph.vertex_count());
    std::vector<std::size_t> targets;
    for (std::size_t t = cap; t >= 4; t /= 2) targets.push_back(t);
    std::reverse(targets.begin(), targets.end());
    for (std::size_t t : targets) {
      for (int i = 0; i < options.random_samples; ++i) {
        Rng rng(derive_seed(options.seed, 1000003 + stream));
        const auto set = random_connected_set(host.graph, t, rng);
        auto sub = induced_subgraph(host.graph, VertexSet::from_sorted(set));
        CandidateResult c;
        c.id = "random:n=" + std::to_string(t) + "#" + std::to_string(i);
        c.family = CandidateFamily::RandomConnected;
        c.n = sub.graph.vertex_count();
        c.vertices = set;
        c.bounds = solve(sub.graph, {}, {}, options, stream++);
        profile.candidates.push_back(std::move(c));
      }
    }
  }
  profile.points = envelope(profile.candidates);
  return profile;
}

FitReport fit_exponent(const std::vector<ProfilePoint>& points, std::size_t n_min,
                       std::size_t n_max) {
  std::vector<double> xs, ys;
  FitReport f;
  f.n_min = std::numeric_limits<std::size_t>::max();
  for (const auto& p : points) {
    if (p.n < n_min || p.n > n_max || p.cut_lower < 1) continue;
    xs.push_back(std::log(static_cast<double>(p.n)));
    ys.push_back(std::log(static_cast<double>(p.cut_lower)));
    f.n_min = std::min(f.n_min, p.n);
    f.n_max = std::max(f.n_max, p.n);
  }
  if (xs.size() < 3) {
    throw ArgumentError("fit needs at least 3 points with cut_lower >= 1 in range, got " +
                        std::to_string(xs.size()));
  }
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw ArgumentError("fit needs at least two distinct sizes");
  f.count = xs.size();
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

bool GapReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const GapRow& r) { return r.pass; });
}

GapReport gap_check(const GroupModel& m, int r_max, const GapOptions& options) {
  if (!m.relator_bound()) {
    throw ConfigurationError("group '" + m.name() +
                             "' has no relator bound M; the gap check needs one");
  }
  if (r_max < 1) throw ArgumentError("max radius must be at least 1");
  GapReport report;
  report.group = m.name();
  report.relator_bound = *m.relator_bound();
  report.applicability = m.applicability();
  const Ball host = cayley_ball(m, r_max, options.vertex_budget);
  for (int r = 1; r <= host.radius; ++r) {
    const Ball b = sub_ball(host, r);
    ExactOptions eo;
    eo.budget_ms = options.budget_ms;
    eo.seed = derive_seed(options.seed, static_cast<std::uint64_t>(r));
    eo.workers = options.workers;
    eo.layering = b.dist_from_center;
    eo.heuristic.anchors = inverse_anchors(m, host, r);
    const auto bounds = cut_exact(b.graph, eo);
    GapRow row;
    row.r = r;
    row.n = b.graph.vertex_count();
    row.cut_lower = bounds.lower_value();
    row.cut_upper = bounds.upper_value();
    row.exact = bounds.exact();
    row.threshold = static_cast<double>(r) / (400.0 * report.relator_bound);
    row.pass = static_cast<double>(row.cut_lower) >= row.threshold;
    row.ratio = static_cast<double>(row.cut_lower) / r;
    report.rows.push_back(row);
  }
  return report;
}

KappaComparison kappa_compare(const GroupModel& m, const std::vector<ProfilePoint>& points,
                              const std::vector<std::size_t>& n_list, std::size_t vertex_budget) {
  KappaComparison out;
  out.applicability = m.applicability();
  bool any = false;
  for (std::size_t n : n_list) {
    KappaRow row;
    row.n = n;
    for (const auto& p : points) {
      if (p.n <= n) row.profile_lower = std::max(row.profile_lower, p.cut_lower);
    }
    row.kappa = kappa(m, n, vertex_budget);
    if (row.kappa > 0) {
      row.ratio = static_cast<double>(row.profile_lower) / row.kappa;
      out.best_constant = any ? std::min(out.best_constant, row.ratio) : row.ratio;
      any = true;
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace cayleysep
