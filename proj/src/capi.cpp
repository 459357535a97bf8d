#include "cayleysep/cayleysep.h"

#include <json.hpp>

#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "cayleysep/cuts.hpp"
#include "cayleysep/errors.hpp"
#include "cayleysep/graph.hpp"
#include "cayleysep/groups.hpp"
#include "cayleysep/hyperbolicity.hpp"
#include "cayleysep/profiles.hpp"

using json = nlohmann::ordered_json;
namespace cs = cayleysep;

struct csep_group {
  std::shared_ptr<const cs::GroupModel> model;
};

struct csep_graph {
  std::string spec;
  int radius = -1;
  std::shared_ptr<const cs::GroupModel> group;  // set for Cayley balls
  std::optional<cs::Ball> ball;                 // set for balls of either kind
  cs::Graph plain;

  const cs::Graph& graph() const { return ball ? ball->graph : plain; }
};

namespace {

thread_local std::string last_error;

constexpr const char* kVersion = "1.0.0";

csep_status status_of(cs::ErrorKind kind) {
  switch (kind) {
    case cs::ErrorKind::Argument: return CSEP_ERR_ARGUMENT;
    case cs::ErrorKind::Configuration: return CSEP_ERR_CONFIGURATION;
    case cs::ErrorKind::Resource: return CSEP_ERR_RESOURCE;
    case cs::ErrorKind::Parse: return CSEP_ERR_PARSE;
    case cs::ErrorKind::Unsupported: return CSEP_ERR_UNSUPPORTED;
  }
  return CSEP_ERR_INTERNAL;
}

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Body>
csep_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return CSEP_OK;
  } catch (const cs::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const IoError& e) {
    last_error = e.what();
    return CSEP_ERR_IO;
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return CSEP_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CSEP_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return CSEP_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error: unknown exception";
    return CSEP_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw cs::ArgumentError(std::string(what) + " must not be null");
}

char* emit(const json& doc) {
  const std::string text = doc.dump(2);
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

cs::ProfileOptions profile_options(const csep_run_options* o) {
  cs::ProfileOptions p;
  if (o) {
    p.budget_ms = o->budget_ms;
    p.seed = o->seed;
    p.workers = o->workers;
    p.vertex_budget = o->vertex_budget;
  }
  return p;
}

csep_run_options defaults() {
  csep_run_options o;
  csep_run_options_init(&o);
  return o;
}

json ids_json(const cs::VertexSet& s) {
  json out = json::array();
  for (auto v : s) out.push_back(v);
  return out;
}

json keys_json(const cs::Graph& g, const cs::VertexSet& s) {
  json out = json::array();
  for (auto v : s) out.push_back(g.label(v));
  return out;
}

std::string kind_text(const cs::CutBounds& b) {
  if (b.exact()) return "exact";
  return b.lower ? "lower,upper" : "upper";
}

json bounds_json(const cs::Graph& g, const cs::CutBounds& b, bool with_keys) {
  json r;
  r["kind"] = kind_text(b);
  r["exact"] = b.exact();
  if (b.exact() || b.lower) {
    r["lower"] = b.lower_value();
  } else {
    r["lower"] = nullptr;
  }
  r["upper"] = b.upper_value();
  r["separator"] = ids_json(*b.upper.separator);
  if (with_keys && g.has_labels()) r["separator_keys"] = keys_json(g, *b.upper.separator);
  r["largest_component_size"] = b.upper.largest_component_size;
  r["method"] = b.upper.method;
  if (b.lower) r["lower_method"] = b.lower->method;
  r["search"] = {{"nodes", b.upper.stats.nodes},
                 {"work", b.upper.stats.work},
                 {"wallclock_guard", b.upper.stats.wallclock_guard}};
  return r;
}

cs::CutBounds as_bounds(cs::CutCertificate c) {
  cs::CutBounds b;
  b.upper = std::move(c);
  return b;
}

std::vector<std::pair<cs::VertexId, cs::VertexId>> anchors_for(const csep_graph& g) {
  if (!g.group || !g.ball) return {};
  return cs::inverse_anchors(*g.group, *g.ball, g.ball->radius);
}

json fit_json(const std::vector<cs::ProfilePoint>& points) {
  try {
    const auto f = cs::fit_exponent(points, 2);
    return {{"slope", f.slope},   {"intercept", f.intercept}, {"r_squared", f.r_squared},
            {"n_min", f.n_min},   {"n_max", f.n_max},         {"count", f.count}};
  } catch (const cs::ArgumentError&) {
    return nullptr;
  }
}

json profile_json(const cs::Profile& p, const cs::ProfileOptions& o, json& timing) {
  json r;
  r["source"] = p.source;
  r["host_radius"] = p.host_radius;
  r["max_n"] = o.max_n;
  json fams = json::array();
  for (auto f : o.families) fams.push_back(cs::to_string(f));
  r["candidates_families"] = fams;
  r["notes"] = p.notes;
  json cands = json::array();
  timing["candidates"] = json::object();
  for (const auto& c : p.candidates) {
    json j;
    j["id"] = c.id;
    j["family"] = cs::to_string(c.family);
    j["n"] = c.n;
    if (c.radius >= 0) j["radius"] = c.radius;
    if (!c.vertices.empty()) j["vertices"] = c.vertices;
    j["lower"] = c.bounds.lower_value();
    j["upper"] = c.bounds.upper_value();
    j["exact"] = c.bounds.exact();
    j["method"] = c.bounds.upper.method;
    j["separator"] = ids_json(*c.bounds.upper.separator);
    cands.push_back(std::move(j));
    timing["candidates"][c.id] = c.bounds.upper.stats.elapsed_ms;
  }
  r["candidates"] = std::move(cands);
  json pts = json::array();
  for (const auto& pt : p.points) {
    pts.push_back({{"n", pt.n},
                   {"cut_lower", pt.cut_lower},
                   {"cut_upper", pt.cut_upper},
                   {"candidate", pt.candidate},
                   {"exact", pt.exact}});
  }
  r["points"] = std::move(pts);
  r["fit"] = fit_json(p.points);
  return r;
}

json witness_json(const cs::CycleWitness& w) {
  return {{"length", w.length},
          {"distortion", w.distortion.str()},
          {"distortion_value", w.distortion.value()},
          {"ambient_radius", w.ambient_radius},
          {"construction", w.construction},
          {"keys", w.keys}};
}

template <typename Fn>
json timed(Fn&& fn, json& timing) {
  const auto start = std::chrono::steady_clock::now();
  json results = fn();
  timing["elapsed_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return results;
}

json document(json results, json timing) {
  json doc;
  doc["results"] = std::move(results);
  doc["timing"] = std::move(timing);
  return doc;
}

std::unique_ptr<csep_graph> open_graph(const std::string& spec, int radius,
                                       std::size_t vertex_budget) {
  auto g = std::make_unique<csep_graph>();
  g->spec = spec;
  g->radius = radius;
  auto source = cs::resolve_source(spec);
  if (source.is_group()) {
    if (radius < 0) throw cs::ArgumentError("a group spec needs a non-negative radius");
    g->group = source.group;
    g->ball = cs::cayley_ball(*source.group, radius, vertex_budget);
  } else if (radius >= 0) {
    g->ball = cs::graph_ball(*source.graph, 0, radius);
  } else {
    g->plain = std::move(*source.graph);
  }
  return g;
}

// --- verification of run records -----------------------------------------

json verify_cut(const json& record) {
  const auto& input = record.at("input");
  std::unique_ptr<csep_graph> g;
  if (input.contains("path")) {
    g = std::make_unique<csep_graph>();
    g->plain = cs::load_edge_list(input.at("path").get<std::string>());
  } else {
    g = open_graph(input.at("spec").get<std::string>(), input.value("radius", -1),
                   record.at("parameters").value("vertex_budget", cs::kDefaultVertexBudget));
  }
  const auto& res = record.at("results");
  const auto sep = cs::VertexSet::from_unsorted(res.at("separator").get<std::vector<int>>());
  const bool valid = cs::is_cut_set(g->graph(), sep);
  const bool sized = sep.size() == res.at("upper").get<std::size_t>();
  return {{"checks", 1}, {"passed", valid && sized ? 1 : 0},
          {"details", json::array({{{"item", "separator"}, {"valid", valid && sized}}})}};
}

json verify_profile(const json& record) {
  const auto& params = record.at("parameters");
  const auto source = cs::resolve_source(record.at("input").at("spec").get<std::string>());
  const auto& res = record.at("results");
  const auto budget = params.value("vertex_budget", cs::kDefaultVertexBudget);
  const cs::Ball host = cs::profile_host(source, res.at("max_n").get<std::size_t>(), budget);
  if (host.radius != res.at("host_radius").get<int>()) {
    throw cs::ArgumentError("rebuilt host radius differs from the record");
  }
  json details = json::array();
  int passed = 0, checks = 0;
  for (const auto& c : res.at("candidates")) {
    cs::Graph g;
    if (c.contains("radius")) {
      g = cs::sub_ball(host, c.at("radius").get<int>()).graph;
    } else {
      const auto ids = c.at("vertices").get<std::vector<int>>();
      g = cs::induced_subgraph(host.graph, cs::VertexSet::from_sorted(ids)).graph;
    }
    const auto sep = cs::VertexSet::from_unsorted(c.at("separator").get<std::vector<int>>());
    const bool ok = g.vertex_count() == c.at("n").get<std::size_t>() && cs::is_cut_set(g, sep) &&
                    sep.size() == c.at("upper").get<std::size_t>();
    ++checks;
    passed += ok;
    details.push_back({{"item", c.at("id")}, {"valid", ok}});
  }
  return {{"checks", checks}, {"passed", passed}, {"details", details}};
}

json verify_witness_record(const json& record) {
  const auto& res = record.at("results");
  if (res.at("witness").is_null()) {
    return {{"checks", 0}, {"passed", 0}, {"details", json::array()}};
  }
  const auto& w = res.at("witness");
  auto model = cs::catalog_group(record.at("input").at("spec").get<std::string>());
  const auto check = cs::verify_witness(
      *model, w.at("keys").get<std::vector<std::string>>(), w.at("ambient_radius").get<int>(),
      record.at("parameters").value("vertex_budget", cs::kDefaultVertexBudget));
  const auto K = cs::Rational::parse(res.at("K").get<std::string>());
  const bool ok = check.distortion == cs::Rational::parse(w.at("distortion").get<std::string>()) &&
                  !(check.distortion > K);
  return {{"checks", 1},
          {"passed", ok ? 1 : 0},
          {"details", json::array({{{"item", "witness"},
                                    {"valid", ok},
                                    {"distortion", check.distortion.str()}}})}};
}

}  // namespace

extern "C" {

void csep_run_options_init(csep_run_options* options) {
  if (!options) return;
  options->budget_ms = 2000;
  options->seed = 0;
  options->workers = 1;
  options->vertex_budget = cs::kDefaultVertexBudget;
}

const char* csep_version(void) { return kVersion; }

const char* csep_last_error(void) { return last_error.c_str(); }

const char* csep_status_name(csep_status status) {
  switch (status) {
    case CSEP_OK: return "ok";
    case CSEP_ERR_ARGUMENT: return "argument";
    case CSEP_ERR_CONFIGURATION: return "configuration";
    case CSEP_ERR_RESOURCE: return "resource";
    case CSEP_ERR_PARSE: return "parse";
    case CSEP_ERR_UNSUPPORTED: return "unsupported";
    case CSEP_ERR_IO: return "io";
    case CSEP_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void csep_string_free(char* s) { std::free(s); }

csep_status csep_group_open(const char* spec, csep_group** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = nullptr;
    auto g = std::make_unique<csep_group>();
    g->model = cs::catalog_group(spec);
    *out = g.release();
  });
}

void csep_group_close(csep_group* group) { delete group; }

csep_status csep_group_describe(const csep_group* group, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    const auto& m = *group->model;
    json symbols = json::array();
    for (std::size_t s = 0; s < m.alphabet().size(); ++s) {
      symbols.push_back(m.alphabet().name(static_cast<cs::Symbol>(s)));
    }
    json r;
    r["name"] = m.name();
    r["symbols"] = symbols;
    r["identity"] = m.identity();
    if (m.relator_bound()) {
      r["relator_bound"] = *m.relator_bound();
    } else {
      r["relator_bound"] = nullptr;
    }
    r["canonical_keys"] = m.canonical_keys();
    r["tree"] = m.cayley_graph_is_tree();
    r["applicability"] = m.applicability();
    *out = emit(r);
  });
}

csep_status csep_kappa(const csep_group* group, uint64_t n, size_t vertex_budget, int* out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    *out = cs::kappa(*group->model, n, vertex_budget);
  });
}

csep_status csep_growth(const csep_group* group, int r_max, size_t vertex_budget, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    json r;
    r["group"] = group->model->name();
    r["sizes"] = cs::growth_table(*group->model, r_max, vertex_budget);
    *out = emit(r);
  });
}

csep_status csep_graph_open(const char* spec, int radius, size_t vertex_budget, csep_graph** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = nullptr;
    *out = open_graph(spec, radius, vertex_budget).release();
  });
}

csep_status csep_graph_load(const char* path, csep_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) {
      throw IoError(std::string("cannot open edge list '") + path + "'");
    }
    auto g = std::make_unique<csep_graph>();
    g->spec = std::string("file:") + path;
    g->plain = cs::load_edge_list(path);
    *out = g.release();
  });
}

void csep_graph_close(csep_graph* graph) { delete graph; }

csep_status csep_graph_size(const csep_graph* graph, size_t* vertices, size_t* edges) {
  return guarded([&] {
    require(graph, "graph");
    if (vertices) *vertices = graph->graph().vertex_count();
    if (edges) *edges = graph->graph().edge_count();
  });
}

csep_status csep_graph_save(const csep_graph* graph, const char* path) {
  return guarded([&] {
    require(graph, "graph");
    require(path, "path");
    std::ofstream f(path);
    if (!f) throw IoError(std::string("cannot write ") + path);
    cs::write_edge_list(graph->graph(), f);
    if (!f) throw IoError(std::string("write failed for ") + path);
  });
}

csep_status csep_graph_describe(const csep_graph* graph, char** out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    const auto& g = graph->graph();
    json r;
    r["spec"] = graph->spec;
    r["vertices"] = g.vertex_count();
    r["edges"] = g.edge_count();
    if (graph->ball) {
      r["center"] = graph->ball->center;
      r["radius"] = graph->ball->radius;
      r["dist_from_center"] = graph->ball->dist_from_center;
    }
    if (g.has_labels()) r[graph->group ? "keys" : "labels"] = g.labels();
    *out = emit(r);
  });
}

csep_status csep_cut(const csep_graph* graph, const char* mode, const csep_run_options* options,
                     char** out) {
  return guarded([&] {
    require(graph, "graph");
    require(mode, "mode");
    require(out, "out");
    const csep_run_options o = options ? *options : defaults();
    const std::string m = mode;
    const auto& g = graph->graph();
    std::span<const int> layering;
    if (graph->ball) layering = graph->ball->dist_from_center;
    json timing;
    json results = timed(
        [&] {
          cs::CutBounds b;
          if (m == "brute") {
            b = as_bounds(cs::cut_brute(g));
          } else if (m == "exact") {
            cs::ExactOptions eo;
            eo.budget_ms = o.budget_ms;
            eo.seed = o.seed;
            eo.workers = o.workers;
            eo.layering = layering;
            eo.heuristic.anchors = anchors_for(*graph);
            b = cs::cut_exact(g, eo);
          } else if (m == "heuristic") {
            cs::HeuristicOptions ho;
            ho.anchors = anchors_for(*graph);
            b = as_bounds(cs::cut_heuristic(g, o.seed, layering, ho));
          } else {
            throw cs::ArgumentError("unknown cut mode '" + m +
                                    "' (valid: brute, exact, heuristic)");
          }
          json r;
          r["vertices"] = g.vertex_count();
          r["edges"] = g.edge_count();
          r["mode"] = m;
          r.update(bounds_json(g, b, true));
          return r;
        },
        timing);
    *out = emit(document(std::move(results), std::move(timing)));
  });
}

csep_status csep_is_cut_set(const csep_graph* graph, const int32_t* vertices, size_t count,
                            int* out) {
  return guarded([&] {
    require(graph, "graph");
    require(out, "out");
    if (count) require(vertices, "vertices");
    std::vector<cs::VertexId> ids(vertices, vertices + count);
    *out = cs::is_cut_set(graph->graph(), cs::VertexSet::from_unsorted(std::move(ids))) ? 1 : 0;
  });
}

csep_status csep_profile(const char* spec, size_t max_n, const char* candidates,
                         const csep_run_options* options, char** out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    auto po = profile_options(options);
    po.max_n = max_n;
    po.families = cs::parse_families(candidates ? candidates : "balls");
    const auto source = cs::resolve_source(spec);
    json timing;
    json results;
    timing = json::object();
    const auto start = std::chrono::steady_clock::now();
    const auto profile = cs::sep_profile(source, po);
    results = profile_json(profile, po, timing);
    timing["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    *out = emit(document(std::move(results), std::move(timing)));
  });
}

csep_status csep_gapcheck(const csep_group* group, int max_r, const csep_run_options* options,
                          char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    const csep_run_options o = options ? *options : defaults();
    json timing;
    json results = timed(
        [&] {
          cs::GapOptions go;
          go.budget_ms = o.budget_ms;
          go.seed = o.seed;
          go.workers = o.workers;
          go.vertex_budget = o.vertex_budget;
          const auto rep = cs::gap_check(*group->model, max_r, go);
          json rows = json::array();
          std::size_t passed = 0;
          for (const auto& r : rep.rows) {
            rows.push_back({{"r", r.r},
                            {"n", r.n},
                            {"cut_lower", r.cut_lower},
                            {"cut_upper", r.cut_upper},
                            {"exact", r.exact},
                            {"threshold", r.threshold},
                            {"pass", r.pass},
                            {"ratio", r.ratio}});
            passed += r.pass;
          }
          json j;
          j["group"] = rep.group;
          j["relator_bound"] = rep.relator_bound;
          j["applicability"] = rep.applicability;
          j["rows"] = rows;
          j["passed"] = passed;
          j["total"] = rep.rows.size();
          j["all_pass"] = rep.all_pass();
          return j;
        },
        timing);
    *out = emit(document(std::move(results), std::move(timing)));
  });
}

csep_status csep_kappa_compare(const csep_group* group, const uint64_t* n_list, size_t count,
                               const csep_run_options* options, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    if (count == 0) throw cs::ArgumentError("n list is empty");
    require(n_list, "n_list");
    std::vector<std::size_t> ns(n_list, n_list + count);
    auto po = profile_options(options);
    po.max_n = *std::max_element(ns.begin(), ns.end());
    json timing;
    json results = timed(
        [&] {
          cs::Source src;
          src.spec = group->model->name();
          src.group = group->model;
          const auto profile = cs::sep_profile(src, po);
          const auto cmp = cs::kappa_compare(*group->model, profile.points, ns, po.vertex_budget);
          json rows = json::array();
          for (const auto& r : cmp.rows) {
            rows.push_back({{"n", r.n},
                            {"profile_lower", r.profile_lower},
                            {"kappa", r.kappa},
                            {"ratio", r.ratio}});
          }
          return json{{"group", group->model->name()},
                      {"rows", rows},
                      {"best_constant", cmp.best_constant},
                      {"applicability", cmp.applicability}};
        },
        timing);
    *out = emit(document(std::move(results), std::move(timing)));
  });
}

csep_status csep_witness(const csep_group* group, int length, const char* K,
                         size_t vertex_budget, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    const auto bound = cs::Rational::parse(K ? K : "18");
    json timing;
    json results = timed(
        [&] {
          cs::WitnessOptions wo;
          wo.vertex_budget = vertex_budget;
          const auto s = cs::find_distorted_cycle(*group->model, length, bound, wo);
          json j;
          j["status"] = cs::to_string(s.status);
          j["length_requested"] = length;
          j["K"] = bound.str();
          j["ambient_radius"] = s.ambient_radius;
          j["max_length_searchable"] = s.max_length_searchable;
          j["bigons_examined"] = s.bigons_examined;
          j["boundary_hits"] = s.boundary_hits;
          j["detail"] = s.detail;
          j["witness"] = s.witness ? witness_json(*s.witness) : json(nullptr);
          return j;
        },
        timing);
    *out = emit(document(std::move(results), std::move(timing)));
  });
}

csep_status csep_bigons(const csep_group* group, int radius, const csep_run_options* options,
                        char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    const csep_run_options o = options ? *options : defaults();
    json timing;
    json results = timed(
        [&] {
          const auto scan =
              cs::bigon_fatness_scan(*group->model, radius, o.workers, 100, o.vertex_budget);
          json top = json::array();
          for (const auto& b : scan.top) {
            top.push_back({{"u", b.u_key},
                           {"v", b.v_key},
                           {"geodesic_length", b.geodesic_length},
                           {"max_layer_diameter", b.max_layer_diameter},
                           {"layer", b.layer}});
          }
          return json{{"radius", scan.radius},
                      {"pairs_scanned", scan.pairs_scanned},
                      {"max_layer_diameter",
                       scan.top.empty() ? 0 : scan.top.front().max_layer_diameter},
                      {"top", top}};
        },
        timing);
    *out = emit(document(std::move(results), std::move(timing)));
  });
}

csep_status csep_bottleneck(const csep_group* group, int radius, int delta,
                            const csep_run_options* options, char** out) {
  return guarded([&] {
    require(group, "group");
    require(out, "out");
    const csep_run_options o = options ? *options : defaults();
    json timing;
    json results = timed(
        [&] {
          const auto rep =
              cs::bottleneck_check(*group->model, radius, delta, o.workers, o.vertex_budget);
          json list = json::array();
          for (std::size_t i = 0; i < rep.violations.size() && i < 100; ++i) {
            const auto& v = rep.violations[i];
            list.push_back({{"x", v.x_key}, {"y", v.y_key}, {"midpoint", v.midpoint_key}});
          }
          return json{{"radius", rep.radius},
                      {"delta", rep.delta},
                      {"pairs_checked", rep.pairs_checked},
                      {"violation_count", rep.violations.size()},
                      {"holds", rep.violations.empty()},
                      {"violations", list}};
        },
        timing);
    *out = emit(document(std::move(results), std::move(timing)));
  });
}

csep_status csep_verify_record(const char* record_json, char** out) {
  return guarded([&] {
    require(record_json, "record_json");
    require(out, "out");
    const json record = json::parse(record_json);
    if (record.value("schema", 0) != 1) throw cs::ArgumentError("unsupported record schema");
    const std::string command = record.at("command").get<std::string>();
    json report;
    if (command == "cut") {
      report = verify_cut(record);
    } else if (command == "profile") {
      report = verify_profile(record);
    } else if (command == "witness") {
      report = verify_witness_record(record);
    } else {
      report = {{"checks", 0}, {"passed", 0}, {"details", json::array()}};
    }
    report["command"] = command;
    report["ok"] = report["checks"] == report["passed"];
    *out = emit(report);
  });
}

}  // extern "C"
