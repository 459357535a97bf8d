#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cayleysep/cuts.hpp"
#include "cayleysep/graph.hpp"
#include "cayleysep/groups.hpp"

namespace cayleysep {

// What a profile is measured on: a group (through its Cayley balls) or a
// fixed graph. Graph specs are file:<path> and sierpinski:<L>.
struct Source {
  std::string spec;
  std::shared_ptr<const GroupModel> group;
  std::optional<Graph> graph;

  bool is_group() const noexcept { return group != nullptr; }
};

Source resolve_source(std::string_view spec);

enum class CandidateFamily { Balls, SpheresThickened, RandomConnected };

std::string to_string(CandidateFamily f);
CandidateFamily parse_family(std::string_view name);
/// Comma-separated family names; throws ArgumentError if the list is empty.
std::vector<CandidateFamily> parse_families(std::string_view list);

struct ProfileOptions {
  std::size_t max_n = 1000;
  std::vector<CandidateFamily> families{CandidateFamily::Balls};
  std::int64_t budget_ms = 2000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::size_t vertex_budget = kDefaultVertexBudget;
  int random_samples = 2;  // per target size
};

struct CandidateResult {
  std::string id;  // "ball:r=3", "shell:t=4", "random:n=200#1"
  CandidateFamily family = CandidateFamily::Balls;
  std::size_t n = 0;
  int radius = -1;  // balls only
  std::vector<VertexId> vertices;  // host ids of the candidate; empty for balls
  CutBounds bounds;
};

struct ProfilePoint {
  std::size_t n = 0;
  std::size_t cut_lower = 0;
  std::size_t cut_upper = 0;
  std::string candidate;
  bool exact = false;
};

struct Profile {
  std::string source;
  int host_radius = 0;  // candidates live in the ball of this radius
  std::vector<CandidateResult> candidates;  // in evaluation order
  std::vector<ProfilePoint> points;         // running maximum, one per size
  std::vector<std::string> notes;
};

/// Ball that hosts every candidate: for groups the largest Cayley ball with at
/// most max_n vertices, for graphs the largest such ball around vertex 0.
Ball profile_host(const Source& source, std::size_t max_n, std::size_t vertex_budget);

/// Certified lower-bound envelope of sep over the chosen candidate families.
Profile sep_profile(const Source& source, const ProfileOptions& options);

/// Running-maximum envelope of a candidate list (sorted by size, ties keep the
/// earlier witness).
std::vector<ProfilePoint> envelope(const std::vector<CandidateResult>& candidates);

struct FitReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  std::size_t count = 0;
};

/// Least squares of log(cut_lower) on log(n) over points with n in
/// [n_min, n_max] and cut_lower >= 1. Needs at least three such points.
FitReport fit_exponent(const std::vector<ProfilePoint>& points, std::size_t n_min = 0,
                       std::size_t n_max = static_cast<std::size_t>(-1));

struct GapRow {
  int r = 0;
  std::size_t n = 0;
  std::size_t cut_lower = 0;
  std::size_t cut_upper = 0;
  bool exact = false;
  double threshold = 0.0;  // r / (400 M)
  bool pass = false;
  double ratio = 0.0;  // cut_lower / r
};

struct GapReport {
  std::string group;
  int relator_bound = 0;
  std::string applicability;
  std::vector<GapRow> rows;
  bool all_pass() const;
};

struct GapOptions {
  std::int64_t budget_ms = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::size_t vertex_budget = kDefaultVertexBudget;
};

/// Checks cut(B_r) >= r / 400M for r = 1..r_max with certified lower bounds.
GapReport gap_check(const GroupModel& m, int r_max, const GapOptions& options = {});

struct KappaRow {
  std::size_t n = 0;
  std::size_t profile_lower = 0;
  int kappa = 0;
  double ratio = 0.0;  // profile_lower / kappa, 0 when kappa = 0
};

struct KappaComparison {
  std::vector<KappaRow> rows;
  double best_constant = 0.0;  // min ratio over rows with kappa > 0
  std::string applicability;
};

/// Pairs the profile envelope at each n with the inverse growth function.
KappaComparison kappa_compare(const GroupModel& m, const std::vector<ProfilePoint>& points,
                              const std::vector<std::size_t>& n_list,
                              std::size_t vertex_budget = kDefaultVertexBudget);

/// Up to `count` vertices of the outer sphere of `ball`, evenly spaced, each
/// paired with its inverse; used as distance-difference anchors for cuts.
std::vector<std::pair<VertexId, VertexId>> inverse_anchors(const GroupModel& m, const Ball& ball,
                                                           int radius, std::size_t count = 32);

/// Restriction of a ball to the vertices within distance r of its center.
/// Ids are preserved because balls number vertices layer by layer.
Ball sub_ball(const Ball& ball, int r);

/// Ball of radius r around `center` inside a plain graph.
Ball graph_ball(const Graph& g, VertexId center, int r);

}  // namespace cayleysep
