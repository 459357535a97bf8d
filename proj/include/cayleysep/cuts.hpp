#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cayleysep/graph.hpp"

namespace cayleysep {

enum class BoundKind { Exact, Upper, Lower };

std::string to_string(BoundKind kind);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t work = 0;
  double elapsed_ms = 0.0;
  bool wallclock_guard = false;  // stopped by the wall-clock safety net
};

/// Evidence about cut(g). Exact and Upper certificates carry a separator that
/// passes is_cut_set; a Lower certificate carries only the proven value.
struct CutCertificate {
  BoundKind kind = BoundKind::Upper;
  std::optional<VertexSet> separator;
  std::size_t largest_component_size = 0;
  std::size_t value = 0;
  std::string method;
  SearchStats stats;
};

/// Outcome of an anytime solve: either one Exact certificate, or a Lower
/// certificate together with the best verified Upper separator.
struct CutBounds {
  CutCertificate upper;
  std::optional<CutCertificate> lower;

  bool exact() const noexcept { return upper.kind == BoundKind::Exact; }
  std::size_t lower_value() const noexcept { return exact() ? upper.value : lower->value; }
  std::size_t upper_value() const noexcept { return upper.value; }
};

/// Largest component size allowed after removing a cut set: floor(|g| / 2).
inline std::size_t half_threshold(std::size_t n) { return n / 2; }

/// True iff every component of g - S has at most floor(|g|/2) vertices.
bool is_cut_set(const Graph& g, const VertexSet& S);

/// Exhaustive search in order of increasing size; the lexicographically
/// smallest minimum separator wins. Throws ResourceError above max_vertices.
CutCertificate cut_brute(const Graph& g, std::size_t max_vertices = 20);

struct HeuristicOptions {
  int orderings = 24;
  int refine_passes = 3;
  // extra (u, v) pairs whose distance-difference orderings are swept, e.g. a
  // boundary vertex of a ball and its inverse
  std::vector<std::pair<VertexId, VertexId>> anchors;
};

/// Upper bound from sphere sweeps (when `layering` gives ball distances),
/// prefix sweeps over breadth-first and distance-difference orderings, and
/// local refinement. Always returns a valid separator.
CutCertificate cut_heuristic(const Graph& g, std::uint64_t seed, std::span<const int> layering = {},
                             const HeuristicOptions& options = {});

/// Lower bound from a uniform multicommodity flow. Every pair of vertices
/// routes one unit along a mixture of shortest paths under weights tuned by
/// multiplicative updates; a separator of size k must carry the flow of every
/// pair it splits, so the k heaviest vertex loads must cover that demand.
struct FlowBound {
  std::size_t value = 0;
  std::vector<double> loads;  // per-vertex load of the routing behind `value`
};

FlowBound multicommodity_lower_bound(const Graph& g, int iterations = 20, int workers = 1);

/// Pairs of vertices that a cut set of size k must separate, at minimum.
double separated_pairs_needed(std::size_t n, std::size_t k);

struct ExactOptions {
  std::int64_t budget_ms = 10000;
  std::uint64_t seed = 0;
  std::size_t flow_bound_max_vertices = 2500;
  int flow_iterations = 20;
  int workers = 1;
  std::span<const int> layering;  // optional ball distances for the heuristic
  HeuristicOptions heuristic;
};

/// Branch and bound over include/exclude decisions in load order. The search
/// budget is measured in deterministic work units calibrated to roughly
/// budget_ms on a laptop, so identical inputs give identical certificates.
CutBounds cut_exact(const Graph& g, const ExactOptions& options = {});

/// Work units granted per millisecond of budget.
inline constexpr std::uint64_t kWorkUnitsPerMs = 6000;

/// Width of the greedy min-fill elimination order (ties: min degree, then id).
int treewidth_upper(const Graph& g);

}  // namespace cayleysep
