#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cayleysep/graph.hpp"
#include "cayleysep/groups.hpp"

namespace cayleysep {

struct Rational {
  std::int64_t num = 1;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  static Rational parse(std::string_view text);  // "p/q", "p" or a decimal like "2.5"

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

/// max over pairs of cycle vertices of d_cycle(x, y) / d_g(x, y), with g the
/// ambient graph itself. Throws ArgumentError unless `cycle` lists the
/// vertices of an embedded closed cycle of length >= 3 in order.
Rational cycle_distortion(const Graph& g, std::span<const VertexId> cycle);

/// Same, but inside a Cayley ball. Ball distances agree with group distances
/// only away from the boundary, so every cycle vertex must lie within
/// radius - ceil(length / 2) of the center; otherwise ArgumentError names the
/// radius that would be needed.
Rational cycle_distortion(const Ball& ambient, std::span<const VertexId> cycle);

/// Smallest ambient radius accepted by the ball overload for this cycle.
int required_ambient_radius(const Ball& ambient, std::span<const VertexId> cycle);

struct CycleWitness {
  std::vector<VertexId> cycle;   // ids in the ambient ball
  std::vector<ElementKey> keys;  // same cycle as element keys
  std::size_t length = 0;
  Rational distortion;
  int ambient_radius = 0;
  std::string construction;  // "quadrilateral" or "rectangle"
};

enum class WitnessStatus { Found, Exhausted, BudgetLimited };
std::string to_string(WitnessStatus s);

struct WitnessSearch {
  WitnessStatus status = WitnessStatus::Exhausted;
  std::optional<CycleWitness> witness;
  int ambient_radius = 0;
  int max_length_searchable = 0;
  std::size_t bigons_examined = 0;
  std::size_t boundary_hits = 0;  // constructions too close to the ball edge to verify
  std::string detail;
};

struct WitnessOptions {
  std::size_t vertex_budget = kDefaultVertexBudget;
};

/// Looks for an embedded cycle of length >= target_length whose distortion is
/// at most K. Phase one mines fat geodesic bigons from the identity and builds
/// the quadrilateral of the hyperbolicity argument from each; phase two traces
/// commutator rectangles g^p h^p g^-p h^-p. Both run inside the ball of radius
/// target_length, which is large enough that a failed scan means exhausted.
WitnessSearch find_distorted_cycle(const GroupModel& m, int target_length, Rational K = Rational(18),
                                   const WitnessOptions& options = {});

/// Re-checks a witness given as element keys in a freshly built ball.
CycleWitness verify_witness(const GroupModel& m, const std::vector<ElementKey>& keys,
                            int ambient_radius, std::size_t vertex_budget = kDefaultVertexBudget);

struct BigonReport {
  VertexId u = 0, v = 0;
  ElementKey u_key, v_key;
  int geodesic_length = 0;
  int max_layer_diameter = 0;
  int layer = 0;  // index i of the widest layer
};

struct BigonScan {
  int radius = 0;
  std::size_t pairs_scanned = 0;
  std::vector<BigonReport> top;  // fatness descending, then pair ids
};

inline constexpr std::size_t kBigonAmbientLimit = 6000;

/// Every pair in B_radius at distance >= 4, with distances measured in
/// B_{2 radius}. Keeps the `keep` fattest pairs.
BigonScan bigon_fatness_scan(const GroupModel& m, int radius, int workers = 1,
                             std::size_t keep = 100,
                             std::size_t vertex_budget = kDefaultVertexBudget);

struct BottleneckViolation {
  VertexId x = 0, y = 0, midpoint = 0;
  ElementKey x_key, y_key, midpoint_key;
};

struct BottleneckReport {
  int radius = 0;
  int delta = 0;
  std::size_t pairs_checked = 0;
  std::vector<BottleneckViolation> violations;
};

/// For each pair x < y in B_radius: w is the middle vertex of the first
/// geodesic in id order; a violation means x and y stay connected in
/// B_{2 radius} after deleting the closed delta-ball around w.
BottleneckReport bottleneck_check(const GroupModel& m, int radius, int delta, int workers = 1,
                                  std::size_t vertex_budget = kDefaultVertexBudget);

}  // namespace cayleysep
