#include <gtest/gtest.h>

#include <cmath>

#include "cayleysep/errors.hpp"
#include "cayleysep/profiles.hpp"

using namespace cayleysep;

namespace {

Source group_source(const std::string& spec) { return resolve_source(spec); }

ProfileOptions quick(std::size_t max_n, std::int64_t budget_ms = 300) {
  ProfileOptions o;
  o.max_n = max_n;
  o.budget_ms = budget_ms;
  return o;
}

std::vector<ProfilePoint> synthetic(double exponent) {
  std::vector<ProfilePoint> pts;
  for (std::size_t n : {4u, 16u, 64u, 256u, 1024u}) {
    ProfilePoint p;
    p.n = n;
    p.cut_lower = p.cut_upper = static_cast<std::size_t>(std::lround(std::pow(n, exponent)));
    pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST(Source, Resolves) {
  EXPECT_TRUE(resolve_source("zd:2").is_group());
  const auto s = resolve_source("sierpinski:2");
  EXPECT_FALSE(s.is_group());
  EXPECT_EQ(s.graph->vertex_count(), 15u);
  EXPECT_THROW(resolve_source("sierpinski:x"), ConfigurationError);
  EXPECT_THROW(resolve_source("file:/nonexistent/graph.txt"), Error);
}

TEST(Families, Parse) {
  EXPECT_EQ(parse_families("balls,random-connected"),
            (std::vector<CandidateFamily>{CandidateFamily::Balls, CandidateFamily::RandomConnected}));
  EXPECT_EQ(to_string(CandidateFamily::SpheresThickened), "spheres-thickened");
  EXPECT_THROW(parse_families(""), ArgumentError);
  EXPECT_THROW(parse_families("balls,cubes"), ArgumentError);
}

TEST(Balls, SubBallPreservesIds) {
  const Ball big = cayley_ball(*catalog_group("heis"), 4);
  for (int r = 0; r <= 4; ++r) {
    const Ball small = sub_ball(big, r);
    const Ball direct = cayley_ball(*catalog_group("heis"), r);
    EXPECT_EQ(small.graph, direct.graph);
  }
  EXPECT_THROW(sub_ball(big, 5), ArgumentError);
}

TEST(Balls, GraphBall) {
  const auto p = builders::path_graph(9);
  const Ball b = graph_ball(p, 0, 3);
  EXPECT_EQ(b.graph.vertex_count(), 4u);
  EXPECT_EQ(b.dist_from_center, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Balls, InverseAnchorsAreInverses) {
  auto m = catalog_group("heis");
  const Ball b = cayley_ball(*m, 3);
  const auto anchors = inverse_anchors(*m, b, 3, 8);
  ASSERT_FALSE(anchors.empty());
  EXPECT_LE(anchors.size(), 8u);
  for (auto [u, v] : anchors) {
    EXPECT_EQ(b.dist_from_center[u], 3);
    EXPECT_EQ(m->evaluate(m->alphabet().inverse_word(b.word_to(u))), b.key(v));
  }
}

TEST(Envelope, RunningMaximum) {
  std::vector<CandidateResult> cands(3);
  cands[0].id = "a";
  cands[0].n = 10;
  cands[0].bounds.upper.kind = BoundKind::Exact;
  cands[0].bounds.upper.value = 3;
  cands[1].id = "b";
  cands[1].n = 20;
  cands[1].bounds.upper.kind = BoundKind::Exact;
  cands[1].bounds.upper.value = 2;
  cands[2].id = "c";
  cands[2].n = 20;
  cands[2].bounds.upper.kind = BoundKind::Upper;
  cands[2].bounds.upper.value = 6;
  cands[2].bounds.lower = CutCertificate{BoundKind::Lower, std::nullopt, 0, 4, "flow", {}};
  const auto pts = envelope(cands);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0].cut_lower, 3u);
  EXPECT_EQ(pts[1].cut_lower, 4u);
  EXPECT_EQ(pts[1].cut_upper, 6u);
  EXPECT_EQ(pts[1].candidate, "c");
}

TEST(Profile, FreeGroupIsFlat) {
  const auto p = sep_profile(group_source("free:2"), quick(100));
  ASSERT_FALSE(p.points.empty());
  for (const auto& pt : p.points) {
    EXPECT_EQ(pt.cut_lower, 1u);
    EXPECT_EQ(pt.cut_upper, 1u);
  }
  for (const auto& c : p.candidates) EXPECT_EQ(c.bounds.upper_value(), 1u) << c.id;
}

TEST(Profile, LineIsFlat) {
  const auto p = sep_profile(group_source("zd:1"), quick(50));
  for (const auto& pt : p.points) EXPECT_EQ(pt.cut_lower, 1u);
}

TEST(Profile, PlaneGrowsAndIsMonotone) {
  const auto p = sep_profile(group_source("zd:2"), quick(200));
  ASSERT_GE(p.points.size(), 5u);
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    EXPECT_LE(p.points[i].cut_lower, p.points[i].cut_upper);
    if (i > 0) {
      EXPECT_LE(p.points[i - 1].cut_lower, p.points[i].cut_lower);
      EXPECT_LT(p.points[i - 1].n, p.points[i].n);
    }
  }
  EXPECT_GT(p.points.back().cut_lower, 1u);
  for (const auto& c : p.candidates) {
    const Ball host = profile_host(group_source("zd:2"), 200, kDefaultVertexBudget);
    EXPECT_TRUE(is_cut_set(sub_ball(host, c.radius).graph, *c.bounds.upper.separator));
  }
}

TEST(Profile, AllFamiliesAreValidAndSeeded) {
  auto o = quick(150, 100);
  o.families = {CandidateFamily::Balls, CandidateFamily::SpheresThickened,
                CandidateFamily::RandomConnected};
  o.seed = 9;
  const auto src = group_source("heis");
  const auto p = sep_profile(src, o);
  const Ball host = profile_host(src, o.max_n, o.vertex_budget);
  bool saw_random = false, saw_shell = false;
  for (const auto& c : p.candidates) {
    EXPECT_LE(c.n, o.max_n);
    if (c.family == CandidateFamily::Balls) continue;
    saw_random |= c.family == CandidateFamily::RandomConnected;
    saw_shell |= c.family == CandidateFamily::SpheresThickened;
    const auto sub = induced_subgraph(host.graph, VertexSet::from_sorted(c.vertices));
    EXPECT_EQ(sub.graph.vertex_count(), c.n);
    EXPECT_TRUE(is_cut_set(sub.graph, *c.bounds.upper.separator)) << c.id;
    if (c.family == CandidateFamily::RandomConnected) EXPECT_TRUE(is_connected(sub.graph));
  }
  EXPECT_TRUE(saw_random);
  EXPECT_TRUE(saw_shell);

  auto o2 = o;
  o2.workers = 3;
  const auto q = sep_profile(src, o2);
  ASSERT_EQ(p.candidates.size(), q.candidates.size());
  for (std::size_t i = 0; i < p.candidates.size(); ++i) {
    EXPECT_EQ(p.candidates[i].id, q.candidates[i].id);
    EXPECT_EQ(p.candidates[i].vertices, q.candidates[i].vertices);
    EXPECT_EQ(*p.candidates[i].bounds.upper.separator, *q.candidates[i].bounds.upper.separator);
  }
}

TEST(Profile, GraphSource) {
  const auto p = sep_profile(resolve_source("sierpinski:3"), quick(40));
  ASSERT_FALSE(p.points.empty());
  EXPECT_LE(p.points.back().n, 40u);
}

TEST(Fit, SyntheticData) {
  std::vector<ProfilePoint> pts;
  for (std::size_t n : {4u, 9u, 16u, 25u, 100u}) {
    ProfilePoint p;
    p.n = n;
    p.cut_lower = static_cast<std::size_t>(std::lround(std::sqrt(n)));
    pts.push_back(p);
  }
  EXPECT_NEAR(fit_exponent(pts).slope, 0.5, 1e-9);
  const auto flat = fit_exponent(synthetic(0.0));
  EXPECT_NEAR(flat.slope, 0.0, 1e-9);
  EXPECT_NEAR(flat.r_squared, 1.0, 1e-12);
  EXPECT_EQ(flat.count, 5u);
  EXPECT_NEAR(fit_exponent(synthetic(0.5), 10).slope, 0.5, 1e-9);
  EXPECT_EQ(fit_exponent(synthetic(0.5), 10, 300).count, 3u);
  EXPECT_THROW(fit_exponent(synthetic(0.5), 100), ArgumentError);
}

TEST(Gap, PlaneAndHeisenbergPass) {
  GapOptions o;
  o.budget_ms = 200;
  const auto z = gap_check(*catalog_group("zd:2"), 10, o);
  EXPECT_EQ(z.relator_bound, 4);
  ASSERT_EQ(z.rows.size(), 10u);
  EXPECT_TRUE(z.all_pass());
  for (const auto& r : z.rows) {
    EXPECT_NEAR(r.threshold, r.r / 1600.0, 1e-12);
    EXPECT_LE(r.cut_lower, r.cut_upper);
  }
  const auto h = gap_check(*catalog_group("heis"), 6, o);
  EXPECT_EQ(h.relator_bound, 5);
  EXPECT_TRUE(h.all_pass());
  EXPECT_THROW(gap_check(*catalog_group("free:2"), 3, o), ConfigurationError);
}

TEST(Kappa, CompareOnPlaneAndFreeGroup) {
  auto z = catalog_group("zd:2");
  auto o = quick(113, 500);
  Source src{"zd:2", z, std::nullopt};
  const auto p = sep_profile(src, o);
  const auto cmp = kappa_compare(*z, p.points, {13, 25, 41, 61, 85, 113});
  ASSERT_EQ(cmp.rows.size(), 6u);
  EXPECT_GE(cmp.best_constant, 0.5);
  EXPECT_EQ(cmp.rows[1].kappa, 3);

  auto f = catalog_group("free:2");
  Source fs{"free:2", f, std::nullopt};
  const auto fp = sep_profile(fs, quick(161));
  const auto fc = kappa_compare(*f, fp.points, {17, 53, 161});
  EXPECT_NE(fc.applicability.find("does not apply"), std::string::npos);
  for (const auto& r : fc.rows) EXPECT_EQ(r.profile_lower, 1u);
  EXPECT_EQ(fc.rows.back().kappa, 4);
}
