#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cayleysep/errors.hpp"
#include "cayleysep/groups.hpp"
#include "cayleysep/rng.hpp"

using namespace cayleysep;

namespace {

Symbol sym(const GroupModel& m, std::string_view name) { return *m.alphabet().find(name); }

ElementKey eval(const GroupModel& m, std::string_view word) {
  return m.evaluate(m.alphabet().parse_word(word));
}

std::vector<long> coords(const std::string& key) {
  std::vector<long> out;
  std::istringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) out.push_back(std::stol(part));
  return out;
}

}  // namespace

TEST(Catalog, GeneratorActions) {
  auto z = catalog_group("zd:2");
  EXPECT_EQ(z->multiply(z->identity(), sym(*z, "a")), eval(*z, "a"));
  EXPECT_EQ(coords(eval(*z, "a")), (std::vector<long>{1, 0}));

  auto f = catalog_group("free:2");
  EXPECT_EQ(f->multiply(eval(*f, "a b"), sym(*f, "b-")), eval(*f, "a"));
  EXPECT_NE(eval(*f, "a b"), eval(*f, "b a"));
}

TEST(Catalog, HeisenbergCommutatorIsCentral) {
  auto h = catalog_group("heis");
  const auto comm = eval(*h, "a b a- b-");
  EXPECT_NE(comm, h->identity());
  // upper unitriangular matrices: [a, b] = c, the central generator
  EXPECT_EQ(comm, eval(*h, "c"));
  EXPECT_EQ(eval(*h, "a c a- c-"), h->identity());
  EXPECT_EQ(eval(*h, "b c b- c-"), h->identity());
}

TEST(Catalog, RelatorBounds) {
  EXPECT_EQ(catalog_group("zd:2")->relator_bound(), 4);
  EXPECT_EQ(catalog_group("heis")->relator_bound(), 5);
  EXPECT_EQ(catalog_group("surface:2")->relator_bound(), 8);
  EXPECT_FALSE(catalog_group("free:2")->relator_bound().has_value());
}

TEST(Catalog, RelatorsEvaluateToIdentity) {
  for (const char* spec : {"zd:2", "zd:3", "heis", "surface:2", "bs:1:2"}) {
    auto m = catalog_group(spec);
    ASSERT_TRUE(m->presentation()) << spec;
    for (const auto& r : m->presentation()->relators) {
      EXPECT_TRUE(m->same_element(m->evaluate(r), m->identity())) << spec;
    }
  }
}

TEST(Catalog, UnknownSpecs) {
  EXPECT_THROW(catalog_group("zd:x"), ConfigurationError);
  EXPECT_THROW(catalog_group("nope"), ConfigurationError);
  EXPECT_THROW(catalog_group("surface:3"), ConfigurationError);
}

TEST(Catalog, InverseRoundTrip) {
  for (const char* spec : {"zd:1", "zd:2", "zd:3", "free:2", "heis", "lamplighter", "bs:1:2"}) {
    auto m = catalog_group(spec);
    const Ball b = cayley_ball(*m, 6);
    for (VertexId v = 0; v < static_cast<VertexId>(b.graph.vertex_count()); ++v) {
      for (Symbol s = 0; s < static_cast<Symbol>(m->alphabet().size()); ++s) {
        const auto there = m->multiply(b.key(v), s);
        EXPECT_EQ(m->multiply(there, m->alphabet().inverse(s)), b.key(v)) << spec;
      }
    }
  }
  auto s = catalog_group("surface:2");
  const Ball b = cayley_ball(*s, 2);
  for (VertexId v = 0; v < static_cast<VertexId>(b.graph.vertex_count()); ++v) {
    for (Symbol g = 0; g < 8; ++g) {
      const auto back = s->multiply(s->multiply(b.key(v), g), s->alphabet().inverse(g));
      EXPECT_TRUE(s->same_element(back, b.key(v)));
    }
  }
}

TEST(Dehn, Examples) {
  auto s = catalog_group("surface:2");
  const DehnOracle oracle(*s->presentation());
  const auto& A = s->alphabet();
  EXPECT_TRUE(oracle.normalize({}).empty());
  EXPECT_TRUE(oracle.normalize(A.parse_word("a b a- b- c d c- d-")).empty());
  EXPECT_EQ(oracle.normalize(A.parse_word("a b a-")), A.parse_word("a b a-"));
  // every cyclic conjugate of the relator and of its inverse is trivial
  const Word rel = s->presentation()->relators.front();
  for (const Word& base : {rel, A.inverse_word(rel)}) {
    for (std::size_t k = 0; k < base.size(); ++k) {
      Word w(base.begin() + k, base.end());
      w.insert(w.end(), base.begin(), base.begin() + k);
      EXPECT_TRUE(oracle.is_identity(w));
    }
  }
}

TEST(Dehn, NormalizeIsIdempotent) {
  auto s = catalog_group("surface:2");
  const DehnOracle oracle(*s->presentation());
  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    Word w(rng.below(24));
    for (auto& x : w) x = static_cast<Symbol>(rng.below(8));
    const Word once = oracle.normalize(w);
    EXPECT_EQ(oracle.normalize(once), once);
  }
}

TEST(Dehn, RejectsPresentationsWithLongPieces) {
  auto z = catalog_group("zd:2");
  EXPECT_THROW(DehnOracle(*z->presentation()), UnsupportedError);
  EXPECT_GT(max_piece_ratio(*z->presentation()), 1.0 / 6.0);
  EXPECT_LT(max_piece_ratio(*catalog_group("surface:2")->presentation()), 1.0 / 6.0);
}

TEST(Presentation, ParsesFiles) {
  const auto path = std::filesystem::temp_directory_path() / "cayleysep_test_pres.txt";
  {
    std::ofstream f(path);
    f << "a b c d\n"
      << "a b a- b- c d c- d-\n";
  }
  auto m = catalog_group("pres:" + path.string());
  EXPECT_EQ(m->relator_bound(), 8);
  EXPECT_EQ(cayley_ball(*m, 3).graph.vertex_count(), 457u);
  std::filesystem::remove(path);
}

TEST(Ball, Examples) {
  auto z = catalog_group("zd:2");
  EXPECT_EQ(cayley_ball(*z, 2).graph.vertex_count(), 13u);
  auto f = catalog_group("free:2");
  const Ball b = cayley_ball(*f, 2);
  EXPECT_EQ(b.graph.vertex_count(), 17u);
  EXPECT_EQ(b.graph.edge_count(), 16u);
  for (const char* spec : {"zd:3", "free:3", "heis", "lamplighter", "bs:1:3", "surface:2"}) {
    const Ball zero = cayley_ball(*catalog_group(spec), 0);
    EXPECT_EQ(zero.graph.vertex_count(), 1u);
    EXPECT_EQ(zero.graph.edge_count(), 0u);
  }
}

TEST(Ball, FreeBallsAreTrees) {
  for (int k = 1; k <= 3; ++k) {
    auto f = catalog_group("free:" + std::to_string(k));
    for (int r = 0; r <= 5; ++r) {
      const Ball b = cayley_ball(*f, r);
      EXPECT_EQ(b.graph.edge_count() + 1, b.graph.vertex_count());
    }
  }
}

TEST(Ball, SurfaceBallIsTreeLikeBelowHalfRelator) {
  auto s = catalog_group("surface:2");
  EXPECT_EQ(growth_table(*s, 3), (std::vector<std::size_t>{1, 9, 65, 457}));
  // the relator closes the first cycles at radius 4
  EXPECT_LT(cayley_ball(*s, 4).graph.vertex_count(), 457u + 8u * 7 * 7 * 7);
}

TEST(Ball, LatticeBallMatchesL1Ball) {
  for (int d = 1; d <= 3; ++d) {
    auto z = catalog_group("zd:" + std::to_string(d));
    for (int r = 0; r <= 4; ++r) {
      const Ball b = cayley_ball(*z, r);
      std::map<std::vector<long>, VertexId> at;
      for (VertexId v = 0; v < static_cast<VertexId>(b.graph.vertex_count()); ++v) {
        auto c = coords(b.key(v));
        long norm = 0;
        for (auto x : c) norm += std::abs(x);
        EXPECT_EQ(norm, b.dist_from_center[v]);
        EXPECT_LE(norm, r);
        at[c] = v;
      }
      std::size_t edges = 0;
      for (const auto& [c, v] : at) {
        for (int i = 0; i < d; ++i) {
          auto n = c;
          ++n[i];
          auto it = at.find(n);
          if (it != at.end()) {
            ++edges;
            EXPECT_TRUE(b.graph.has_edge(v, it->second));
          }
        }
      }
      EXPECT_EQ(edges, b.graph.edge_count());
    }
  }
}

TEST(Ball, DeterministicNumbering) {
  auto h = catalog_group("heis");
  const Ball a = cayley_ball(*h, 4), b = cayley_ball(*h, 4);
  EXPECT_EQ(a.graph, b.graph);
  for (VertexId v = 1; v < static_cast<VertexId>(a.graph.vertex_count()); ++v) {
    EXPECT_LE(a.dist_from_center[v - 1], a.dist_from_center[v]);
  }
}

TEST(Ball, BudgetIsEnforced) {
  auto f = catalog_group("free:3");
  EXPECT_THROW(cayley_ball(*f, 10, 1000), ResourceError);
  const Ball partial = largest_cayley_ball(*f, 10, 1000);
  EXPECT_LE(partial.graph.vertex_count(), 1000u);
  EXPECT_EQ(partial.radius, 4);  // |B_4| = 937
}

TEST(Ball, WordsAndInverses) {
  auto h = catalog_group("heis");
  const Ball b = cayley_ball(*h, 3);
  for (VertexId v = 0; v < static_cast<VertexId>(b.graph.vertex_count()); ++v) {
    const Word w = b.word_to(v);
    EXPECT_EQ(static_cast<int>(w.size()), b.dist_from_center[v]);
    EXPECT_EQ(h->evaluate(w), b.key(v));
    const auto inv = b.inverse_of(*h, v);
    ASSERT_TRUE(inv);
    EXPECT_EQ(h->evaluate(h->alphabet().inverse_word(w)), b.key(*inv));
  }
}

TEST(Growth, Examples) {
  EXPECT_EQ(growth_table(*catalog_group("zd:2"), 3), (std::vector<std::size_t>{1, 5, 13, 25}));
  EXPECT_EQ(growth_table(*catalog_group("free:2"), 2), (std::vector<std::size_t>{1, 5, 17}));
  EXPECT_EQ(growth_table(*catalog_group("zd:1"), 4), (std::vector<std::size_t>{1, 3, 5, 7, 9}));
}

TEST(Growth, MatchesBallSizesAndClosedForms) {
  for (const char* spec : {"zd:2", "zd:3", "free:2", "heis", "lamplighter", "bs:1:2"}) {
    auto m = catalog_group(spec);
    const auto table = growth_table(*m, 5);
    for (int r = 0; r <= 5; ++r) {
      EXPECT_EQ(table[r], cayley_ball(*m, r).graph.vertex_count()) << spec << " r=" << r;
      if (r > 0) EXPECT_GE(table[r], table[r - 1]);
    }
  }
  const auto z2 = growth_table(*catalog_group("zd:2"), 10);
  const auto f2 = growth_table(*catalog_group("free:2"), 8);
  std::size_t p = 1;
  for (std::size_t r = 0; r <= 10; ++r) EXPECT_EQ(z2[r], 2 * r * r + 2 * r + 1);
  for (std::size_t r = 0; r <= 8; ++r, p *= 3) EXPECT_EQ(f2[r], 2 * p - 1);
}

TEST(Kappa, Examples) {
  auto z = catalog_group("zd:2");
  EXPECT_EQ(kappa(*z, 13), 2);
  EXPECT_EQ(kappa(*z, 24), 2);
  EXPECT_EQ(kappa(*z, 25), 3);
  EXPECT_EQ(kappa(*z, 1), 0);
  EXPECT_EQ(kappa(*catalog_group("free:2"), 17), 2);
  EXPECT_EQ(kappa(*catalog_group("free:2"), 16), 1);
  EXPECT_THROW(kappa(*z, 0), ArgumentError);
}
