#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "crown/crown_graphs.hpp"
#include "crown/graph.hpp"
#include "crown/io.hpp"
#include "support.hpp"

using namespace crown;

namespace {

using LabelEdge = std::pair<std::string, std::string>;

std::string vertex(int j, char v) { return "x" + std::to_string(j) + "^" + v; }

/// The strip's edge schema written directly on labels.
std::set<LabelEdge> schema_edges(int n) {
  std::set<LabelEdge> out;
  auto add = [&](std::string a, std::string b) { out.insert(std::minmax(a, b)); };
  for (int i = 1; i <= n; ++i)
    for (char v : {'+', '-'}) {
      add(vertex(2 * i - 1, v), vertex(2 * i, v));
      add(vertex(2 * i, v), vertex(2 * i + 1, v));
      add(vertex(2 * i - 1, v), vertex(2 * i, '0'));
      add(vertex(2 * i, '0'), vertex(2 * i + 1, v));
    }
  return out;
}

std::set<LabelEdge> label_edges(const Graph& g) {
  std::set<LabelEdge> out;
  for (auto [x, y] : g.edges()) out.insert(std::minmax(g.label(x), g.label(y)));
  return out;
}

/// The crown's edges: rename the last column into the first, twisted by s.
std::set<LabelEdge> crown_edges(int n, char s) {
  const std::string last = "x" + std::to_string(2 * n + 1) + "^";
  auto rename = [&](const std::string& l) {
    if (l.rfind(last, 0) != 0) return l;
    const char v = l.back();
    const char sv = s == '+' ? v : (v == '+' ? '-' : '+');
    return vertex(1, sv);
  };
  std::set<LabelEdge> out;
  for (const auto& [a, b] : schema_edges(n)) out.insert(std::minmax(rename(a), rename(b)));
  return out;
}

bool brute_force_isomorphic(const Graph& g, const Graph& h) {
  if (g.size() != h.size()) return false;
  std::vector<std::size_t> p(g.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  do {
    bool ok = true;
    for (std::size_t x = 0; x < g.size() && ok; ++x)
      for (std::size_t y = 0; y < g.size() && ok; ++y) ok = g.related(x, y) == h.related(p[x], p[y]);
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool is_isomorphism(const Graph& g, const Graph& h, const std::vector<std::size_t>& m) {
  if (m.size() != g.size() || std::set<std::size_t>(m.begin(), m.end()).size() != m.size()) return false;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      if (g.related(x, y) != h.related(m[x], m[y])) return false;
  return true;
}

bool admissible_by_definition(const Graph& g) {
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y) {
      if (x == y) continue;
      bool found = false;
      for (std::size_t z = 0; z < g.size() && !found; ++z) found = !g.related(x, z) && g.related(y, z);
      if (!found) return false;
    }
  return true;
}

}  // namespace

TEST(GraphTest, RelationIsReflexiveAndSymmetric) {
  const auto g = Graph::make({"a", "b", "c"}, {{"a", "b"}});
  EXPECT_TRUE(g.related(0, 0));
  EXPECT_TRUE(g.related(0, 1));
  EXPECT_TRUE(g.related(1, 0));
  EXPECT_FALSE(g.related(0, 2));
  EXPECT_EQ(g.edge_count(), 1U);
  EXPECT_EQ(g.relation_size(), 5U);
  EXPECT_THROW(Graph::make({"a", "a"}, {}), Error);
  EXPECT_THROW(Graph::make({"a"}, {{"a", "a"}}), Error);
  EXPECT_THROW(Graph::make({"a"}, {{"a", "z"}}), Error);
}

TEST(GraphTest, MorphismChecksTheRelation) {
  auto path = share(Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}));
  auto edge = share(Graph::make({"u", "v"}, {{"u", "v"}}));
  auto two = share(Graph::make({"u", "v"}, {}));
  EXPECT_NO_THROW(GraphMorphism::make({0, 1, 0}, path, edge));
  EXPECT_NO_THROW(GraphMorphism::make({0, 0, 0}, path, two));  // collapsing is allowed
  try {
    GraphMorphism::make({0, 1, 0}, path, two);
    FAIL() << "expected NotAMorphism";
  } catch (const NotAMorphism& e) {
    EXPECT_EQ(e.witness(), (std::pair<std::string, std::string>{"a", "b"}));
  }
  EXPECT_THROW(GraphMorphism::make({0, 1}, path, edge), Error);
  EXPECT_THROW(GraphMorphism::make({0, 1, 5}, path, edge), Error);
}

TEST(GraphTest, CoverNeedsVerticesAndPairs) {
  auto tri = share(Graph::make({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  auto ab = share(Graph::make({"a", "b"}, {{"a", "b"}}));
  auto bc = share(Graph::make({"b", "c"}, {{"b", "c"}}));
  auto ac = share(Graph::make({"a", "c"}, {{"a", "c"}}));
  const auto fab = GraphMorphism::make({0, 1}, ab, tri);
  const auto fbc = GraphMorphism::make({1, 2}, bc, tri);
  const auto fac = GraphMorphism::make({0, 2}, ac, tri);
  const std::vector<GraphMorphism> two = {fab, fbc}, three = {fab, fbc, fac};
  EXPECT_FALSE(is_cover(two));  // vertices covered, edge ac missing
  EXPECT_TRUE(is_cover(three));
}

TEST(GraphTest, AdmissibilityAgreesWithDefinitionOnRandomGraphs) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const auto g = oracle::random_graph(rng, 2 + rng() % 6, 0.2 + 0.1 * static_cast<double>(t % 6));
    EXPECT_EQ(is_admissible(g), admissible_by_definition(g));
    // Triangle-free without pendant or isolated vertices implies admissible.
    if (is_triangle_free(g) && min_valency(g) >= 2) {
      EXPECT_TRUE(is_admissible(g));
    }
  }
}

TEST(GraphTest, IsomorphismAgreesWithBruteForce) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + rng() % 6;
    const auto g = oracle::random_graph(rng, n, 0.4);
    const auto h = oracle::random_graph(rng, n, 0.4);
    const auto m = find_isomorphism(g, h);
    EXPECT_EQ(m.has_value(), brute_force_isomorphic(g, h));
    if (m) {
      EXPECT_TRUE(is_isomorphism(g, h, *m));
    }
  }
}

TEST(GraphTest, RelabelledGraphsAreIsomorphic) {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng() % 12;
    const auto g = oracle::random_graph(rng, n, 0.3);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto h = relabel(g, perm);
    const auto m = find_isomorphism(g, h);
    ASSERT_TRUE(m.has_value());
    EXPECT_TRUE(is_isomorphism(g, h, *m));
  }
  const auto big = oracle::random_graph(rng, 70, 0.1);
  EXPECT_THROW(find_isomorphism(big, big), CapExceeded);
}

TEST(GraphTest, JsonRoundTrip) {
  const auto g = build_B(2);
  const auto j = to_json(g);
  EXPECT_EQ(j["vertices"].size(), 12U);
  EXPECT_EQ(j["edges"].size(), 16U);
  EXPECT_EQ(graph_from_json(j), g);
}

TEST(StripTest, SizesByHandCount) {
  EXPECT_EQ(build_B(1).size(), 7U);
  EXPECT_EQ(build_B(1).edge_count(), 8U);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(build_B(n).size(), static_cast<std::size_t>(5 * n + 2));
    EXPECT_EQ(build_B(n).edge_count(), static_cast<std::size_t>(8 * n));
  }
  EXPECT_THROW(build_B(0), Error);
}

TEST(StripTest, EdgesMatchTheSchema) {
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(label_edges(build_B(n)), schema_edges(n));
}

TEST(StripTest, VertexOrderAndLabels) {
  const auto b = build_B(1);
  const std::vector<std::string> expected = {"x1^+", "x1^-", "x2^+", "x2^-", "x2^0", "x3^+", "x3^-"};
  EXPECT_EQ(b.labels(), expected);
  EXPECT_EQ(strip_index(3, TriSign::Minus), 6U);
  EXPECT_THROW(strip_index(1, TriSign::Zero), Error);
}

TEST(StripTest, EveryEdgeLiesInOnePiece) {
  for (int n = 1; n <= 4; ++n) {
    const auto b = build_B(n);
    for (auto [x, y] : b.edges()) {
      const int jx = std::stoi(b.label(x).substr(1)), jy = std::stoi(b.label(y).substr(1));
      EXPECT_EQ(std::abs(jx - jy), 1);
      const int even = std::max(jx, jy) % 2 == 0 ? std::max(jx, jy) : std::min(jx, jy);
      EXPECT_EQ(even % 2, 0);
    }
  }
}

// (a) every word acts by an endomorphism, and the action is a monoid action.
TEST(StripSchema, WordsActByEndomorphisms) {
  for (int n = 1; n <= 3; ++n) {
    const CrownFamily fam(n);
    const auto words = wn_enumerate(n);
    std::vector<GraphMorphism> maps;
    for (const auto& w : words) ASSERT_NO_THROW(maps.push_back(fam.act_on_strip(w))) << w.to_string();
    EXPECT_EQ(fam.act_on_strip(Word::identity(n)), GraphMorphism::identity(fam.strip()));
    for (std::size_t a = 0; a < words.size(); ++a)
      for (std::size_t b = 0; b < words.size(); ++b)
        EXPECT_EQ(fam.act_on_strip(words[a] * words[b]), compose(maps[a], maps[b]));
  }
  const CrownFamily fam(2);
  EXPECT_THROW(fam.act_on_strip(Word::identity(3)), LevelMismatch);
}

TEST(StripSchema, ActionMovesSignsColumnwise) {
  const CrownFamily fam(2);
  const Graph& b = *fam.strip();
  const auto m = fam.act_on_strip(Word::parse("-0+0-"));
  EXPECT_EQ(b.label(m(*b.index_of("x1^+"))), "x1^-");
  EXPECT_EQ(b.label(m(*b.index_of("x2^-"))), "x2^0");
  EXPECT_EQ(b.label(m(*b.index_of("x2^0"))), "x2^0");
  EXPECT_EQ(b.label(m(*b.index_of("x3^-"))), "x3^-");
  EXPECT_EQ(b.label(m(*b.index_of("x5^+"))), "x5^-");
}

// (b) the pieces cover the strip.
TEST(StripSchema, PiecesCover) {
  for (int n = 1; n <= 5; ++n) {
    const CrownFamily fam(n);
    const auto inc = fam.piece_inclusions();
    EXPECT_TRUE(is_cover(inc));
    for (int i = 1; i <= n; ++i) {
      EXPECT_EQ(fam.piece(i).graph->size(), 7U);
      EXPECT_EQ(fam.piece(i).graph->edge_count(), 8U);
    }
    if (n >= 2) {
      const std::vector<GraphMorphism> missing(inc.begin() + 1, inc.end());
      EXPECT_FALSE(is_cover(missing));
    }
  }
}

// (c) g_i is the identity on F_{i'} for i' != i, and not on F_i.
TEST(StripSchema, GeneratorsActTriviallyOffTheirPiece) {
  for (int n = 2; n <= 5; ++n) {
    const CrownFamily fam(n);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const bool trivial = fam.act_on_piece(gen_g(n, i), j) == GraphMorphism::identity(fam.piece(j).graph);
        EXPECT_EQ(trivial, i != j) << "g_" << i << " on F_" << j;
      }
  }
}

TEST(CrownTest, SizesAndEdges) {
  for (int n = 2; n <= 6; ++n)
    for (Sign s : kSigns) {
      const auto q = build_C(n, s);
      EXPECT_EQ(q.graph->size(), static_cast<std::size_t>(5 * n));
      EXPECT_EQ(q.graph->edge_count(), static_cast<std::size_t>(8 * n));
      EXPECT_EQ(label_edges(*q.graph), crown_edges(n, to_char(to_tri(s))));
    }
  EXPECT_EQ(build_C(2, Sign::Plus).graph->size(), 10U);
  EXPECT_EQ(build_C(2, Sign::Plus).graph->edge_count(), 16U);
  EXPECT_THROW(build_C(1, Sign::Plus), Error);
}

TEST(CrownTest, ProjectionIsASurjectiveCover) {
  for (int n = 2; n <= 4; ++n)
    for (Sign s : kSigns) {
      const std::vector<GraphMorphism> f = {build_C(n, s).projection};
      EXPECT_TRUE(is_cover(f));
    }
}

// (d) triangle-free, minimum valency >= 2, admissible.
TEST(CrownSchema, Admissible) {
  for (int n = 2; n <= 6; ++n)
    for (Sign s : kSigns) {
      const auto quotient = build_C(n, s);
      const Graph& c = *quotient.graph;
      EXPECT_TRUE(is_triangle_free(c));
      EXPECT_GE(min_valency(c), 2U);
      EXPECT_TRUE(is_admissible(c));
      EXPECT_TRUE(admissible_by_definition(c));
    }
}

// (e) two valency-2 cycles in the simple crown, one in the Moebius crown.
TEST(CrownSchema, Valency2Cycles) {
  for (int n = 2; n <= 6; ++n) {
    const auto plus = valency2_cycle_count(*build_C(n, Sign::Plus).graph);
    const auto minus = valency2_cycle_count(*build_C(n, Sign::Minus).graph);
    EXPECT_EQ(plus.count(), 2U) << n;
    EXPECT_EQ(minus.count(), 1U) << n;
    EXPECT_TRUE(plus.all_cycles());
    EXPECT_TRUE(minus.all_cycles());
    EXPECT_EQ(minus.cycle_lengths(), std::vector<std::size_t>{static_cast<std::size_t>(4 * n)});
    EXPECT_EQ(plus.cycle_lengths(),
              (std::vector<std::size_t>{static_cast<std::size_t>(2 * n), static_cast<std::size_t>(2 * n)}));
  }
}

TEST(CrownTest, SimpleAndMoebiusCrownsAreNotIsomorphic) {
  for (int n = 2; n <= 6; ++n)
    EXPECT_FALSE(graphs_isomorphic(*build_C(n, Sign::Plus).graph, *build_C(n, Sign::Minus).graph)) << n;
  EXPECT_TRUE(brute_force_isomorphic(*build_C(2, Sign::Plus).graph, *build_C(2, Sign::Plus).graph));
}

TEST(CrownTest, WordsDescendAlongTheProjection) {
  for (int n = 2; n <= 3; ++n) {
    const CrownFamily fam(n);
    for (const auto& w : wn_enumerate(n))
      for (Sign s : kSigns) {
        const Sign t = act_on_U(w, s);
        const auto c = fam.act_on_crown(w, s);
        EXPECT_EQ(compose(fam.crown(t).projection, fam.act_on_strip(w)), compose(c, fam.crown(s).projection));
      }
  }
}

TEST(CrownTest, WrongTargetDoesNotDescend) {
  const CrownFamily fam(2);
  EXPECT_THROW(fam.descend(gen_h(2, 1), Sign::Plus, Sign::Plus), IllDefinedQuotient);
  EXPECT_NO_THROW(fam.descend(gen_h(2, 1), Sign::Plus, Sign::Minus));
  EXPECT_THROW(fam.descend(gen_g(2, 1), Sign::Minus, Sign::Plus), IllDefinedQuotient);
}
