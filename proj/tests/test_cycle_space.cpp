#include "oracles.hpp"

#include <graphseq/cycle_space.hpp>
#include <graphseq/generators.hpp>

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace graphseq;

namespace {

std::vector<int> dense(const Graph& g, const CycleVector& c) {
  std::vector<int> v(g.edge_count(), 0);
  for (auto [e, s] : c.entries) v[e] = s;
  return v;
}

// sign-normalized so a cycle and its reverse compare equal
std::vector<int> normalized(std::vector<int> v) {
  for (int x : v)
    if (x != 0) {
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  return v;
}

std::vector<CycleVector> collect(const Graph& g, std::uint32_t q) { return short_cycles(g, q); }

// every closed walk a-b-c-d-a on four distinct vertices, deduplicated
std::vector<std::vector<int>> four_cycles(const Graph& g) {
  std::set<std::vector<int>> out;
  const auto n = g.vertex_count();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c)
        for (Vertex d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          const Vertex path[5] = {a, b, c, d, a};
          std::vector<int> v(g.edge_count(), 0);
          bool ok = true;
          for (int i = 0; i < 4 && ok; ++i) {
            const auto e = g.find_edge(path[i], path[i + 1]);
            if (!e) ok = false;
            else v[*e] = g.edge(*e).tail == path[i] ? 1 : -1;
          }
          if (ok) out.insert(normalized(v));
        }
  return {out.begin(), out.end()};
}

// unit squares of the n x n torus built by oracle::torus
std::vector<std::vector<int>> plaquettes(const Graph& g, std::size_t n) {
  std::vector<std::vector<int>> out;
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y) {
      auto id = [n](std::size_t i, std::size_t j) { return static_cast<Vertex>((i % n) * n + j % n); };
      const Vertex path[5] = {id(x, y), id(x + 1, y), id(x + 1, y + 1), id(x, y + 1), id(x, y)};
      std::vector<int> v(g.edge_count(), 0);
      for (int i = 0; i < 4; ++i) {
        const auto e = *g.find_edge(path[i], path[i + 1]);
        v[e] = g.edge(e).tail == path[i] ? 1 : -1;
      }
      out.push_back(v);
    }
  return out;
}

}  // namespace

TEST(EnumerateShortCycles, Examples) {
  EXPECT_TRUE(collect(random_tree(20, 4), 10).empty());
  const auto tri = collect(complete_graph(3), 3);
  ASSERT_EQ(tri.size(), 1u);
  EXPECT_EQ(tri[0].length, 3u);
  const auto k4 = collect(complete_graph(4), 4);
  EXPECT_EQ(k4.size(), 7u);
  EXPECT_EQ(std::count_if(k4.begin(), k4.end(), [](const auto& c) { return c.length == 3; }), 4);
  EXPECT_TRUE(collect(complete_graph(4), 2).empty());
}

TEST(EnumerateShortCycles, CanonicalFormAndOrder) {
  const auto g = petersen_graph();
  const auto cycles = collect(g, 9);
  std::uint32_t last = 0;
  for (const auto& c : cycles) {
    EXPECT_GE(c.length, last);
    last = c.length;
    ASSERT_EQ(c.vertices.size(), c.length);
    EXPECT_EQ(*std::min_element(c.vertices.begin(), c.vertices.end()), c.vertices.front());
    EXPECT_LT(c.vertices[1], c.vertices.back());
    EXPECT_EQ(c.entries.size(), c.length);
    for (auto b : chain_boundary(g, c.entries)) EXPECT_EQ(b, 0);
  }
}

TEST(EnumerateShortCycles, MatchesSubsetOracle) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = 5 + trial % 6;
    const auto g = oracle::random_graph(n, 4, 0.45, rng);
    if (g.edge_count() > 20) continue;
    for (std::uint32_t q : {4u, 6u, static_cast<std::uint32_t>(n)}) {
      std::multiset<std::vector<int>> mine, theirs;
      for (const auto& c : collect(g, q)) mine.insert(normalized(dense(g, c)));
      for (const auto& v : oracle::cycles_by_subsets(g, q)) theirs.insert(normalized(v));
      EXPECT_EQ(mine, theirs) << "n=" << n << " q=" << q;
    }
  }
}

TEST(EnumerateShortCycles, VisitorCanStop) {
  std::size_t seen = 0;
  const auto st = enumerate_short_cycles(complete_graph(6), 6, [&](const CycleVector&) { return ++seen < 3; });
  EXPECT_EQ(st, EnumerationStatus::StoppedByVisitor);
  EXPECT_EQ(seen, 3u);
}

TEST(CycleRank, FullSpaceIsCyclomatic) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_graph(9, 4, 0.4, rng);
    for (const auto& f : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3)})
      EXPECT_EQ(cycle_rank(g, 9, f), g.edge_count() - g.vertex_count() + 1);
  }
  const auto two = build_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  EXPECT_EQ(cyclomatic_number(two), 2u);
  EXPECT_EQ(cycle_rank(two, 6, FieldSpec::prime(5)), 2u);
  EXPECT_EQ(cyclomatic_number(random_tree(10, 1)), 0u);
  EXPECT_EQ(cyclomatic_number(complete_graph(3)), 1u);
}

TEST(CycleRank, LargeGirthGivesZero) {
  const auto g = random_regular_girth(120, 3, 7, 5);
  EXPECT_EQ(cycle_rank(g, 6, FieldSpec::rationals()), 0u);
  EXPECT_EQ(s_q(g, 6, FieldSpec::prime(2)), make_rational(1, 2));
}

TEST(CycleRank, SmallTorusHasNonContractibleFourCycles) {
  // On (Z/4)^2 the 16 unit squares span 15 dimensions, but the 8 straight
  // loops around the torus are also 4-cycles and lift the span to 17.
  const auto g = oracle::torus(4);
  const auto squares = plaquettes(g, 4);
  EXPECT_EQ(oracle::rank_q(squares), 15u);
  const auto all = four_cycles(g);
  EXPECT_EQ(all.size(), 24u);
  EXPECT_EQ(oracle::rank_q(all), 17u);
  EXPECT_EQ(cycle_rank(g, 4, FieldSpec::rationals()), 17u);
  EXPECT_EQ(s_q(g, 4, FieldSpec::rationals()), make_rational(-1, 16));
}

TEST(CycleRank, TorusFourCyclesAreSquaresFromFive) {
  for (std::size_t n : {5, 6, 7}) {
    const auto g = oracle::torus(n);
    const auto all = four_cycles(g);
    EXPECT_EQ(all.size(), n * n);
    EXPECT_EQ(oracle::rank_q(plaquettes(g, n)), n * n - 1);
    EXPECT_EQ(oracle::rank_p(plaquettes(g, n), 2), n * n - 1);
  }
  for (std::size_t n : {5, 6, 8, 11}) {
    const auto g = oracle::torus(n);
    const auto expected = make_rational(1, static_cast<std::int64_t>(n * n));
    EXPECT_EQ(s_q(g, 4, FieldSpec::rationals()), expected);
    EXPECT_EQ(s_q(g, 4, FieldSpec::prime(2)), expected);
    EXPECT_EQ(s_q(g, 4, FieldSpec::prime(3)), expected);
  }
}

TEST(SQ, Triangle) { EXPECT_EQ(s_q(complete_graph(3), 3, FieldSpec::rationals()), make_rational(-1, 3)); }

TEST(CycleRank, MonotoneInQAndFieldComparison) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = oracle::random_graph(8 + trial % 5, 4, 0.35, rng);
    std::size_t prev_q = 0;
    Rational prev_s = 1000;
    for (std::uint32_t q = 3; q <= 8; ++q) {
      const auto rq = cycle_rank(g, q, FieldSpec::rationals());
      EXPECT_GE(rq, prev_q);
      prev_q = rq;
      const auto s = s_q_from_rank(g, rq);
      EXPECT_LE(s, prev_s);
      prev_s = s;
      for (std::uint32_t p : {2u, 3u, 5u}) EXPECT_LE(cycle_rank(g, q, FieldSpec::prime(p)), rq);
    }
  }
}

TEST(Accumulator, MatchesDenseEliminationOnIntegerChains) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t cols = 8, rows = 3 + trial % 9;
    std::vector<std::vector<int>> m(rows, std::vector<int>(cols));
    for (auto& r : m)
      for (auto& x : r) x = trial % 3 == 0 ? coef(rng) * coef(rng) : coef(rng);
    for (const auto& field : {FieldSpec::rationals(), FieldSpec::prime(2), FieldSpec::prime(3), FieldSpec::prime(7)}) {
      std::vector<std::vector<std::pair<EdgeId, int>>> chains;
      for (const auto& r : m) {
        std::vector<std::pair<EdgeId, int>> c;
        for (std::size_t j = 0; j < cols; ++j)
          if (r[j]) c.emplace_back(static_cast<EdgeId>(j), r[j]);
        chains.push_back(c);
      }
      const auto g = complete_graph(5);  // 10 columns, cap 6
      const auto expected = field.kind == FieldSpec::Kind::Rationals ? oracle::rank_q(m) : oracle::rank_p(m, field.p);
      EXPECT_EQ(chain_rank(g, chains, field), std::min<std::size_t>(expected, cyclomatic_number(g)));
    }
  }
}

TEST(CycleRank, ExpiredDeadlineTimesOut) {
  const auto g = oracle::torus(10);
  Deadline d{std::chrono::steady_clock::now() - std::chrono::seconds(1)};
  const auto r = cycle_rank_detail(g, 8, FieldSpec::rationals(), d);
  EXPECT_FALSE(r.complete());
}

TEST(FieldSpec, Parse) {
  EXPECT_EQ(FieldSpec::parse("Q"), FieldSpec::rationals());
  EXPECT_EQ(FieldSpec::parse("F13"), FieldSpec::prime(13));
  EXPECT_EQ(FieldSpec::parse("F13").name(), "F13");
  EXPECT_THROW(FieldSpec::parse("F4"), std::invalid_argument);
  EXPECT_THROW(FieldSpec::parse("R"), std::invalid_argument);
  EXPECT_THROW(FieldSpec::prime(1), std::invalid_argument);
}
