#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "pacert/spectral.hpp"
#include "pacert/spine_model.hpp"

using namespace pacert;

namespace {

std::vector<std::int64_t> special_row_sums(const TransitionMatrix& p, const SpineMap& map) {
  std::vector<std::int64_t> out;
  for (const EdgeId& e : map.special_edges()) out.push_back(p.row_sum(map.index_of(e)));
  std::sort(out.begin(), out.end());
  return out;
}

// Faddeev-LeVerrier over the rationals: coefficients of det(xI - A), highest degree first.
std::vector<Rational> characteristic_polynomial(const std::vector<std::vector<std::int64_t>>& a) {
  const std::size_t n = a.size();
  using M = std::vector<std::vector<Rational>>;
  auto mul = [n](const M& x, const M& y) {
    M z(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (x[i][k] != 0)
          for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  M A(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = a[i][j];
  std::vector<Rational> c(n + 1);
  c[0] = 1;
  M mk(n, std::vector<Rational>(n, Rational(0)));  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    M next = mul(A, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[k - 1];
    mk = next;
    M am = mul(A, mk);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    c[k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

}  // namespace

TEST(SpineMap, ImageOfPrimeOneHasThirteenLetters) {
  const SpineMap map = build_f3_spine_map(8, 8);
  using E = EdgeId;
  const EdgeWord expected{E::ep(4), E::ep(4), E::ep(3), E::ep(3), E::ep(2), E::ep(2), E::ep(1),
                          E::e(1),  E::e(2),  E::e(2),  E::e(3),  E::e(3),  E::e(4)};
  EXPECT_EQ(map.image(E::ep(1)), expected);
  EXPECT_EQ(map.image(E::ep(1)).size(), 13u);
}

TEST(SpineMap, PlainShift) {
  const SpineMap map = build_f3_spine_map(8, 8);
  EXPECT_EQ(map.image(EdgeId::e(1)), EdgeWord{EdgeId::e(4)});
  EXPECT_EQ(map.image(EdgeId::e(5)), EdgeWord{EdgeId::e(8)});
}

TEST(SpineMap, PrimeShiftWrapsToPrimeOne) {
  const SpineMap map = build_f3_spine_map(8, 8);
  EXPECT_EQ(map.image(EdgeId::ep(6)), EdgeWord{EdgeId::ep(1)});
  EXPECT_EQ(map.image(EdgeId::ep(2)), EdgeWord{EdgeId::ep(5)});
}

TEST(SpineMap, RejectsSmallParameters) {
  EXPECT_THROW(build_f3_spine_map(6, 8), std::domain_error);
  EXPECT_THROW(build_f3_spine_map(8, 6), std::domain_error);
  EXPECT_NO_THROW(build_f3_spine_map(7, 7));
}

TEST(SpineMap, RejectsIncompleteImages) {
  std::map<EdgeId, EdgeWord> images;
  images[EdgeId::e(1)] = {EdgeId::e(1)};
  EXPECT_THROW(SpineMap(1, 1, images), std::invalid_argument);
}

TEST(EdgeLabels, RoundTrip) {
  EXPECT_EQ(EdgeId::e(3).label(), "e3");
  EXPECT_EQ(EdgeId::ep(12).label(), "ep12");
  EXPECT_EQ(EdgeId::parse("ep12"), EdgeId::ep(12));
  EXPECT_EQ(EdgeId::parse("e7"), EdgeId::e(7));
  EXPECT_THROW(EdgeId::parse("x1"), std::invalid_argument);
}

TEST(TransitionMatrix, SpecExamples) {
  const SpineMap map = build_f3_spine_map(8, 8);
  const TransitionMatrix p = transition_matrix(map);
  const auto idx = [&](EdgeId e) { return map.index_of(e); };
  EXPECT_EQ(p.dim(), 16u);
  EXPECT_EQ(p.entry(idx(EdgeId::ep(1)), idx(EdgeId::ep(4))), 2);
  EXPECT_EQ(p.entry(idx(EdgeId::ep(1)), idx(EdgeId::ep(1))), 1);
  EXPECT_EQ(p.total(), 58);
}

TEST(TransitionMatrix, InvariantsOverGrid) {
  for (int n = 7; n <= 25; n += 3) {
    for (int m = 7; m <= 22; m += 5) {
      const SpineMap map = build_f3_spine_map(n, m);
      const TransitionMatrix p = transition_matrix(map);
      EXPECT_EQ(p.total(), n + m + 42) << n << "," << m;
      EXPECT_EQ(special_row_sums(p, map), (std::vector<std::int64_t>{3, 5, 7, 9, 11, 13}));
      std::size_t heavy = 0;
      for (std::size_t r = 0; r < p.dim(); ++r) {
        EXPECT_EQ(static_cast<std::size_t>(p.row_sum(r)), map.image(map.edges()[r]).size());
        if (p.row_sum(r) > 1) ++heavy;
        const bool loop = map.edges()[r] == EdgeId::ep(1);
        EXPECT_EQ(p.entry(r, r), loop ? 1 : 0) << p.label(r);
      }
      EXPECT_EQ(heavy, 6u);
      EXPECT_TRUE(directed_graph(p).strongly_connected()) << n << "," << m;
    }
  }
}

TEST(TransitionMatrix, RowSumsOfCubeMatchDfsOracle) {
  const TransitionMatrix p = transition_matrix(build_f3_spine_map(8, 8));
  // DFS over arcs with multiplicity
  std::function<std::int64_t(std::size_t, int)> walks = [&](std::size_t v, int l) -> std::int64_t {
    if (l == 0) return 1;
    std::int64_t s = 0;
    for (const auto& e : p.row(v)) s += e.count * walks(e.col, l - 1);
    return s;
  };
  const std::vector<std::int64_t> frozen{7, 11, 15, 19, 23, 27, 31, 43, 55, 9, 13, 17, 21, 25, 29, 35};
  for (std::size_t v = 0; v < p.dim(); ++v) EXPECT_EQ(walks(v, 3), frozen[v]) << p.label(v);
}

TEST(TransitionMatrix, CharacteristicPolynomialP12) {
  const TransitionMatrix p = transition_matrix(build_f3_spine_map(12, 12));
  const std::vector<long> frozen{1, -1, 0, 0, -12, 0, 0, 0, 48, 0, 0, 0, -76, 0, 0, 0, 48, 0, 0, 0, -12, 0, 0, -1, 1};
  const auto c = characteristic_polynomial(p.dense());
  ASSERT_EQ(c.size(), frozen.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i], Rational(frozen[i])) << i;
}

TEST(TransitionMatrix, WithRowAndPermuted) {
  const TransitionMatrix t = TransitionMatrix::from_dense({{0, 1}, {2, 0}});
  const TransitionMatrix u = t.with_row(0, {{1, 3}, {1, 2}, {0, 0}});
  EXPECT_EQ(u.entry(0, 1), 5);
  EXPECT_EQ(u.row(0).size(), 1u);
  const TransitionMatrix s = t.permuted({1, 0});
  EXPECT_EQ(s.entry(1, 0), 1);
  EXPECT_EQ(s.entry(0, 1), 2);
  EXPECT_EQ(s.label(0), "V2");
}

TEST(BlockDecomposition, PermutationBlock) {
  const BlockDecomposition bd = block_decomposition(8, 8);
  EXPECT_TRUE(bd.permutation_is_bijective());
  const TransitionMatrix a = bd.permutation_matrix();
  EXPECT_EQ(a.dim(), 32u);
  for (std::size_t r = 0; r < a.dim(); ++r) EXPECT_EQ(a.row_sum(r), 1);
  std::vector<std::int64_t> col(a.dim(), 0);
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (const auto& e : a.row(r)) col[e.col] += e.count;
  for (auto c : col) EXPECT_EQ(c, 1);
  // spectral radius of a permutation is 1: every row sum of every power is 1
  EXPECT_EQ(pf_upper_bound(a, 5), Rational(1));
  EXPECT_TRUE(perron_block_dominates(bd));
  EXPECT_EQ(bd.permutation_labels.front(), "a1");
  EXPECT_EQ(bd.permutation_labels.back(), "bp8");
}

TEST(DirectedGraph, Counts) {
  const DirectedMultigraph g = directed_graph(transition_matrix(build_f3_spine_map(8, 8)));
  EXPECT_EQ(g.vertex_count(), 16u);
  EXPECT_EQ(g.arc_count(), 58);
  EXPECT_TRUE(g.strongly_connected());
  const DirectedMultigraph zero = directed_graph(TransitionMatrix::from_dense({{0, 0}, {0, 0}}));
  EXPECT_EQ(zero.arc_count(), 0);
  EXPECT_FALSE(zero.strongly_connected());
}

TEST(DirectedGraph, ComponentsOfReducibleMatrix) {
  const DirectedMultigraph g = directed_graph(TransitionMatrix::from_dense({{1, 1, 0}, {0, 1, 1}, {0, 1, 0}}));
  std::size_t count = 0;
  const auto comp = g.components(&count);
  EXPECT_EQ(count, 2u);
  EXPECT_NE(comp[0], comp[1]);
  EXPECT_EQ(comp[1], comp[2]);
}
