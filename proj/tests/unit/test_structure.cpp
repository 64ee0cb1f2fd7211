#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "orthant/structure.hpp"
#include "support/oracles.hpp"
#include "support/shapes.hpp"

using namespace orthant;
using H = Hedgehog<Rational>;
using shapes::P;

namespace {

bool positive(const std::vector<Vec<Rational>>& needles) {
  return decide_positive(build_bang_system(Mat<Rational>::from_rows(needles))).positive();
}

}  // namespace

TEST(Structure, BasicOrthantKnownCases) {
  EXPECT_TRUE(is_basic_orthant(shapes::quadrant()));
  EXPECT_TRUE(is_basic_orthant(shapes::acute_triangle()));
  EXPECT_TRUE(is_basic_orthant(shapes::square()));
  EXPECT_FALSE(is_basic_orthant(shapes::right_triangle()));
  // Orthant but with more needles than rank.
  EXPECT_FALSE(is_basic_orthant(H::from_needles(2, {{1, 0}, {0, 1}, {2, 1}, {-1, 2}})));
  EXPECT_FALSE(is_basic_orthant(endgo<Rational>(2)));
}

TEST(Structure, DecompositionKnownCases) {
  const auto b1 = find_basic_decomposition(H::from_needles(2, {{1, 0}, {0, 1}, {2, 1}, {-1, 2}}));
  ASSERT_TRUE(b1);
  EXPECT_EQ(b1->subsets, (std::vector<std::vector<std::size_t>>{{0, 1}, {2, 3}}));
  EXPECT_EQ(b1->union_rank, 3u);

  EXPECT_FALSE(find_basic_decomposition(shapes::right_triangle()));

  std::vector<Vec<Real>> rows;
  for (int k = 0; k < 6; ++k) {
    const double a = std::numbers::pi * k / 3;
    rows.push_back({std::cos(a), std::sin(a)});
  }
  const auto hex = find_basic_decomposition(Polyhedron<Real>::from_rows(rows, Vec<Real>(6, Real(-1))));
  ASSERT_TRUE(hex);
  EXPECT_EQ(hex->subsets, (std::vector<std::vector<std::size_t>>{{0, 1, 2}}));
}

TEST(Structure, DecompositionGuard) {
  std::vector<Vec<Rational>> many;
  for (int k = 1; k <= 13; ++k) many.push_back({Rational(1), Rational(k)});
  EXPECT_THROW(find_basic_decomposition(H::from_needles(2, many)), TooManyFacets);
}

TEST(Structure, DecompositionExistsExactlyForOrthantHedgehogs) {
  oracle::Random rng(51);
  int found = 0, missing = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 3));
    const auto m = static_cast<std::size_t>(rng.integer(long(n), n == 2 ? 7 : 6));
    const H h = H::from_needles(n, shapes::random_needles(rng, n, m, 2));
    if (rank(Mat<Rational>::from_rows(h.needles)) < n) continue;
    const auto d = find_basic_decomposition(h);
    EXPECT_EQ(d.has_value(), positive(h.needles)) << "trial " << trial;
    if (!d) {
      ++missing;
      continue;
    }
    ++found;
    // Each subset is basic orthant and its witness solves its own system.
    const auto full = build_bang_system(Mat<Rational>::from_rows(h.needles));
    for (std::size_t s = 0; s < d->subsets.size(); ++s) {
      const auto sub = restrict_columns(full, d->subsets[s]);
      EXPECT_EQ(poly_rank(sub), d->subsets[s].size());
      EXPECT_EQ(multiply(sub.q, d->witnesses[s]), sub.c);
      for (const auto& x : d->witnesses[s]) EXPECT_GT(x, 0);
    }
    EXPECT_EQ(d->union_rank, poly_rank(full));
  }
  EXPECT_GT(found, 10);
  EXPECT_GT(missing, 10);
}

TEST(Structure, SplitFullTemplate) {
  const auto s = build_bang_system(endgo<Rational>(2));
  const Vec<Rational> t{Rational(1, 8), Rational(1, 8), Rational(1, 4), Rational(1, 2), Rational(1, 2)};
  const auto sp = split_solution(s, t);
  EXPECT_EQ(kernel_basis(s.q).size(), 2u);
  EXPECT_EQ(multiply(s.q, sp.u), s.c);
  EXPECT_EQ(multiply(s.q, sp.v), s.c);
  EXPECT_FALSE(sp.zeros_u.empty());
  EXPECT_FALSE(sp.zeros_v.empty());
  for (auto i : sp.zeros_u) EXPECT_EQ(std::count(sp.zeros_v.begin(), sp.zeros_v.end(), i), 0);
  // u - t and v - t point in opposite directions along one line.
  const auto du = shapes::sub(sp.u, t), dv = shapes::sub(sp.v, t);
  EXPECT_TRUE(proportional(du, dv));
  EXPECT_LT(dot(du, dv), 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_GE(sp.u[i], 0);
    EXPECT_GE(sp.v[i], 0);
  }
}

TEST(Structure, SplitRequiresKernelAndValidWitness) {
  const auto tri = build_bang_system(shapes::acute_triangle());
  EXPECT_THROW(split_solution(tri, Vec<Rational>{Rational(2, 3), Rational(1, 4), Rational(1, 12)}), NoKernel);
  EXPECT_THROW(split_solution(build_bang_system(shapes::quadrant()), Vec<Rational>{1, 1}), NoKernel);
  const auto e = build_bang_system(endgo<Rational>(2));
  EXPECT_THROW(split_solution(e, Vec<Rational>{1, 1, 1, 1, 1}), InvalidWitness);
}

TEST(Structure, SplitHalvesAreOrthant) {
  oracle::Random rng(52);
  int splits = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 3));
    const auto s = build_bang_system(shapes::random_polyhedron(rng, n, n + static_cast<std::size_t>(rng.integer(2, 5))));
    const auto out = decide_positive(s);
    if (!out.positive() || kernel_basis(s.q).empty()) continue;
    ++splits;
    const auto sp = split_solution(s, *out.witness);
    for (const auto& [w, zeros] : {std::pair{sp.u, sp.zeros_u}, std::pair{sp.v, sp.zeros_v}}) {
      ASSERT_FALSE(zeros.empty());
      std::vector<std::size_t> keep;
      Vec<Rational> restricted;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (std::find(zeros.begin(), zeros.end(), i) == zeros.end()) keep.push_back(i), restricted.push_back(w[i]);
      const auto sub = restrict_columns(s, keep);
      PositivityOutcome<Rational> claim;
      claim.verdict = Verdict::Positive;
      claim.witness = restricted;
      EXPECT_TRUE(verify_outcome(sub, claim));
    }
    for (auto i : sp.zeros_u) EXPECT_EQ(std::count(sp.zeros_v.begin(), sp.zeros_v.end(), i), 0);
  }
  EXPECT_GT(splits, 10);
}

TEST(Structure, MonotoneUnderAddingNeedlesOfEqualRank) {
  oracle::Random rng(53);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 3));
    auto small = shapes::random_needles(rng, n, static_cast<std::size_t>(rng.integer(long(n), 5)), 2);
    if (!positive(small)) continue;
    auto big = small;
    for (auto& v : shapes::random_needles(rng, n, static_cast<std::size_t>(rng.integer(1, 3)), 2)) big.push_back(v);
    const auto rs = poly_rank(build_bang_system(Mat<Rational>::from_rows(small)));
    const auto rb = poly_rank(build_bang_system(Mat<Rational>::from_rows(big)));
    if (rs != rb) continue;
    ++checked;
    EXPECT_TRUE(positive(big));
  }
  EXPECT_GT(checked, 5);
}

TEST(Structure, PeelKnownCases) {
  const std::vector<Vec<Rational>> base{{0, 1, 0}, {-1, -1, 0}, {3, -1, 0}};
  auto upright = base;
  upright.push_back({0, 0, 1});
  const auto pu = peel_hyperplane(H::from_needles(3, upright));
  ASSERT_TRUE(pu);
  EXPECT_EQ(pu->peeled, 3u);
  EXPECT_TRUE(pu->perpendicular);
  EXPECT_TRUE(decide_positive(build_bang_system(pu->sub)).positive());
  EXPECT_TRUE(positive(upright));

  auto tilted = base;
  tilted.push_back({1, 0, 2});
  const auto pt = peel_hyperplane(H::from_needles(3, tilted));
  ASSERT_TRUE(pt);
  EXPECT_FALSE(pt->perpendicular);
  EXPECT_FALSE(positive(tilted));

  EXPECT_FALSE(peel_hyperplane(endgo<Rational>(3)));
  EXPECT_FALSE(peel_hyperplane(H::from_needles(3, {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}})));
}

TEST(Structure, PeelTransfersTheVerdict) {
  oracle::Random rng(54);
  int peeled = 0, orthant = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<Vec<Rational>> needles;
    for (const auto& v : shapes::random_needles(rng, 2, static_cast<std::size_t>(rng.integer(2, 5)), 2))
      needles.push_back({v[0], v[1], Rational(0)});
    const auto top = rng.integer(0, 2) == 0 ? Vec<Rational>{0, 0, 1} : Vec<Rational>{Rational(rng.integer(-1, 1)), 0, 1};
    needles.push_back(top);
    const H h = H::from_needles(3, needles);
    if (rank(Mat<Rational>::from_rows(h.needles)) < 3) continue;
    const auto pe = peel_hyperplane(h);
    ASSERT_TRUE(pe);
    ++peeled;
    const bool transferred = pe->perpendicular && decide_positive(build_bang_system(pe->sub)).positive();
    EXPECT_EQ(transferred, positive(h.needles)) << "trial " << trial;
    orthant += transferred;
  }
  EXPECT_GT(peeled, 50);
  EXPECT_GT(orthant, 5);
}

TEST(Structure, PeelOnFloatBackendAfterRotation) {
  oracle::Random rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const auto u = Mat<Rational>::from_rows(rng.rotation(3));
    std::vector<Vec<Rational>> needles{{0, 1, 0}, {-1, -1, 0}, {3, -1, 0}, {Rational(trial % 2), 0, 1}};
    std::vector<Vec<Real>> rotated;
    for (const auto& v : needles) {
      const auto w = multiply(u, v);
      rotated.push_back({Real(to_double(w[0])), Real(to_double(w[1])), Real(to_double(w[2]))});
    }
    const auto h = Hedgehog<Real>::from_needles(3, rotated);
    const auto pe = peel_hyperplane(h);
    ASSERT_TRUE(pe);
    const bool transferred = pe->perpendicular && decide_positive(build_bang_system(pe->sub)).positive();
    EXPECT_EQ(transferred, trial % 2 == 0);
    EXPECT_EQ(decide_positive(build_bang_system(Mat<Real>::from_rows(h.needles))).positive(), trial % 2 == 0);
  }
}

TEST(Structure, FacetsWithAllRidgesOfOrthantPolyhedraAreOrthant) {
  std::vector<P> corpus{shapes::acute_prism(), cube<Rational>(3),
                        shapes::simplex_from_vertices({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}),
                        shapes::simplex_from_vertices({{0, 0}, {4, 0}, {1, 3}})};
  // Random triangles and tetrahedra; the non-orthant ones are skipped below.
  oracle::Random rng(56);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<std::size_t>(rng.integer(2, 3));
    std::vector<Vec<Rational>> v;
    for (std::size_t i = 0; i <= n; ++i) {
      const auto x = rng.nonzero_vector(n, 3);
      v.emplace_back(x.begin(), x.end());
    }
    Mat<Rational> e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) e(i, k) = v[i + 1][k] - v[0][k];
    if (!is_zero(determinant(e))) corpus.push_back(shapes::simplex_from_vertices(v));
  }
  int applicable = 0;
  for (const auto& p : corpus) {
    const bool orthant = decide_positive(build_bang_system(p)).positive();
    if (!orthant) continue;
    for (std::size_t k = 0; k < p.facets(); ++k) {
      const auto ridges = facet_ridges(p, k);
      if (ridges.size() + 1 != p.facets()) continue;
      ++applicable;
      EXPECT_TRUE(facet_positivity(p, k, ridges).positive()) << "facet " << k;
    }
  }
  EXPECT_GT(applicable, 10);
}

TEST(Structure, FacetRidgesCountNeighbours) {
  const auto prism = shapes::acute_prism();
  EXPECT_EQ(facet_ridges(prism, 0), (std::vector<std::size_t>{1, 2, 3, 4}));
  EXPECT_EQ(facet_ridges(prism, 3), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(facet_ridges(shapes::square(), 0), (std::vector<std::size_t>{1, 3}));
  // Right triangle facets are orthant segments, though the triangle is not orthant.
  const auto rt = shapes::right_triangle();
  EXPECT_TRUE(facet_positivity(rt, 2, facet_ridges(rt, 2)).positive());
}
