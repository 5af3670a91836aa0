#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace quasiline;

namespace {

Fan standard_cone() { return Fan{2, {make_int_vector({1, 0}), make_int_vector({0, 1})}, {{0, 1}}}; }

Fan p2_fan() {
  return Fan{2, {make_int_vector({1, 0}), make_int_vector({0, 1}), make_int_vector({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}};
}

IntVector sum_of(const std::vector<IntVector>& vs) {
  IntVector s(vs.front().size(), Integer(0));
  for (const auto& v : vs)
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += v[i];
  return s;
}

// face check through the general extreme-ray computation, bypassing any
// shortcut for adjacent cones
bool meet_by_extreme_rays(const SimplicialCone& a, const SimplicialCone& b, const std::vector<IntVector>& common) {
  auto ineqs = a.inequalities();
  for (auto& r : b.inequalities()) ineqs.push_back(r);
  auto eqs = a.equalities();
  for (auto& r : b.equalities()) eqs.push_back(r);
  auto rays = extreme_rays(ineqs, eqs, a.dim());
  if (common.empty()) return rays.empty();
  SimplicialCone face(common, a.dim());
  for (const auto& r : rays)
    if (!face.contains(r)) return false;
  return true;
}

}  // namespace

TEST(Validate, QuotientFanThreeIsValid) {
  EXPECT_TRUE(validate_fan(build_appendix_fans(3).fan_n).valid());
  EXPECT_TRUE(validate_fan(p2_fan()).valid());
}

TEST(Validate, NonPrimitiveRay) {
  Fan f{2, {make_int_vector({2, 0}), make_int_vector({0, 1})}, {{0, 1}}};
  auto rep = validate_fan(f);
  EXPECT_TRUE(rep.has(FanViolation::NonPrimitiveRay));
}

TEST(Validate, OverlappingConesViolateFaceCondition) {
  Fan f{2, {make_int_vector({1, 0}), make_int_vector({0, 1}), make_int_vector({1, 1})}, {{0, 1}, {0, 2}}};
  auto rep = validate_fan(f);
  EXPECT_TRUE(rep.has(FanViolation::FaceCondition));
  // membership oracle: (2,1) lies in the interiors of both cones
  EXPECT_TRUE(oracle::in_full_cone(f.generators({0, 1}), RationalVector{2, 1}));
  EXPECT_TRUE(oracle::in_full_cone(f.generators({0, 2}), RationalVector{2, 1}));
}

TEST(Validate, StructuralViolations) {
  Fan f{2, {make_int_vector({1, 0}), make_int_vector({0, 0}), make_int_vector({1, 0}), make_int_vector({0, 1})},
        {{0, 3}, {0, 7}, {}}};
  auto rep = validate_fan(f);
  EXPECT_TRUE(rep.has(FanViolation::ZeroRay));
  EXPECT_TRUE(rep.has(FanViolation::DuplicateRay));
  EXPECT_TRUE(rep.has(FanViolation::IndexOutOfRange));
  EXPECT_TRUE(rep.has(FanViolation::EmptyCone));
  Fan g{2, {make_int_vector({1, 0}), make_int_vector({-1, 0})}, {{0, 1}}};
  EXPECT_TRUE(validate_fan(g).has(FanViolation::NonSimplicialCone));
  Fan h{2, {make_int_vector({1, 0}), make_int_vector({0, 1}), make_int_vector({-1, 0})}, {{0, 1}}};
  EXPECT_TRUE(validate_fan(h).has(FanViolation::UnusedRay));
  Fan k{2, {make_int_vector({1, 0, 0})}, {{0}}};
  EXPECT_TRUE(validate_fan(k).has(FanViolation::WrongDimension));
}

TEST(Validate, AdjacentShortcutAgreesWithExtremeRays) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coord(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t d = 2 + trial % 2;
    std::vector<IntVector> shared;
    while (shared.size() + 1 < d) {
      IntVector v(d);
      for (auto& x : v) x = coord(rng);
      if (!is_zero(v)) shared.push_back(primitive(v));
    }
    IntVector p(d), q(d);
    for (auto& x : p) x = coord(rng);
    for (auto& x : q) x = coord(rng);
    if (is_zero(p) || is_zero(q)) continue;
    auto ga = shared, gb = shared;
    ga.push_back(primitive(p));
    gb.push_back(primitive(q));
    try {
      SimplicialCone a(ga, d), b(gb, d);
      EXPECT_EQ(meet_in_common_face(a, b, shared), meet_by_extreme_rays(a, b, shared));
      ++checked;
    } catch (const NotSimplicialError&) {
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Multiplicity, StandardAndQuotientCones) {
  EXPECT_EQ(cone_multiplicity(standard_cone(), Cone{{0, 1}}), 1);
  for (long long n = 2; n <= 6; ++n) {
    auto fans = build_appendix_fans(n);
    for (const auto& c : fans.fan_n.cones) EXPECT_EQ(cone_multiplicity(fans.fan_n, Cone{c}), n + 1) << "n=" << n;
    for (const auto& c : fans.fan_nprime.cones) EXPECT_EQ(cone_multiplicity(fans.fan_nprime, Cone{c}), 1);
    // independent: |det| of the generator matrix
    for (const auto& c : fans.fan_n.cones)
      EXPECT_EQ(abs(oracle::leibniz_det(matrix_from_vectors(fans.fan_n.generators(c)))), n + 1);
  }
  EXPECT_THROW(cone_multiplicity(standard_cone(), Cone{{0}}), NotMaximalError);
}

TEST(Smoothness, Examples) {
  EXPECT_TRUE(is_smooth(standard_cone()));
  EXPECT_TRUE(is_smooth(p2_fan()));
  for (long long n = 2; n <= 6; ++n) {
    EXPECT_TRUE(is_smooth(build_appendix_fans(n).fan_nprime));
    EXPECT_FALSE(is_smooth(build_appendix_fans(n).fan_n));
  }
}

TEST(BoxPoints, CountIsIndexMinusOne) {
  for (long long n = 2; n <= 5; ++n) {
    auto f = build_appendix_fans(n).fan_n;
    for (const auto& c : f.cones) {
      auto gens = f.generators(c);
      auto pts = box_points(gens, f.dim);
      EXPECT_EQ(pts.size(), static_cast<std::size_t>(n));
      for (const auto& bp : pts) {
        RationalVector x(f.dim);
        for (std::size_t i = 0; i < gens.size(); ++i) {
          EXPECT_GE(bp.coefficients[i], 0);
          EXPECT_LT(bp.coefficients[i], 1);
          for (std::size_t j = 0; j < f.dim; ++j) x[j] += bp.coefficients[i] * gens[i][j];
        }
        EXPECT_EQ(x, to_rational(bp.point));
      }
    }
  }
}

TEST(Stellar, PlaneBlowUp) {
  Fan out = stellar_subdivide(standard_cone(), make_int_vector({1, 1}));
  ASSERT_EQ(out.rays.size(), 3u);
  EXPECT_EQ(out.rays[2], make_int_vector({1, 1}));
  EXPECT_EQ(out.cones, (std::vector<std::vector<std::size_t>>{{1, 2}, {0, 2}}));
  EXPECT_TRUE(is_smooth(out));
}

TEST(Stellar, ExistingRayLeavesFanUnchanged) {
  EXPECT_EQ(stellar_subdivide(p2_fan(), make_int_vector({0, 1})), p2_fan());
}

TEST(Stellar, OutsideSupport) {
  EXPECT_THROW(stellar_subdivide(standard_cone(), make_int_vector({-1, 0})), OutsideSupportError);
}

TEST(Stellar, QuotientConeChildrenHaveSmallerMultiplicity) {
  Fan f = build_appendix_fans(2).fan_n;
  auto pts = box_points(f.generators(f.cones[0]), 2);
  ASSERT_FALSE(pts.empty());
  for (const auto& bp : pts) {
    IntVector w = primitive(bp.point);
    Fan g = stellar_subdivide(f, w);
    std::size_t children = 0;
    for (const auto& c : g.cones)
      if (std::find(c.begin(), c.end(), f.rays.size()) != c.end()) {
        ++children;
        EXPECT_LT(abs(oracle::leibniz_det(matrix_from_vectors(g.generators(c)))), 3);
      }
    EXPECT_EQ(children, 2u);
    EXPECT_TRUE(validate_fan(g).valid());
    EXPECT_TRUE(oracle::support_covered(f, g, 200, 5));
    EXPECT_TRUE(oracle::support_covered(g, f, 200, 6));
  }
}

TEST(Stellar, RandomSubdivisionsPreserveSupportAndValidity) {
  std::mt19937_64 rng(22);
  for (long long n = 2; n <= 3; ++n) {
    Fan f = build_appendix_fans(n).fan_n;
    for (int step = 0; step < 4; ++step) {
      // a random primitive point inside a random cone
      const auto& c = f.cones[rng() % f.cones.size()];
      IntVector w(f.dim, Integer(0));
      for (auto i : c)
        for (std::size_t j = 0; j < f.dim; ++j) w[j] += Integer(static_cast<long long>(rng() % 3)) * f.rays[i][j];
      if (is_zero(w)) continue;
      Fan g = stellar_subdivide(f, primitive(w));
      EXPECT_TRUE(validate_fan(g).valid());
      EXPECT_TRUE(oracle::support_covered(f, g, 100, step));
      EXPECT_TRUE(oracle::support_covered(g, f, 100, step + 50));
      f = g;
    }
  }
}

TEST(Desingularize, SmoothFanIsUnchanged) {
  EXPECT_EQ(desingularize(p2_fan()), p2_fan());
  EXPECT_EQ(desingularize(standard_cone()), standard_cone());
}

TEST(Desingularize, QuotientFans) {
  for (long long n = 2; n <= 3; ++n) {
    Fan f = build_appendix_fans(n).fan_n;
    Fan d = desingularize(f);
    EXPECT_TRUE(is_smooth(d));
    EXPECT_TRUE(validate_fan(d).valid());
    for (std::size_t i = 0; i < f.rays.size(); ++i) EXPECT_EQ(d.rays[i], f.rays[i]);
    for (const auto& c : d.cones)
      EXPECT_EQ(abs(oracle::leibniz_det(matrix_from_vectors(d.generators(c)))), 1);
    EXPECT_TRUE(oracle::refines(d, f));
    EXPECT_TRUE(oracle::support_covered(f, d, 1000, 7));
    EXPECT_TRUE(oracle::support_covered(d, f, 1000, 8));
  }
}

TEST(Desingularize, Deterministic) {
  Fan f = build_appendix_fans(3).fan_n;
  EXPECT_EQ(desingularize(f), desingularize(f));
}

TEST(Morphism, Examples) {
  LatticeHom id{IntMatrix::identity(2)};
  EXPECT_TRUE(is_toric_morphism(id, p2_fan(), p2_fan()));
  LatticeHom flip{IntMatrix::from_rows({{-1, 0}, {0, 1}})};
  EXPECT_FALSE(is_toric_morphism(flip, standard_cone(), standard_cone()));
  for (long long n = 2; n <= 6; ++n) {
    auto fans = build_appendix_fans(n);
    EXPECT_TRUE(is_toric_morphism(fans.inclusion, fans.fan_nprime, fans.fan_n));
  }
}

TEST(QuotientFans, RayFormulas) {
  auto f2 = build_appendix_fans(2).fan_n;
  EXPECT_EQ(f2.rays, (std::vector<IntVector>{make_int_vector({3, -2}), make_int_vector({0, 1}), make_int_vector({-3, 1})}));
  auto f4 = build_appendix_fans(4).fan_n;
  EXPECT_EQ(f4.rays[0], make_int_vector({5, -2, -3, -4}));
  EXPECT_EQ(f4.rays[4], make_int_vector({-5, 1, 2, 3}));
  for (long long n = 2; n <= 6; ++n) {
    auto fans = build_appendix_fans(n);
    EXPECT_TRUE(is_zero(sum_of(fans.fan_n.rays)));
    EXPECT_EQ(fans.fan_n.cones.size(), static_cast<std::size_t>(n + 1));
    // rays of the sublattice fan map onto the rays of the quotient fan
    for (std::size_t i = 0; i < fans.fan_n.rays.size(); ++i)
      EXPECT_EQ(fans.inclusion(fans.fan_nprime.rays[i]), fans.fan_n.rays[i]);
  }
  EXPECT_THROW(build_appendix_fans(1), BadDimensionError);
}
