#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace quasiline;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

bool is_diagonal(const IntMatrix& s) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational q(-2, 4);
  EXPECT_EQ(numerator(q), -1);
  EXPECT_EQ(denominator(q), 2);
  EXPECT_EQ(q, Rational(-1, 2));
  EXPECT_EQ(to_string(q), "-1/2");
  EXPECT_EQ(floor_of(Rational(-3, 2)), -2);
  EXPECT_EQ(ceil_of(Rational(-3, 2)), -1);
}

TEST(Smith, IdentityIsFixed) {
  IntMatrix id = IntMatrix::identity(3);
  SmithForm f = smith_normal_form(id);
  EXPECT_EQ(f.S, id);
  EXPECT_EQ(oracle::multiply(oracle::multiply(f.U, id), f.V), id);
}

TEST(Smith, DiagTwoThree) {
  IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
  SmithForm f = smith_normal_form(a);
  EXPECT_EQ(f.S, IntMatrix::from_rows({{1, 0}, {0, 6}}));
  EXPECT_EQ(oracle::multiply(oracle::multiply(f.U, a), f.V), f.S);
}

TEST(Smith, QuotientSublatticeBasisThree) {
  IntMatrix a = IntMatrix::from_rows({{4, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  SmithForm f = smith_normal_form(a);
  EXPECT_EQ(f.diagonal(), (std::vector<Integer>{1, 1, 4}));
}

TEST(Smith, RandomMatricesProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    IntMatrix a = random_matrix(rng, m, n);
    SmithForm f = smith_normal_form(a);
    ASSERT_EQ(oracle::multiply(oracle::multiply(f.U, a), f.V), f.S);
    ASSERT_TRUE(is_diagonal(f.S));
    auto d = f.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      ASSERT_GE(d[i], 0);
      if (i + 1 < d.size() && d[i] != 0) {
        ASSERT_EQ(d[i + 1] % d[i], 0);
      }
      if (d[i] == 0) {
        for (std::size_t j = i; j < d.size(); ++j) ASSERT_EQ(d[j], 0);
      }
    }
    ASSERT_EQ(abs(oracle::leibniz_det(f.U)), 1);
    ASSERT_EQ(abs(oracle::leibniz_det(f.V)), 1);
    // A = U^-1 S V^-1
    RationalMatrix back = inverse(to_rational(f.U)) * to_rational(f.S) * inverse(to_rational(f.V));
    ASSERT_EQ(back, to_rational(a));
  }
}

TEST(SublatticeIndex, Basics) {
  EXPECT_EQ(sublattice_index(IntMatrix::identity(4)), Integer(1));
  EXPECT_FALSE(sublattice_index(IntMatrix::from_rows({{2, 0}, {0, 0}})).has_value());
  EXPECT_THROW(sublattice_index(IntMatrix::from_rows({{1, 0, 0}})), DimensionMismatch);
}

TEST(SublatticeIndex, QuotientLatticeHasIndexNPlusOne) {
  for (long long n = 2; n <= 6; ++n) {
    IntMatrix b = IntMatrix::identity(n);
    b(0, 0) = n + 1;
    EXPECT_EQ(sublattice_index(b), Integer(n + 1));
  }
}

TEST(SublatticeIndex, MatchesProductOfInvariantFactorsAndDeterminant) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    IntMatrix a = random_matrix(rng, n, n);
    Integer prod = 1;
    for (const auto& s : smith_normal_form(a).diagonal()) prod *= s;
    Integer det = oracle::leibniz_det(a);
    EXPECT_EQ(determinant(a), det);
    auto idx = sublattice_index(a);
    if (det == 0) {
      EXPECT_FALSE(idx.has_value());
    } else {
      ASSERT_TRUE(idx.has_value());
      EXPECT_EQ(*idx, prod);
      EXPECT_EQ(*idx, abs(det));
    }
  }
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive(make_int_vector({2, 4, 6})), make_int_vector({1, 2, 3}));
  EXPECT_EQ(primitive(make_int_vector({3, -2})), make_int_vector({3, -2}));
  EXPECT_EQ(primitive(make_int_vector({0, -5})), make_int_vector({0, -1}));
  EXPECT_THROW(primitive(make_int_vector({0, 0})), ZeroVectorError);
  EXPECT_TRUE(is_primitive(make_int_vector({3, -2})));
  EXPECT_FALSE(is_primitive(make_int_vector({2, 0})));
}

TEST(SolveRational, Examples) {
  auto s = solve_rational_linear(IntMatrix::identity(2), make_int_vector({1, 2}));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->x, (RationalVector{1, 2}));
  EXPECT_TRUE(s->unique);

  auto w = solve_rational_linear(IntMatrix::from_rows({{3, -2}, {0, 1}}), make_int_vector({0, -1}));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->x, (RationalVector{Rational(-2, 3), Rational(-1)}));

  EXPECT_FALSE(solve_rational_linear(IntMatrix::from_rows({{1, 0}, {1, 0}}), make_int_vector({0, 1})));
}

TEST(SolveRational, SubstitutionReproducesRhs) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = dim(rng), n = dim(rng);
    IntMatrix a = random_matrix(rng, m, n, -4, 4);
    // consistent right-hand side from a random integer x
    IntVector x0(n);
    for (auto& v : x0) v = std::uniform_int_distribution<int>(-5, 5)(rng);
    IntVector b = oracle::multiply(a, matrix_from_vectors({x0}).transpose()).col(0);
    auto s = solve_rational_linear(a, b);
    ASSERT_TRUE(s);
    RationalVector ax = to_rational(a) * s->x;
    ASSERT_EQ(ax, to_rational(b));
    EXPECT_EQ(s->unique, rank(a) == n);
  }
}

TEST(SolveInteger, FindsIntegralSolutionsOrProvesNone) {
  // 2x = 1 has no integer solution; 2x + 3y = 1 does
  EXPECT_FALSE(solve_integer_linear(IntMatrix::from_rows({{2}}), make_int_vector({1})));
  auto s = solve_integer_linear(IntMatrix::from_rows({{2, 3}}), make_int_vector({1}));
  ASSERT_TRUE(s);
  EXPECT_EQ((*s)[0] * 2 + (*s)[1] * 3, 1);
  // rows (3,-2),(0,1) with rhs (0,-1): only rational solution
  EXPECT_FALSE(solve_integer_linear(IntMatrix::from_rows({{3, -2}, {0, 1}}), make_int_vector({0, -1})));

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = random_matrix(rng, 3, 3, -5, 5);
    IntVector x0 = make_int_vector({trial % 7 - 3, 2, -1});
    IntVector b = a * x0;
    auto x = solve_integer_linear(a, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(a * *x, b);
  }
}

TEST(Nullspace, AnnihilatesAndHasComplementaryDimension) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix a = random_matrix(rng, 1 + trial % 4, 1 + (trial / 4) % 5, -3, 3);
    auto ns = nullspace(to_rational(a));
    EXPECT_EQ(ns.size() + rank(a), a.cols());
    for (const auto& v : ns) {
      RationalVector image = to_rational(a) * v;
      EXPECT_TRUE(std::all_of(image.begin(), image.end(), [](const Rational& q) { return q == 0; }));
    }
  }
}

TEST(Inverse, ProductIsIdentity) {
  RationalMatrix a = to_rational(IntMatrix::from_rows({{2, 1}, {7, 4}}));
  EXPECT_EQ(a * inverse(a), RationalMatrix::identity(2));
  EXPECT_THROW(inverse(to_rational(IntMatrix::from_rows({{1, 2}, {2, 4}}))), LatticeError);
}
