#include <gtest/gtest.h>

#include <random>

#include "k3qf/linalg.hpp"
#include "oracles.hpp"

using namespace k3qf;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

std::vector<std::vector<long long>> to_ll(const IntMatrix& m) {
  std::vector<std::vector<long long>> out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

}  // namespace

TEST(Determinant, BareissAndRationalEliminationMatchCofactorExpansion) {
  std::mt19937 rng(3);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + it % 6;
    IntMatrix m = random_matrix(rng, n, n, -4, 4);
    const long expect = static_cast<long>(oracle::laplace_det(to_ll(m)));
    EXPECT_EQ(determinant(m), expect);
    EXPECT_EQ(determinant(to_rational(m)), expect);
  }
}

TEST(HermiteNormalForm, EchelonWithReducedEntriesAndSameLattice) {
  std::mt19937 rng(5);
  for (int it = 0; it < 100; ++it) {
    IntMatrix m = random_matrix(rng, 1 + it % 4, 5, -6, 6);
    IntMatrix h = hermite_normal_form(m);
    EXPECT_EQ(h.rows(), rank(m));
    std::size_t last = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      std::size_t c = 0;
      while (h(i, c) == 0) ++c;
      if (i) {
        EXPECT_GT(c, last);
      }
      last = c;
      EXPECT_GT(h(i, c), 0);
      for (std::size_t r = 0; r < i; ++r) {
        EXPECT_GE(h(r, c), 0);
        EXPECT_LT(h(r, c), h(i, c));
      }
    }
    // Same row lattice: HNF is canonical, so HNF of the stacked matrices agrees.
    IntMatrix stacked(m.rows() + h.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) stacked(i, j) = m(i, j);
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) stacked(m.rows() + i, j) = h(i, j);
    EXPECT_EQ(hermite_normal_form(stacked), h);
  }
}

TEST(IntegerKernel, AnnihilatesAndIsSaturated) {
  std::mt19937 rng(9);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 3 + it % 5;
    IntMatrix a = random_matrix(rng, 1 + it % 3, n, -9, 9);
    IntMatrix k = integer_kernel(a);
    EXPECT_EQ(k.rows(), n - rank(a));
    IntMatrix prod = a * k.transposed();
    for (std::size_t i = 0; i < prod.rows(); ++i)
      for (std::size_t j = 0; j < prod.cols(); ++j) EXPECT_EQ(prod(i, j), 0);
    if (k.rows()) {
      EXPECT_EQ(saturation_index(k), 1);
    }
  }
}

TEST(IntegerKernel, SingleRowExamples) {
  // x + 2y + 3z = 0.
  IntMatrix k = integer_kernel(IntMatrix{{1, 2, 3}});
  ASSERT_EQ(k.rows(), 2u);
  // (2,-1,0) and (3,0,-1) span the kernel; compare canonical forms.
  EXPECT_EQ(k, hermite_normal_form(IntMatrix{{2, -1, 0}, {3, 0, -1}}));
  // 2x + 4y = 0 has kernel spanned by (2,-1), not (4,-2).
  EXPECT_EQ(integer_kernel(IntMatrix{{2, 4}}), hermite_normal_form(IntMatrix{{2, -1}}));
}

TEST(Saturate, RecoversPrimitiveLattice) {
  IntMatrix m{{2, 0, 0}, {0, 3, 3}};
  EXPECT_EQ(saturate(m), hermite_normal_form(IntMatrix{{1, 0, 0}, {0, 1, 1}}));
  EXPECT_EQ(saturation_index(m), 6);
  EXPECT_EQ(saturation_index(IntMatrix{{1, 1, 0}, {1, -1, 0}}), 2);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(IntMatrix{{1, 2}, {2, 4}}), 1u);
  EXPECT_EQ(rank(RatMatrix{{Rational(1, 2), 0}, {0, Rational(1, 3)}}), 2u);
  EXPECT_EQ(rank(IntMatrix(3, 3)), 0u);
}
