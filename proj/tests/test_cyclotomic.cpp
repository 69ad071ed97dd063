#include <random>

#include <gtest/gtest.h>

#include "cyclotwist/cyclotomic.hpp"

using namespace cyclotwist;

TEST(Embedding, Examples) {
  const auto zero = embed(make_element(5, {0, 0}));
  EXPECT_EQ(zero, (std::vector<double>{0., 0.}));
  const auto theta = embed(make_element(5, {0, 1}));
  EXPECT_NEAR(theta[0], 2 * std::cos(2 * std::numbers::pi / 5), 1e-15);
  EXPECT_NEAR(theta[1], 2 * std::cos(4 * std::numbers::pi / 5), 1e-15);
  EXPECT_NEAR(theta[0], 0.618034, 1e-6);
  EXPECT_NEAR(theta[1], -1.618034, 1e-6);
  for (int k : {3, 5, 7, 11}) {
    std::vector<std::int64_t> one(static_cast<std::size_t>(real_degree(k)), 0);
    one[0] = 1;
    for (double v : embed(make_element(k, one))) EXPECT_DOUBLE_EQ(v, 1.);
  }
  EXPECT_NEAR(galois_act(make_element(5, {0, 1}), 2), -1.618034, 1e-6);
  EXPECT_NEAR(galois_act(make_element(5, {3, 1}), 1), 3 + theta[0], 1e-15);
  EXPECT_THROW(galois_act(make_element(5, {0, 1}), 3), DomainError);
  EXPECT_THROW(make_element(5, {1, 2, 3}), DomainError);
}

TEST(Embedding, DeterminantIsRootDiscriminant) {
  // real subfield of Q(xi_k) has discriminant k^{(k-3)/2}
  for (int k : {5, 7, 11, 13}) {
    const double det = std::abs(embedding_matrix(k).M.determinant());
    EXPECT_NEAR(det, std::pow(k, (k - 3) / 4.), 1e-9 * det) << k;
    EXPECT_GT(det, 0.1);
  }
}

TEST(Embedding, MinimalPolynomialKillsTheta) {
  for (int k : {3, 5, 7, 11, 13}) {
    const auto& e = embedding_matrix(k);
    for (int i = 1; i <= e.d; ++i) {
      const double theta = 2 * std::cos(2 * std::numbers::pi * i / k);
      double value = 0., power = 1.;
      for (auto c : e.minimal_polynomial) {
        value += static_cast<double>(c) * power;
        power *= theta;
      }
      EXPECT_NEAR(value, 0., 1e-10) << "k=" << k;
    }
  }
}

TEST(Rounding, Examples) {
  const auto r = round_to_lattice({0.001, -0.002}, 5);
  EXPECT_TRUE(r.element.is_zero());
  // M^{-1} (0.001, -0.002) by hand: coords (c0, c1) with c0 + c1 t1 = 0.001, c0 + c1 t2 = -0.002
  const double t1 = 2 * std::cos(2 * std::numbers::pi / 5), t2 = 2 * std::cos(4 * std::numbers::pi / 5);
  const double c1 = (0.001 + 0.002) / (t1 - t2), c0 = 0.001 - c1 * t1;
  EXPECT_NEAR(r.residual, std::max(std::abs(c0), std::abs(c1)), 1e-15);
  EXPECT_NEAR(r.residual, 0.0013, 1e-4);
}

TEST(Rounding, RoundTripAndPerturbation) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coeff(-50, 50);
  std::uniform_real_distribution<double> noise(-1e-4, 1e-4);
  for (int k : {3, 5, 7, 11, 13}) {
    const int d = real_degree(k);
    const double norm = embedding_matrix(k).inverse_norm_inf;
    EXPECT_TRUE(std::isfinite(norm));
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(d));
      for (auto& x : c) x = coeff(rng);
      const auto e = make_element(k, c);
      const auto exact = round_to_lattice(embed(e), k);
      EXPECT_EQ(exact.element, e);
      EXPECT_LT(exact.residual, 1e-10);
      auto v = embed(e);
      for (auto& x : v) x += noise(rng);
      const auto noisy = round_to_lattice(v, k);
      EXPECT_EQ(noisy.element, e);
      EXPECT_LE(noisy.residual, norm * 1e-4 + 1e-12);
    }
  }
}

TEST(Arithmetic, EmbeddingIsARingHomomorphism) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coeff(-9, 9);
  for (int k : {3, 5, 7, 11}) {
    const int d = real_degree(k);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::int64_t> a(static_cast<std::size_t>(d)), b(a.size());
      for (auto& x : a) x = coeff(rng);
      for (auto& x : b) x = coeff(rng);
      const auto ea = make_element(k, a), eb = make_element(k, b);
      const auto va = embed(ea), vb = embed(eb), vs = embed(add(ea, eb)), vp = embed(multiply(ea, eb));
      for (int i = 0; i < d; ++i) {
        const auto u = static_cast<std::size_t>(i);
        EXPECT_NEAR(vs[u], va[u] + vb[u], 1e-9);
        EXPECT_NEAR(vp[u], va[u] * vb[u], 1e-9 * std::max(1., std::abs(vp[u])));
      }
    }
  }
}

TEST(BoundB, Values) {
  const double phi = (1 + std::sqrt(5.)) / 2;
  EXPECT_NEAR(compute_B(5), 1 + phi, 1e-9);
  EXPECT_NEAR(compute_B(5), 2.618, 1e-3);
  double expected7 = 0.;
  for (int i = 1; i <= 3; ++i) {
    const double c = 2 * std::cos(2 * std::numbers::pi * i / 7);
    expected7 = std::max(expected7, 1 + std::abs(c) + c * c);
  }
  EXPECT_NEAR(compute_B(7), expected7, 1e-12);
  for (int k : {3, 5, 7, 11, 13}) EXPECT_GE(compute_B(k), 1.);
}

TEST(Regions, Examples) {
  for (auto r : {Region::R, Region::R1, Region::R2, Region::Rprime}) EXPECT_TRUE(region_contains({0., 0.}, r, 5));
  EXPECT_FALSE(region_contains({1.5, 1.5}, Region::R1, 5));
  EXPECT_TRUE(region_contains({1.5, 1.5}, Region::R2, 5));
  try {
    region_contains({0., 0., 0.}, Region::R1, 7);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "region defined only for k=5");
  }
  EXPECT_TRUE(region_contains({0., 0., 0.}, Region::R, 7));
  EXPECT_TRUE(region_contains({0., 0., 0.}, Region::Rprime, 7));
}

TEST(Regions, NestingForOrderFive) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3., 3.);
  int in_r1 = 0, in_r = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::vector<double> v{u(rng), u(rng)};
    const bool r1 = region_contains(v, Region::R1, 5), r = region_contains(v, Region::R, 5),
               r2 = region_contains(v, Region::R2, 5);
    if (r1) EXPECT_TRUE(r);
    if (r) EXPECT_TRUE(r2);
    in_r1 += r1;
    in_r += r;
  }
  EXPECT_GT(in_r1, 0);
  EXPECT_GT(in_r, in_r1);
}

TEST(Regions, OnlyZeroLatticePointInR) {
  // zero detection: the only element of Z[theta] whose embedding lies in R is 0
  for (int k : {5, 7}) {
    const int d = real_degree(k);
    std::vector<std::int64_t> c(static_cast<std::size_t>(d), -3);
    for (;;) {
      const auto e = make_element(k, c);
      EXPECT_EQ(region_contains(embed(e), Region::R, k), e.is_zero());
      std::size_t i = 0;
      while (i < c.size() && c[i] == 3) c[i++] = -3;
      if (i == c.size()) break;
      ++c[i];
    }
  }
}
