#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "cyclotwist/rmt.hpp"
#include "oracles.hpp"

using namespace cyclotwist;

TEST(MomentProduct, ClosedForms) {
  for (int n = 1; n <= 1000; ++n) {
    ASSERT_NEAR(moment_product(0., n), 1., 1e-12);
    ASSERT_NEAR(moment_product(2., n) / (n + 1), 1., 1e-9) << n;
  }
  EXPECT_NEAR(moment_product(0., 100), 1., 1e-12);
  EXPECT_NEAR(moment_product(2., 3), 4., 1e-12);
}

TEST(MomentProduct, OneByOneIsACircleIntegral) {
  // N = 1: E|e^{i phi} - 1|^s over uniform phi
  for (double s : {-0.5, 0.5, 1., 2., 3.7}) {
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double integral =
        integrator.integrate([s](double phi) { return std::pow(2 * std::sin(phi / 2), s); }, 0., std::numbers::pi);
    EXPECT_NEAR(moment_product(s, 1), integral / std::numbers::pi, 1e-10) << s;
  }
}

TEST(MomentProduct, AgreesWithFactorRatioOfGammas) {
  // direct product of tgamma values for small N
  for (double s : {0.5, 1., 2., -0.7}) {
    for (int n = 1; n <= 20; ++n) {
      double direct = 1.;
      for (int j = 1; j <= n; ++j) {
        direct *= std::tgamma(j) * std::tgamma(j + s) / std::pow(std::tgamma(j + s / 2), 2);
      }
      EXPECT_NEAR(moment_product(s, n) / direct, 1., 1e-10) << s << ' ' << n;
    }
  }
}

TEST(MomentProduct, Domain) {
  try {
    moment_product(-1., 4);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "outside analyticity domain");
  }
  EXPECT_THROW(moment_product(-3., 4), DomainError);
  EXPECT_THROW(moment_product(1., 0), DomainError);
}

TEST(BarnesG, MatchesProductRepresentation) {
  const double g = barnes_g_half();
  EXPECT_NEAR(g, oracle::barnes_g_half_product(10000), 1e-8);
  EXPECT_NEAR(g, 0.60324, 1e-5);
  EXPECT_GT(g, 0.);
  EXPECT_LT(g, 1.);
}

TEST(BarnesG, GlaisherConstant) {
  EXPECT_NEAR(glaisher_log(), std::log(boost::math::constants::glaisher<double>()), 1e-14);
  EXPECT_NEAR(zeta_prime_minus_one(), -0.16542, 1e-5);
}

TEST(Density, Scaling) {
  const double g2 = std::pow(barnes_g_half(), 2);
  EXPECT_DOUBLE_EQ(small_x_density(1), g2);
  EXPECT_NEAR(small_x_density(16), 2 * g2, 1e-15);
  for (int n : {1, 3, 10, 50}) EXPECT_NEAR(small_x_density(16 * n) / small_x_density(n), 2., 1e-14);
}

TEST(Density, TwistConstant) {
  const auto model = make_model(3, std::exp(1.));
  EXPECT_NEAR(twist_density_constant(model), model.C_E, 1e-15);
  EXPECT_NEAR(model.C_E, std::pow(2., 0.25) * std::pow(barnes_g_half(), 2), 1e-15);
  EXPECT_NEAR(twist_density_constant(make_model(3, std::exp(16.))), 2 * model.C_E, 1e-14);
  EXPECT_NEAR(twist_density_constant(make_model(3, 1e4, 2.)), 2 * twist_density_constant(make_model(3, 1e4)), 1e-14);
  EXPECT_EQ(make_model(3, 1e4).matrix_size(), 18);  // 2 ln 10^4 = 18.42
  EXPECT_THROW(make_model(4, 100.), DomainError);
  EXPECT_THROW(make_model(3, 1.), DomainError);
}

TEST(VanishingProbability, ShapeInK) {
  const auto model = make_model(3, 1e5);
  for (std::uint64_t m : {7U, 100U, 10007U}) {
    const double base = model.C_E * std::pow(std::log(static_cast<double>(m)), 0.25) / std::sqrt(static_cast<double>(m));
    EXPECT_NEAR(class_vanishing_probability(3, m, model), std::min(base, 1.), 1e-15);
    EXPECT_NEAR(class_vanishing_probability(5, m, model), std::min(base * base, 1.), 1e-15);
    EXPECT_NEAR(class_vanishing_probability(7, m, model), std::min(std::pow(base, 3), 1.), 1e-15);
  }
  EXPECT_THROW(class_vanishing_probability(3, 2, model), DomainError);
}

TEST(VanishingProbability, BoundedAndDecreasing) {
  for (double ae : {1., 5., 50.}) {
    const auto model = make_model(3, 1e5, ae);
    for (int k : {3, 5, 7, 11}) {
      double prev = 2.;
      for (std::uint64_t m = 3; m <= 5000; ++m) {
        const double p = class_vanishing_probability(k, m, model);
        ASSERT_GE(p, 0.);
        ASSERT_LE(p, 1.);
        if (m > 10 && p < 1.) ASSERT_LT(p, prev) << k << ' ' << m;
        prev = p;
      }
    }
  }
}

TEST(HeuristicSum, MonotoneAndClassified) {
  const auto model = make_model(3, 1e4);
  for (int k : {3, 5, 7}) {
    double prev = 0.;
    for (std::uint64_t X = 10; X <= 20000; X += 997) {
      const double s = heuristic_sum(k, X, model).sum;
      EXPECT_GE(s, prev);
      prev = s;
    }
  }
  EXPECT_EQ(to_string(heuristic_sum(3, 10000, model).classification), "power growth, exponent 1/2");
  EXPECT_EQ(to_string(heuristic_sum(5, 10000, model).classification), "unbounded, subpolynomial");
  EXPECT_EQ(to_string(heuristic_sum(7, 10000, model).classification), "bounded");
  EXPECT_EQ(to_string(heuristic_sum(11, 10000, model).classification), "bounded");
  EXPECT_THROW(heuristic_sum(3, 9, model), DomainError);
}

TEST(HeuristicSum, SeptimicTailShrinks) {
  // the sum converges for k = 7: dyadic increments eventually shrink
  const auto model = make_model(7, 1e6);
  double prev = heuristic_sum(7, 1 << 12, model).sum, prev_inc = 1e9;
  for (std::uint64_t X = 1 << 13; X <= (1 << 20); X <<= 1) {
    const double s = heuristic_sum(7, X, model).sum;
    EXPECT_LT(s - prev, prev_inc) << X;
    prev_inc = s - prev;
    prev = s;
  }
}

TEST(HaarMonteCarlo, OneDimensionalAndTelescoping) {
  const auto one = mc_haar_moment(1, 2., 20000, 17);
  EXPECT_NEAR(one.estimate, 2., 3 * one.stderr_);
  const auto three = mc_haar_moment(3, 2., 100000, 18);
  EXPECT_NEAR(three.estimate, 4., 3 * three.stderr_);
}

TEST(HaarMonteCarlo, DeterministicAcrossRunsAndWorkers) {
  const auto a = mc_haar_moment(4, 1., 5000, 99, 1);
  const auto b = mc_haar_moment(4, 1., 5000, 99, 1);
  const auto c = mc_haar_moment(4, 1., 5000, 99, 3);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.estimate, c.estimate);
  EXPECT_EQ(a.stderr_, c.stderr_);
  EXPECT_NE(a.estimate, mc_haar_moment(4, 1., 5000, 100, 1).estimate);
  EXPECT_THROW(mc_haar_moment(4, 1., 99, 1), DomainError);
}

TEST(HaarMonteCarlo, SamplesAreUnitary) {
  std::mt19937_64 rng(1);
  for (int n : {1, 2, 5, 9}) {
    const auto u = haar_unitary(n, rng);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
  }
  // Haar: E[tr U] = 0, E|tr U|^2 = 1
  std::complex<double> mean{0., 0.};
  double second = 0.;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    const auto tr = haar_unitary(4, rng).trace();
    mean += tr;
    second += std::norm(tr);
  }
  EXPECT_LT(std::abs(mean / static_cast<double>(samples)), 0.03);
  EXPECT_NEAR(second / samples, 1., 0.05);
}
