#pragma once

// Random-matrix model for |L_E(1, chi)| over order-k twists: Keating-Snaith
// moments of |det(A - I)| on U(N), the small-x value density, per-class
// vanishing probabilities and their sums over conductors, plus a Monte-Carlo
// Haar sampler used as an independent oracle for the moments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "cyclotwist/dirichlet.hpp"
#include "cyclotwist/error.hpp"

namespace cyclotwist {

/// M_U(s, N) = prod_{j=1}^N Gamma(j) Gamma(j+s) / Gamma(j+s/2)^2, each factor
/// formed from two gamma ratios so no large log-gamma values cancel.
inline double moment_product(double s, int N) {
  if (s <= -1.) throw DomainError("outside analyticity domain");
  if (N < 1) throw DomainError("matrix size must be positive");
  if (s == 0.) return 1.;
  const double half = s / 2;
  double log_sum = 0.;
  for (int j = 1; j <= N; ++j) {
    const double x = j;
    // Gamma(j)/Gamma(j+s/2) and Gamma(j+s/2)/Gamma(j+s)
    const double lower = boost::math::tgamma_delta_ratio(x, half);
    const double upper = boost::math::tgamma_delta_ratio(x + half, half);
    log_sum += std::log(lower / upper);
  }
  return std::exp(log_sum);
}

/// ln A (Glaisher-Kinkelin) from sum_{j<=n} j ln j and its Euler-Maclaurin
/// expansion; with n = 100 and terms through n^{-10} the remainder is far
/// below double precision.
inline double glaisher_log() {
  constexpr int n = 100;
  long double h = 0.L;
  for (int j = 2; j <= n; ++j) h += static_cast<long double>(j) * std::log(static_cast<long double>(j));
  const long double nn = n;
  const long double ln_n = std::log(nn);
  long double result = h - (nn * nn / 2 + nn / 2 + 1.L / 12) * ln_n + nn * nn / 4;
  // + sum_k B_{2k+2} / ((2k+2)(2k+1)(2k)) n^{-2k}
  const long double bernoulli[] = {-1.L / 30, 1.L / 42, -1.L / 30, 5.L / 66, -691.L / 2730};
  long double inv_pow = 1.L;
  for (int k = 1; k <= 5; ++k) {
    inv_pow /= nn * nn;
    const long double b = bernoulli[k - 1];
    result += b / ((2 * k + 2) * (2 * k + 1) * (2.L * k)) * inv_pow;
  }
  return static_cast<double>(result);
}

/// zeta'(-1) = 1/12 - ln A.
inline double zeta_prime_minus_one() { return 1. / 12 - glaisher_log(); }

/// G(1/2) = exp(3/2 zeta'(-1) - 1/4 log pi + 1/24 log 2).
inline double barnes_g_half() {
  return std::exp(1.5 * zeta_prime_minus_one() - 0.25 * std::log(std::numbers::pi) + std::log(2.) / 24);
}

/// Leading small-x density of |P_A(1)| on U(N): G(1/2)^2 N^{1/4}.
inline double small_x_density(int N) {
  if (N < 1) throw DomainError("matrix size must be positive");
  const double g = barnes_g_half();
  return g * g * std::pow(static_cast<double>(N), 0.25);
}

struct RmtModel {
  int k = 3;
  double X = 0.;
  double N = 0.;          // 2 log X
  double ae_half = 1.0;   // a_E(-1/2)
  double C_E = 0.;        // 2^{1/4} a_E(-1/2) G(1/2)^2

  [[nodiscard]] int matrix_size() const { return static_cast<int>(std::lround(N)); }
};

inline RmtModel make_model(int k, double X, double ae_half = 1.0) {
  if (!is_odd_prime(k)) throw DomainError("order k must be an odd prime");
  if (X <= 1.) throw DomainError("conductor bound must exceed 1");
  if (!(ae_half > 0.)) throw DomainError("a_E(-1/2) must be positive");
  const double g = barnes_g_half();
  return {k, X, 2 * std::log(X), ae_half, std::pow(2., 0.25) * ae_half * g * g};
}

/// p_E(x) ~ C_E log^{1/4} X for small x.
inline double twist_density_constant(const RmtModel& model) {
  if (model.X <= 1.) throw DomainError("conductor bound must exceed 1");
  return model.C_E * std::pow(std::log(model.X), 0.25);
}

/// (C_E log^{1/4} m / sqrt m)^{(k-1)/2}: the d = (k-1)/2 Galois conjugates
/// are modelled as independent, each small with probability given by the
/// small-x density on an interval of length ~ m^{-1/2}. Clamped to [0, 1].
inline double class_vanishing_probability(int k, std::uint64_t m, const RmtModel& model) {
  if (m < 3) throw DomainError("conductor must be at least 3");
  const double dm = static_cast<double>(m);
  const double single = model.C_E * std::pow(std::log(dm), 0.25) / std::sqrt(dm);
  return std::clamp(std::pow(single, (k - 1) / 2.), 0., 1.);
}

enum class Growth { PowerHalf, Subpolynomial, Bounded };

inline std::string to_string(Growth g) {
  switch (g) {
    case Growth::PowerHalf:
      return "power growth, exponent 1/2";
    case Growth::Subpolynomial:
      return "unbounded, subpolynomial";
    case Growth::Bounded:
      return "bounded";
  }
  return "";
}

/// Characters of conductor m number b_k X up to X, each vanishing with
/// probability ~ m^{-(k-1)/4}: the sum diverges like a power for k = 3,
/// like a power of log X for k = 5 and converges for k >= 7.
inline Growth growth_regime(int k) {
  const int twice_exponent = k - 1;  // 4 * (k-1)/4
  if (twice_exponent < 4) return Growth::PowerHalf;
  if (twice_exponent == 4) return Growth::Subpolynomial;
  return Growth::Bounded;
}

struct HeuristicSum {
  double sum = 0.;
  Growth classification = Growth::Bounded;
};

/// Sum of class_vanishing_probability over every primitive order-k character
/// of conductor m <= X (each class contributes k - 1 characters).
inline HeuristicSum heuristic_sum(int k, std::uint64_t X, const RmtModel& model, std::uint64_t coprime_to = 1,
                                  bool include_k_squared = true) {
  if (X < 10) throw DomainError("heuristic_sum needs X >= 10");
  HeuristicSum h{0., growth_regime(k)};
  for (const auto& f : enumerate_conductors(k, X, coprime_to, include_k_squared)) {
    h.sum += static_cast<double>(characters_at(k, f)) * class_vanishing_probability(k, f.m, model);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Monte-Carlo oracle
//
// std::mt19937_64 with Box-Muller normals built from 53-bit uniforms, so the
// stream is the same on every standard library. Samples are split into
// kMcBlocks fixed blocks, block b seeded by seed_seq{seed, b}; workers take
// whole blocks and block sums are added in block order, so the estimate does
// not depend on the worker count.

namespace detail {

inline double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11U) + 1.) * 0x1.0p-53;  // (0, 1]
}

inline std::complex<double> complex_normal(std::mt19937_64& rng) {
  const double r = std::sqrt(-std::log(uniform_open(rng)));  // E|z|^2 = 1
  const double phi = 2 * std::numbers::pi * uniform_open(rng);
  return std::polar(r, phi);
}

}  // namespace detail

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of R's diagonal moved into Q.
inline Eigen::MatrixXcd haar_unitary(int N, std::mt19937_64& rng) {
  Eigen::MatrixXcd z(N, N);
  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) z(i, j) = detail::complex_normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int j = 0; j < N; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag == 0. ? std::complex<double>(1., 0.) : d / mag;
  }
  return q;
}

struct McEstimate {
  double estimate = 0.;
  double stderr_ = 0.;
};

inline constexpr int kMcBlocks = 64;

inline McEstimate mc_haar_moment(int N, double s, std::int64_t samples, std::uint64_t seed, int workers = 1) {
  if (samples < 100) throw DomainError("need at least 100 samples");
  if (N < 1) throw DomainError("matrix size must be positive");
  struct Block {
    double sum = 0., sum_sq = 0.;
  };
  std::vector<Block> blocks(kMcBlocks);
  auto run_block = [&](int b) {
    const std::int64_t begin = samples * b / kMcBlocks, end = samples * (b + 1) / kMcBlocks;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(N, N);
    Block acc;
    for (std::int64_t i = begin; i < end; ++i) {
      const Eigen::MatrixXcd a = haar_unitary(N, rng);
      const double value = std::pow(std::abs((a - identity).determinant()), s);
      acc.sum += value;
      acc.sum_sq += value * value;
    }
    blocks[static_cast<std::size_t>(b)] = acc;
  };
  workers = std::clamp(workers, 1, kMcBlocks);
  if (workers == 1) {
    for (int b = 0; b < kMcBlocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int b = w; b < kMcBlocks; b += workers) run_block(b);
      });
    }
    for (auto& t : pool) t.join();
  }
  double sum = 0., sum_sq = 0.;
  for (const auto& b : blocks) {
    sum += b.sum;
    sum_sq += b.sum_sq;
  }
  const auto n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0., (sum_sq / n - mean * mean) * n / (n - 1));
  return {mean, std::sqrt(var / n)};
}

}  // namespace cyclotwist
