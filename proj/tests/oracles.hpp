#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library code paths they are compared against.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <set>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>

namespace oracle {

/// #E(F_p) by testing every (x, y) in F_p^2, plus the point at infinity.
inline std::int64_t brute_point_count(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4,
                                      std::int64_t a6, std::int64_t p) {
  auto md = [p](std::int64_t v) { return ((v % p) + p) % p; };
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = md(md(md(x * x) * x) + md(a2 * md(x * x)) + md(a4 * x) + a6);
    for (std::int64_t y = 0; y < p; ++y) {
      if (md(md(y * y) + md(a1 * md(x * y)) + md(a3 * y)) == rhs) ++count;
    }
  }
  return count;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Real period by quadrature of dx / sqrt(f(x)), f = 4x^3 + b2 x^2 + 2 b4 x + b6,
/// over [e1, inf) after x = e1 + u^2; doubled once for the path around the
/// component and once more when the real locus has two components.
inline double real_period_quadrature(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4,
                                     std::int64_t a6) {
  const double b2 = static_cast<double>(a1 * a1 + 4 * a2);
  const double b4 = static_cast<double>(2 * a4 + a1 * a3);
  const double b6 = static_cast<double>(a3 * a3 + 4 * a6);
  auto f = [&](double x) { return ((4 * x + b2) * x + 2 * b4) * x + b6; };
  // largest real root: bisection from a bracket
  double lo = -1., hi = 1.;
  while (f(lo) > 0) lo *= 2;
  while (f(hi) < 0) hi *= 2;
  // walk down from hi to find the rightmost sign change
  const double step = (hi - lo) / 200000.;
  double right = hi;
  while (f(right - step) > 0) right -= step;
  const auto root = boost::math::tools::bisect(f, right - step, right, boost::math::tools::eps_tolerance<double>(52));
  const double e1 = (root.first + root.second) / 2;
  // f(x) = 4 (x - e1) g(x) with g monic quadratic
  const double c1 = b2 / 4 + e1;
  const double c0 = b4 / 2 + e1 * c1;
  auto g = [&](double x) { return x * x + c1 * x + c0; };
  boost::math::quadrature::exp_sinh<double> integrator;
  const double integral = integrator.integrate([&](double u) { return 1. / std::sqrt(g(e1 + u * u)); });
  // the quadratic has real roots (both below e1) iff the discriminant is positive
  const bool two_components = c1 * c1 - 4 * c0 > 0;
  return 2 * integral * (two_components ? 2. : 1.);
}

/// log G(1 + z) from the Weierstrass product truncated after `terms`
/// factors, plus the leading Euler-Maclaurin terms of the remainder.
inline double log_barnes_g_one_plus(double z, int terms) {
  constexpr double euler_gamma = 0.57721566490153286061;
  long double sum = 0.L;
  const long double zl = z;
  for (int k = terms; k >= 1; --k) {
    const long double kk = k;
    sum += kk * std::log1p(zl / kk) - zl + zl * zl / (2 * kk);
  }
  // remaining terms ~ z^3/(3k^2) - z^4/(4k^3) + z^5/(5k^4) for k > K
  const long double K = terms;
  const long double s2 = 1 / K - 1 / (2 * K * K) + 1 / (6 * K * K * K);
  const long double s3 = 1 / (2 * K * K) - 1 / (2 * K * K * K);
  const long double s4 = 1 / (3 * K * K * K);
  sum += zl * zl * zl / 3 * s2 - zl * zl * zl * zl / 4 * s3 + zl * zl * zl * zl * zl / 5 * s4;
  return static_cast<double>(zl / 2 * std::log(2 * std::numbers::pi_v<long double>) -
                             (zl + (1 + euler_gamma) * zl * zl) / 2 + sum);
}

/// G(1/2) = G(3/2) / Gamma(1/2).
inline double barnes_g_half_product(int terms = 10000) {
  return std::exp(log_barnes_g_one_plus(0.5, terms)) / std::sqrt(std::numbers::pi);
}

inline int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

/// Number of characters mod d with chi^k = 1, i.e. |G / G^k| for G = (Z/dZ)^*.
inline std::uint64_t characters_killed_by(int k, std::uint64_t d) {
  std::uint64_t units = 0;
  std::set<std::uint64_t> powers;
  for (std::uint64_t a = 1; a <= d; ++a) {
    if (std::gcd(a, d) != 1) continue;
    ++units;
    std::uint64_t x = 1;
    for (int i = 0; i < k; ++i) x = x * a % d;
    powers.insert(x % d);
  }
  if (d == 1) return 1;
  return units / powers.size();
}

/// Primitive characters of order exactly k (k prime) and conductor m, by
/// Moebius inversion over the divisors of m.
inline std::uint64_t primitive_order_k_count(int k, std::uint64_t m) {
  std::int64_t total = 0;
  for (std::uint64_t d = 1; d <= m; ++d) {
    if (m % d == 0) total += mobius(m / d) * static_cast<std::int64_t>(characters_killed_by(k, d));
  }
  return static_cast<std::uint64_t>(total);
}

/// Least primitive root of a prime p by exhaustive order testing.
inline std::uint64_t primitive_root_bruteforce(std::uint64_t p) {
  for (std::uint64_t g = 2; g < p; ++g) {
    std::uint64_t x = 1;
    std::uint64_t order = 0;
    do {
      x = x * g % p;
      ++order;
    } while (x != 1);
    if (order == p - 1) return g;
  }
  return 1;
}

/// Direct Gauss sum of chi(a) = xi_k^{t log_g(a)} mod prime p.
inline std::complex<double> gauss_sum_prime(int k, std::uint64_t p, int t) {
  const std::uint64_t g = primitive_root_bruteforce(p);
  std::complex<double> sum{0., 0.};
  std::uint64_t a = 1;
  for (std::uint64_t e = 0; e < p - 1; ++e) {
    const double phase = 2 * std::numbers::pi * (static_cast<double>((t * e) % static_cast<std::uint64_t>(k)) / k +
                                                  static_cast<double>(a) / static_cast<double>(p));
    sum += std::polar(1., phase);
    a = a * g % p;
  }
  return sum;
}

}  // namespace oracle
