#pragma once

// Elliptic curves over Q: Weierstrass data, L-series coefficients by point
// counting, the real period by the AGM, and root-number detection from the
// approximate functional equation of L_E(s).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclotwist/arith.hpp"
#include "cyclotwist/error.hpp"

namespace cyclotwist {

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct Weierstrass {
  std::int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  [[nodiscard]] __int128 b2() const { return __int128(a1) * a1 + 4 * __int128(a2); }
  [[nodiscard]] __int128 b4() const { return 2 * __int128(a4) + __int128(a1) * a3; }
  [[nodiscard]] __int128 b6() const { return __int128(a3) * a3 + 4 * __int128(a6); }
  [[nodiscard]] __int128 b8() const {
    return __int128(a1) * a1 * a6 + 4 * __int128(a2) * a6 - __int128(a1) * a3 * a4 +
           __int128(a2) * a3 * a3 - __int128(a4) * a4;
  }
  [[nodiscard]] __int128 discriminant() const {
    const __int128 c2 = b2(), c4 = b4(), c6 = b6(), c8 = b8();
    return -c2 * c2 * c8 - 8 * c4 * c4 * c4 - 27 * c6 * c6 + 9 * c2 * c4 * c6;
  }

  friend bool operator==(const Weierstrass&, const Weierstrass&) = default;
};

struct CurveData {
  std::string label;
  Weierstrass model;
  std::int64_t conductor = 1;
  int root_number = 1;      // w_E
  double real_period = 0.;  // Omega_E, filled by make_curve
};

/// a_1..a_{n_max}; index 0 is unused and holds 0.
struct CoefficientTable {
  std::int64_t n_max = 0;
  std::vector<std::int32_t> values;

  [[nodiscard]] std::int64_t operator[](std::int64_t n) const { return values[static_cast<std::size_t>(n)]; }
};

inline constexpr std::int64_t kDefaultCountingBound = 10'000'000;
/// an_table counts points exhaustively below this prime (and at bad primes).
inline constexpr std::int64_t kBsgsThreshold = 1000;

namespace detail {

/// Affine point count over F_2 by exhaustion.
inline std::int64_t affine_points_mod2(const Weierstrass& w) {
  std::int64_t count = 0;
  for (std::int64_t x = 0; x < 2; ++x) {
    for (std::int64_t y = 0; y < 2; ++y) {
      const std::int64_t lhs = y * y + w.a1 * x * y + w.a3 * y;
      const std::int64_t rhs = x * x * x + w.a2 * x * x + w.a4 * x + w.a6;
      if (arith::mod(lhs - rhs, 2) == 0) ++count;
    }
  }
  return count;
}

/// Point counter with a reusable quadratic-character buffer. For odd p the
/// number of y over a given x is 1 + (D(x)/p) with D = 4x^3 + b2 x^2 + 2 b4 x + b6.
class PointCounter {
 public:
  std::int64_t trace(const Weierstrass& w, std::int64_t p) {
    if (p == 2) return 2 + 1 - (affine_points_mod2(w) + 1);
    const auto up = static_cast<std::size_t>(p);
    residue_.assign(up, -1);
    residue_[0] = 0;
    // squares by (y+1)^2 = y^2 + 2y + 1
    std::int64_t sq = 0;
    for (std::int64_t y = 1; y <= p / 2; ++y) {
      sq += 2 * y - 1;
      if (sq >= p) sq -= p;
      residue_[static_cast<std::size_t>(sq)] = 1;
    }
    const std::int64_t c2 = arith::mod(static_cast<std::int64_t>(w.b2() % p), p);
    const std::int64_t c4 = arith::mod(static_cast<std::int64_t>((2 * w.b4()) % p), p);
    const std::int64_t c6 = arith::mod(static_cast<std::int64_t>(w.b6() % p), p);
    auto d_at = [&](std::int64_t x) {
      const std::int64_t x2 = x * x % p;
      return (4 * (x2 * x % p) + c2 * x2 + c4 * x + c6) % p;
    };
    // cubic forward differences along x; the third difference is 4 * 3! = 24
    const auto up32 = static_cast<std::uint32_t>(p);
    auto d0 = static_cast<std::uint32_t>(d_at(0));
    auto d1 = static_cast<std::uint32_t>(arith::mod(d_at(1) - d_at(0), p));
    auto d2 = static_cast<std::uint32_t>(arith::mod(d_at(2) - 2 * d_at(1) + d_at(0), p));
    const auto d3 = static_cast<std::uint32_t>(24 % p);
    const std::int8_t* res = residue_.data();
    std::int64_t sum = 0;
    for (std::int64_t x = 0; x < p; ++x) {
      sum += res[d0];
      d0 += d1;
      d0 -= d0 >= up32 ? up32 : 0U;
      d1 += d2;
      d1 -= d1 >= up32 ? up32 : 0U;
      d2 += d3;
      d2 -= d2 >= up32 ? up32 : 0U;
    }
    return -sum;
  }

 private:
  std::vector<std::int8_t> residue_;
};

/// Short model y^2 = x^3 + A x + B over F_p, p > 3 prime, with affine group law.
class ShortCurveModP {
 public:
  struct Point {
    std::uint64_t x = 0, y = 0;
    bool inf = true;
  };

  ShortCurveModP(std::uint64_t a, std::uint64_t b, std::uint64_t p) : a_(a % p), b_(b % p), p_(p) {}

  [[nodiscard]] std::uint64_t rhs(std::uint64_t x) const {
    return (mul(mul(x, x) + a_, x) + b_) % p_;
  }

  [[nodiscard]] Point neg(const Point& P) const { return P.inf ? P : Point{P.x, P.y == 0 ? 0 : p_ - P.y, false}; }

  [[nodiscard]] Point add(const Point& P, const Point& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    std::uint64_t lambda = 0;
    if (P.x == Q.x) {
      if ((P.y + Q.y) % p_ == 0) return {};
      lambda = mul(3 * mul(P.x, P.x) % p_ + a_, inv(2 * P.y % p_));
    } else {
      lambda = mul((Q.y + p_ - P.y) % p_, inv((Q.x + p_ - P.x) % p_));
    }
    const std::uint64_t x3 = (mul(lambda, lambda) + 2 * p_ - P.x - Q.x) % p_;
    const std::uint64_t y3 = (mul(lambda, (P.x + p_ - x3) % p_) + p_ - P.y) % p_;
    return {x3, y3, false};
  }

  [[nodiscard]] Point times(std::uint64_t n, Point P) const {
    Point acc;
    while (n != 0) {
      if (n & 1U) acc = add(acc, P);
      P = add(P, P);
      n >>= 1U;
    }
    return acc;
  }

  [[nodiscard]] std::uint64_t prime() const { return p_; }

 private:
  [[nodiscard]] std::uint64_t mul(std::uint64_t x, std::uint64_t y) const { return x * y % p_; }
  [[nodiscard]] std::uint64_t inv(std::uint64_t x) const {
    // extended Euclid
    std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(x), s0 = 0, s1 = 1;
    while (r1 != 0) {
      const std::int64_t q = r0 / r1;
      r0 = std::exchange(r1, r0 - q * r1);
      s0 = std::exchange(s1, s0 - q * s1);
    }
    return static_cast<std::uint64_t>(arith::mod(s0, static_cast<std::int64_t>(p_)));
  }

  std::uint64_t a_, b_, p_;
};

/// Square root modulo an odd prime (Tonelli-Shanks); r must be a residue.
inline std::uint64_t sqrt_mod(std::uint64_t r, std::uint64_t p) {
  r %= p;
  if (r == 0) return 0;
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  std::uint64_t z = 2;
  while (arith::powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = arith::powmod(z, q, p), x = arith::powmod(r, (q + 1) / 2, p), t = arith::powmod(r, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = b * b % p;
    x = x * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return x;
}

/// Group order of a short curve mod p by Shanks-Mestre baby-step giant-step:
/// random points narrow the order to a unique multiple of the lcm of their
/// orders inside the Hasse interval. Returns 0 when that fails (small
/// exponent); the caller then tries the quadratic twist.
inline std::uint64_t group_order_bsgs(const ShortCurveModP& E, std::uint64_t seed) {
  using Point = ShortCurveModP::Point;
  const std::uint64_t p = E.prime();
  const auto width = static_cast<std::uint64_t>(std::floor(2 * std::sqrt(static_cast<double>(p))));
  const std::uint64_t lo = p + 1 - width, hi = p + 1 + width;
  const auto baby = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width)))) + 1;
  std::uint64_t lcm = 1;
  std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  for (int attempt = 0; attempt < 24; ++attempt) {
    // random point with a deterministic x sequence
    Point P;
    while (P.inf) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      const std::uint64_t x = (state >> 17U) % p;
      const std::uint64_t r = E.rhs(x);
      if (r != 0 && arith::powmod(r, (p - 1) / 2, p) != 1) continue;
      P = {x, sqrt_mod(r, p), false};
    }
    // baby steps i P, i = 0..baby, keyed by x (covers +-i)
    std::vector<std::pair<std::uint64_t, std::uint64_t>> table;
    table.reserve(baby);
    Point cur = P;
    for (std::uint64_t i = 1; i <= baby; ++i) {
      table.emplace_back(cur.x, i);
      cur = E.add(cur, P);
    }
    std::sort(table.begin(), table.end());
    const Point giant = E.times(2 * baby + 1, P);
    // (p + 1 - a) P = O  <=>  (p + 1) P = a P, |a| <= width
    const Point target = E.times(p + 1, P);
    const auto steps = static_cast<std::int64_t>(width / (2 * baby + 1) + 1);
    std::uint64_t found = 0;
    Point R = E.add(target, E.times(static_cast<std::uint64_t>(steps) * (2 * baby + 1), P));
    const Point neg_giant = E.neg(giant);
    for (std::int64_t j = -steps; j <= steps && found == 0; ++j, R = E.add(R, neg_giant)) {
      // R = target - j*G
      const std::int64_t base = j * static_cast<std::int64_t>(2 * baby + 1);
      std::int64_t a = 0;
      bool hit = false;
      if (R.inf) {
        a = base;
        hit = true;
      } else {
        auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(R.x, std::uint64_t{0}));
        if (it != table.end() && it->first == R.x) {
          const Point iP = E.times(it->second, P);
          a = base + (iP.y == R.y ? 1 : -1) * static_cast<std::int64_t>(it->second);
          hit = true;
        }
      }
      if (hit) {
        const auto order = static_cast<std::int64_t>(p + 1) - a;
        if (order > 0) found = static_cast<std::uint64_t>(order);
      }
    }
    if (found == 0) continue;
    // order of P divides `found`
    std::uint64_t ord = found;
    for (const auto& [q, e] : arith::factor(found)) {
      (void)e;
      while (ord % q == 0 && E.times(ord / q, P).inf) ord /= q;
    }
    lcm = std::lcm(lcm, ord);
    std::uint64_t first = (lo + lcm - 1) / lcm * lcm;
    if (first <= hi && first + lcm > hi) return first;
  }
  return 0;
}


/// Trace of Frobenius at a good prime p > 3 through the group order of the
/// short model y^2 = x^3 - 27 c4 x - 54 c6 or of its quadratic twist.
inline std::int64_t trace_bsgs(const Weierstrass& w, std::int64_t p) {
  const __int128 b2 = w.b2(), b4 = w.b4(), b6 = w.b6();
  const __int128 c4 = b2 * b2 - 24 * b4;
  const __int128 c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  const auto up = static_cast<std::uint64_t>(p);
  auto reduce = [&](__int128 v) { return static_cast<std::uint64_t>(((v % p) + p) % p); };
  const std::uint64_t A = reduce(-27 * c4), B = reduce(-54 * c6);
  std::uint64_t g = 2;
  while (arith::powmod(g, (up - 1) / 2, up) != up - 1) ++g;
  const ShortCurveModP E(A, B, up);
  const ShortCurveModP twist(A * (g * g % up) % up, B * (g * g % up * g % up) % up, up);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    if (const auto n = group_order_bsgs(E, seed); n != 0) return p + 1 - static_cast<std::int64_t>(n);
    if (const auto n = group_order_bsgs(twist, seed); n != 0) return static_cast<std::int64_t>(n) - (p + 1);
  }
  return 0x7fffffff;  // sentinel: caller falls back to exhaustive counting
}

}  // namespace detail

/// Trace of Frobenius p + 1 - #E(F_p). At bad primes the same count gives
/// p - #E_ns(F_p), i.e. +1 / -1 / 0 for split / nonsplit / additive reduction,
/// provided the model is minimal at p.
inline std::int64_t ap(const CurveData& curve, std::int64_t p,
                       std::int64_t counting_bound = kDefaultCountingBound) {
  if (p > counting_bound) throw DomainError("prime too large for naive counting");
  if (!arith::is_prime(static_cast<std::uint64_t>(p))) throw DomainError("ap: argument is not prime");
  detail::PointCounter counter;
  return counter.trace(curve.model, p);
}

inline CoefficientTable an_table(const CurveData& curve, std::int64_t n_max,
                                 std::int64_t counting_bound = kDefaultCountingBound) {
  if (n_max < 1) throw DomainError("an_table: n_max must be positive");
  CoefficientTable table;
  table.n_max = n_max;
  table.values.assign(static_cast<std::size_t>(n_max) + 1, 0);
  auto& a = table.values;
  a[1] = 1;
  const auto spf = arith::spf_sieve(static_cast<std::uint32_t>(n_max));
  detail::PointCounter counter;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    const std::int64_t p = spf[static_cast<std::size_t>(n)];
    std::int64_t pe = p;
    while (n % (pe * p) == 0) pe *= p;
    const std::int64_t rest = n / pe;
    if (rest > 1) {
      a[n] = a[pe] * a[rest];
    } else if (pe == p) {
      std::int64_t trace = 0x7fffffff;
      if (p >= kBsgsThreshold && curve.conductor % p != 0) trace = detail::trace_bsgs(curve.model, p);
      if (trace == 0x7fffffff) {
        if (p > counting_bound) throw DomainError("prime too large for naive counting");
        trace = counter.trace(curve.model, p);
      }
      a[n] = static_cast<std::int32_t>(trace);
    } else if (curve.conductor % p == 0) {
      a[n] = a[n / p] * a[p];
    } else {
      a[n] = static_cast<std::int32_t>(std::int64_t{a[p]} * a[n / p] - p * std::int64_t{a[n / p / p]});
    }
  }
  return table;
}

namespace detail {

template <typename Real>
Real agm(Real a, Real g) {
  for (int it = 0; it < 200; ++it) {
    if (std::abs(a - g) <= std::numeric_limits<Real>::epsilon() * 4 * a) return (a + g) / 2;
    const Real next = (a + g) / 2;
    g = std::sqrt(a * g);
    a = next;
  }
  throw Error("AGM did not converge");
}

/// Real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, descending, Newton-polished.
template <typename Real>
std::vector<Real> real_roots_of_two_torsion(const Weierstrass& w) {
  const Real c3 = 4, c2 = Real(static_cast<long double>(w.b2())), c1 = 2 * Real(static_cast<long double>(w.b4())),
             c0 = Real(static_cast<long double>(w.b6()));
  // depressed cubic in x = t - c2/(3 c3)
  const Real a = c2 / c3, b = c1 / c3, c = c0 / c3;
  const Real shift = a / 3;
  const Real pp = b - a * a / 3;
  const Real qq = 2 * a * a * a / 27 - a * b / 3 + c;
  const Real disc = qq * qq / 4 + pp * pp * pp / 27;
  std::vector<Real> roots;
  if (disc < 0) {
    const Real r = std::sqrt(-pp / 3);
    const Real phi = std::acos(std::clamp(-qq / (2 * r * r * r), Real(-1), Real(1)));
    for (int j = 0; j < 3; ++j) {
      roots.push_back(2 * r * std::cos((phi - 2 * std::numbers::pi_v<Real> * j) / 3) - shift);
    }
  } else {
    const Real sq = std::sqrt(disc);
    roots.push_back(std::cbrt(-qq / 2 + sq) + std::cbrt(-qq / 2 - sq) - shift);
  }
  for (auto& x : roots) {
    for (int it = 0; it < 8; ++it) {
      const Real f = ((c3 * x + c2) * x + c1) * x + c0;
      const Real df = (3 * c3 * x + 2 * c2) * x + c1;
      if (df == 0) break;
      x -= f / df;
    }
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

}  // namespace detail

/// Omega_E by the AGM, generic in the working precision. When the
/// discriminant is positive the real locus has two components and the
/// least real period is doubled.
template <typename Real>
Real real_period_with(const Weierstrass& w) {
  const __int128 disc = w.discriminant();
  if (disc == 0) throw DomainError("singular Weierstrass model");
  const auto roots = detail::real_roots_of_two_torsion<Real>(w);
  const Real pi = std::numbers::pi_v<Real>;
  if (disc > 0) {
    const Real e1 = roots.at(0), e2 = roots.at(1), e3 = roots.at(2);
    return 2 * pi / detail::agm<Real>(std::sqrt(e1 - e3), std::sqrt(e1 - e2));
  }
  const Real e1 = roots.at(0);
  const Real b2 = Real(static_cast<long double>(w.b2())), b4 = Real(static_cast<long double>(w.b4()));
  const Real alpha = 3 * e1 + b2 / 4;
  const Real beta = std::sqrt(3 * e1 * e1 + b2 * e1 / 2 + b4 / 2);
  return 2 * pi / detail::agm<Real>(2 * std::sqrt(beta), std::sqrt(2 * beta + alpha));
}

inline double real_period(const CurveData& curve) {
  return static_cast<double>(real_period_with<long double>(curve.model));
}

/// Untwisted L_E(1) by the approximate functional equation with split A:
/// sum a_n/n (e^{-2 pi n/(A sqrt N)} + w e^{-2 pi n A/sqrt N}).
inline double l_value_untwisted(const CoefficientTable& table, std::int64_t conductor, int w, double split,
                                std::int64_t n_max) {
  if (n_max > table.n_max) throw DomainError("insufficient coefficients");
  const double root_n = std::sqrt(static_cast<double>(conductor));
  const double c_plus = 2 * std::numbers::pi / (split * root_n);
  const double c_minus = 2 * std::numbers::pi * split / root_n;
  double sum = 0.;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto an = static_cast<double>(table[n]);
    if (an == 0.) continue;
    const auto dn = static_cast<double>(n);
    sum += an / dn * (std::exp(-c_plus * dn) + w * std::exp(-c_minus * dn));
  }
  return sum;
}

/// Terms needed so the AFE tail is below eps, using |a_n| <= n.
inline std::int64_t afe_truncation(double scale, double eps, double split = 1.) {
  const double stretch = std::max(split, 1. / split);
  const double q = scale / (2 * std::numbers::pi);
  return static_cast<std::int64_t>(std::ceil(stretch * q * (std::log(1. / eps) + 2 * std::log(2. + scale)))) + 1;
}

/// The sign w for which the AFE at A = 1 and A = 1.3 agree within 10 eps.
inline int detect_root_number(const CurveData& curve, const CoefficientTable& table, double eps = 1e-12) {
  const double root_n = std::sqrt(static_cast<double>(curve.conductor));
  const std::int64_t n_max = afe_truncation(root_n, eps, 1.3);
  bool agrees[2] = {false, false};
  for (int i = 0; i < 2; ++i) {
    const int w = i == 0 ? 1 : -1;
    const double l1 = l_value_untwisted(table, curve.conductor, w, 1.0, n_max);
    const double l2 = l_value_untwisted(table, curve.conductor, w, 1.3, n_max);
    agrees[i] = std::abs(l1 - l2) < 10 * eps;
  }
  if (agrees[0] == agrees[1]) throw Error("indeterminate root number");
  return agrees[0] ? 1 : -1;
}

/// Validates the model and fills in Omega_E (and w_E when not supplied).
inline CurveData make_curve(std::string label, const Weierstrass& model, std::int64_t conductor,
                            std::optional<int> root_number = std::nullopt) {
  if (conductor < 1) throw DomainError("conductor must be positive");
  if (model.discriminant() == 0) throw DomainError("singular Weierstrass model for " + label);
  if (root_number && *root_number != 1 && *root_number != -1) throw DomainError("root_number must be +1 or -1");
  CurveData curve{std::move(label), model, conductor, root_number.value_or(1), 0.};
  curve.real_period = real_period(curve);
  const double root_n = std::sqrt(static_cast<double>(conductor));
  const auto table = an_table(curve, afe_truncation(root_n, 1e-12, 1.3));
  const int detected = detect_root_number(curve, table);
  if (root_number && *root_number != detected) {
    throw DomainError("root number of " + curve.label + " inconsistent with conductor (AFE check)");
  }
  curve.root_number = detected;
  return curve;
}

// ---------------------------------------------------------------------------
// Catalogue
//
// One curve per line, whitespace-separated key=value fields:
//   label=11a1 a1=0 a2=-1 a3=1 a4=-10 a6=-20 conductor=11 root_number=1
// root_number is optional. Blank lines and lines starting with '#' are
// skipped. Unknown or repeated keys are rejected.

inline constexpr const char* kBuiltinCatalogue =
    "# first three isogeny-class representatives of the Cremona tables\n"
    "label=11a1 a1=0 a2=-1 a3=1 a4=-10 a6=-20 conductor=11 root_number=1\n"
    "label=14a1 a1=1 a2=0 a3=1 a4=4 a6=-6 conductor=14 root_number=1\n"
    "label=15a1 a1=1 a2=1 a3=1 a4=-10 a6=-10 conductor=15 root_number=1\n";

inline std::vector<CurveData> parse_catalogue(std::istream& in) {
  std::vector<CurveData> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::map<std::string, std::string> kv;
    std::string token;
    while (fields >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw DomainError("catalogue line " + std::to_string(line_no) + ": malformed field '" + token + "'");
      }
      auto key = token.substr(0, eq);
      static const std::array<const char*, 8> known = {"label", "a1", "a2", "a3", "a4", "a6", "conductor",
                                                       "root_number"};
      if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end()) {
        throw DomainError("catalogue line " + std::to_string(line_no) + ": unknown field '" + key + "'");
      }
      if (!kv.emplace(key, token.substr(eq + 1)).second) {
        throw DomainError("catalogue line " + std::to_string(line_no) + ": repeated field '" + key + "'");
      }
    }
    auto integer = [&](const char* key) -> std::int64_t {
      const auto it = kv.find(key);
      if (it == kv.end()) {
        throw DomainError("catalogue line " + std::to_string(line_no) + ": missing field '" + key + "'");
      }
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(it->second, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != it->second.size()) {
        throw DomainError("catalogue line " + std::to_string(line_no) + ": field '" + key + "' is not an integer");
      }
      return v;
    };
    if (!kv.contains("label")) throw DomainError("catalogue line " + std::to_string(line_no) + ": missing label");
    const Weierstrass model{integer("a1"), integer("a2"), integer("a3"), integer("a4"), integer("a6")};
    std::optional<int> w;
    if (kv.contains("root_number")) w = static_cast<int>(integer("root_number"));
    out.push_back(make_curve(kv.at("label"), model, integer("conductor"), w));
  }
  return out;
}

inline std::vector<CurveData> load_catalogue(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open curve catalogue: " + path);
  return parse_catalogue(in);
}

inline const std::vector<CurveData>& builtin_curves() {
  static const std::vector<CurveData> curves = [] {
    std::istringstream in(kBuiltinCatalogue);
    return parse_catalogue(in);
  }();
  return curves;
}

inline const CurveData& find_curve(const std::vector<CurveData>& curves, const std::string& label) {
  for (const auto& c : curves) {
    if (c.label == label) return c;
  }
  throw DomainError("curve not in catalogue: " + label);
}

}  // namespace cyclotwist
