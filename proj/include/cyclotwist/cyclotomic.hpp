#pragma once

// The ring of integers Z[theta] of Q(xi_k)^+, theta = xi_k + xi_k^{-1}, and
// its Minkowski embedding into R^d, d = (k-1)/2. Embedding i sends theta to
// 2 cos(2 pi i / k), i = 1..d, so embedding 1 is the identity on real numbers.
//
// Zero detection: an element of Z[theta] is zero iff its coordinates in an
// integral basis all lie strictly inside (-1, 1). round_to_lattice inverts
// the embedding and reports how far the preimage was from integral.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "cyclotwist/dirichlet.hpp"
#include "cyclotwist/error.hpp"

namespace cyclotwist {

struct RealCycloElement {
  int k = 3;
  std::vector<std::int64_t> coords;  // power basis 1, theta, ..., theta^{d-1}

  [[nodiscard]] bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
  }
  friend bool operator==(const RealCycloElement&, const RealCycloElement&) = default;
};

inline int real_degree(int k) { return (k - 1) / 2; }

struct EmbeddingMatrix {
  int k = 3;
  int d = 1;
  Eigen::MatrixXd M;     // M(i, j) = (2 cos(2 pi (i+1)/k))^j
  Eigen::MatrixXd Minv;
  double inverse_norm_inf = 0.;
  /// Monic minimal polynomial of theta, low degree first (length d + 1).
  std::vector<std::int64_t> minimal_polynomial;
};

namespace detail {

/// sum_{n=0}^{d} D_n(x) - 1 with Dickson D_0 = 2, D_1 = x, D_{n+1} = x D_n - D_{n-1};
/// xi^{-d} Phi_k(xi) = 1 + sum_{n=1}^d (xi^n + xi^{-n}).
inline std::vector<std::int64_t> theta_minimal_polynomial(int k) {
  const int d = real_degree(k);
  std::vector<std::int64_t> poly(static_cast<std::size_t>(d) + 1, 0);
  poly[0] = 1;
  std::vector<std::int64_t> prev(poly.size(), 0), cur(poly.size(), 0);
  prev[0] = 2;                 // D_0
  if (d >= 1) cur[1] = 1;      // D_1
  for (int n = 1; n <= d; ++n) {
    for (std::size_t i = 0; i < poly.size(); ++i) poly[i] += cur[i];
    std::vector<std::int64_t> next(poly.size(), 0);
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < poly.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return poly;
}

inline EmbeddingMatrix build_embedding(int k) {
  EmbeddingMatrix e;
  e.k = k;
  e.d = real_degree(k);
  e.M.resize(e.d, e.d);
  for (int i = 0; i < e.d; ++i) {
    const double c = 2 * std::cos(2 * std::numbers::pi * (i + 1) / k);
    double power = 1.;
    for (int j = 0; j < e.d; ++j) {
      e.M(i, j) = power;
      power *= c;
    }
  }
  e.Minv = e.M.inverse();
  e.inverse_norm_inf = e.Minv.cwiseAbs().rowwise().sum().maxCoeff();
  e.minimal_polynomial = theta_minimal_polynomial(k);
  return e;
}

}  // namespace detail

/// Shared per-k embedding data, built once and then read-only.
inline const EmbeddingMatrix& embedding_matrix(int k) {
  if (!is_odd_prime(k)) throw DomainError("order k must be an odd prime");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const EmbeddingMatrix>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[k];
  if (!slot) slot = std::make_unique<const EmbeddingMatrix>(detail::build_embedding(k));
  return *slot;
}

inline RealCycloElement make_element(int k, std::vector<std::int64_t> coords) {
  if (static_cast<int>(coords.size()) != real_degree(k)) throw DomainError("element has wrong number of coordinates");
  return {k, std::move(coords)};
}

inline std::vector<double> embed(const RealCycloElement& elem) {
  const auto& e = embedding_matrix(elem.k);
  std::vector<double> out(static_cast<std::size_t>(e.d), 0.);
  for (int i = 0; i < e.d; ++i) {
    double s = 0.;
    for (int j = 0; j < e.d; ++j) s += e.M(i, j) * static_cast<double>(elem.coords[static_cast<std::size_t>(j)]);
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

/// sigma_t(elem) as a real number, t = 1..d.
inline double galois_act(const RealCycloElement& elem, int t) {
  const int d = real_degree(elem.k);
  if (t < 1 || t > d) throw DomainError("embedding index out of range");
  return embed(elem)[static_cast<std::size_t>(t - 1)];
}

struct LatticeRounding {
  RealCycloElement element;
  double residual = 0.;  // infinity-norm distance of M^{-1} v from the integers
};

inline LatticeRounding round_to_lattice(const std::vector<double>& v, int k) {
  const auto& e = embedding_matrix(k);
  if (static_cast<int>(v.size()) != e.d) throw DomainError("vector has wrong dimension");
  const Eigen::VectorXd x = e.Minv * Eigen::Map<const Eigen::VectorXd>(v.data(), e.d);
  LatticeRounding out{{k, std::vector<std::int64_t>(static_cast<std::size_t>(e.d), 0)}, 0.};
  for (int j = 0; j < e.d; ++j) {
    const double r = std::nearbyint(x(j));
    out.element.coords[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(r);
    out.residual = std::max(out.residual, std::abs(x(j) - r));
  }
  return out;
}

inline RealCycloElement add(const RealCycloElement& a, const RealCycloElement& b) {
  RealCycloElement out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

/// Product in Z[theta], reducing by the minimal polynomial of theta.
inline RealCycloElement multiply(const RealCycloElement& a, const RealCycloElement& b) {
  const auto& e = embedding_matrix(a.k);
  const auto d = static_cast<std::size_t>(e.d);
  std::vector<std::int64_t> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += a.coords[i] * b.coords[j];
  }
  const auto& mp = e.minimal_polynomial;
  for (std::size_t deg = prod.size() - 1; deg >= d; --deg) {
    const std::int64_t lead = prod[deg];
    prod[deg] = 0;
    for (std::size_t i = 0; i < d; ++i) prod[deg - d + i] -= lead * mp[i];
  }
  prod.resize(d);
  return {a.k, prod};
}

/// max over embeddings of sum_j |sigma_i(theta^j)| for the power basis.
inline double compute_B(int k) {
  const auto& e = embedding_matrix(k);
  return e.M.cwiseAbs().rowwise().sum().maxCoeff();
}

enum class Region { R, R1, R2, Rprime };

/// Membership of an embedded vector in the zero-detection region R or its
/// comparison boxes. R uses the integral basis {alpha, alpha'} with
/// alpha = (1 + sqrt 5)/2 for k = 5 and the power basis of theta otherwise.
inline bool region_contains(const std::vector<double>& v, Region region, int k) {
  const auto& e = embedding_matrix(k);
  if (static_cast<int>(v.size()) != e.d) throw DomainError("vector has wrong dimension");
  auto all_below = [&](double bound, bool strict) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return strict ? std::abs(x) < bound : std::abs(x) <= bound; });
  };
  switch (region) {
    case Region::R1:
    case Region::R2:
      if (k != 5) throw DomainError("region defined only for k=5");
      return all_below(region == Region::R1 ? 1. : std::sqrt(5.), true);
    case Region::Rprime:
      return all_below(compute_B(k), false);
    case Region::R: {
      Eigen::VectorXd coeffs;
      if (k == 5) {
        const double alpha = (1 + std::sqrt(5.)) / 2, alpha_conj = (1 - std::sqrt(5.)) / 2;
        Eigen::Matrix2d basis;
        basis << alpha, alpha_conj, alpha_conj, alpha;  // columns phi(alpha), phi(alpha')
        coeffs = basis.inverse() * Eigen::Vector2d(v[0], v[1]);
      } else {
        coeffs = e.Minv * Eigen::Map<const Eigen::VectorXd>(v.data(), e.d);
      }
      // lattice points on the boundary must not slip inside through rounding
      return (coeffs.array().abs() < 1. - 1e-9).all();
    }
  }
  return false;
}

}  // namespace cyclotwist
