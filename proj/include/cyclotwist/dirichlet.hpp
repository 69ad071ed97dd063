#pragma once

// Primitive Dirichlet characters of odd prime order k.
//
// A primitive order-k character has conductor m = (k^2 optionally) * p_1 ... p_r
// with distinct primes p_i = 1 (mod k). Each local component is
// a -> xi_k^{t_p * log_g(a) mod k} for a fixed generator g of (Z/p^e Z)^*, and
// characters are stored as exponents of xi_k = e^{2 pi i/k}.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclotwist/arith.hpp"
#include "cyclotwist/error.hpp"

namespace cyclotwist {

struct PrimePower {
  std::uint64_t p = 0;
  int e = 1;

  [[nodiscard]] std::uint64_t modulus() const {
    std::uint64_t q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    return q;
  }
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct ConductorFactorization {
  std::uint64_t m = 1;
  std::vector<PrimePower> factors;  // ascending primes

  friend bool operator==(const ConductorFactorization&, const ConductorFactorization&) = default;
};

/// log_g(a) mod k for every residue a mod p^e; -1 marks non-units.
struct LocalLogTable {
  PrimePower factor;
  std::uint64_t generator = 0;
  std::vector<std::int16_t> log_mod_k;
};

/// Primitive character of order k: one exponent t_p in 1..k-1 per local factor.
struct CharacterSpec {
  int k = 3;
  ConductorFactorization modulus;
  std::vector<int> exponents;
  std::vector<std::shared_ptr<const LocalLogTable>> tables;

  [[nodiscard]] std::uint64_t conductor() const { return modulus.m; }

  /// Exponent j with chi(a) = xi_k^j, or -1 when gcd(a, m) > 1.
  [[nodiscard]] int exponent(std::int64_t a) const {
    const auto m = static_cast<std::int64_t>(modulus.m);
    const auto r = static_cast<std::uint64_t>(arith::mod(a, m));
    int total = 0;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const auto& t = *tables[i];
      const int lg = t.log_mod_k[r % t.factor.modulus()];
      if (lg < 0) return -1;
      total += exponents[i] * lg;
    }
    return total % k;
  }

  /// exponent(a) for a = 0..m-1.
  [[nodiscard]] std::vector<std::int16_t> exponent_table() const {
    std::vector<std::int16_t> out(modulus.m);
    for (std::uint64_t a = 0; a < modulus.m; ++a) out[a] = static_cast<std::int16_t>(exponent(static_cast<std::int64_t>(a)));
    return out;
  }

  /// Serialized identity "m=<int>;factors=p1^e1*...;t=t1,...".
  [[nodiscard]] std::string id() const {
    std::ostringstream os;
    os << "m=" << modulus.m << ";factors=";
    for (std::size_t i = 0; i < modulus.factors.size(); ++i) {
      if (i) os << '*';
      os << modulus.factors[i].p << '^' << modulus.factors[i].e;
    }
    os << ";t=";
    for (std::size_t i = 0; i < exponents.size(); ++i) {
      if (i) os << ',';
      os << exponents[i];
    }
    return os.str();
  }
};

struct ConjugacyClass {
  CharacterSpec representative;
  int class_id = 0;
  int class_size = 0;  // k - 1
};

/// xi_k^j as a complex number.
inline std::complex<double> root_of_unity(int k, std::int64_t j) {
  const auto r = arith::mod(j, k);
  return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(r) / k);
}

inline bool is_odd_prime(int k) { return k > 2 && arith::is_prime(static_cast<std::uint64_t>(k)); }

/// Local factors of m when m is the conductor of some primitive order-k
/// character; empty optional otherwise.
inline std::optional<ConductorFactorization> admissible_factorization(int k, std::uint64_t m) {
  if (m < 2) return std::nullopt;
  ConductorFactorization f{m, {}};
  for (const auto& [p, e] : arith::factor(m)) {
    if (p == static_cast<std::uint64_t>(k)) {
      if (e != 2) return std::nullopt;
    } else if (e != 1 || p % static_cast<std::uint64_t>(k) != 1) {
      return std::nullopt;
    }
    f.factors.push_back({p, e});
  }
  return f;
}

/// Admissible conductors m <= X with gcd(m, coprime_to) = 1, ascending.
inline std::vector<ConductorFactorization> enumerate_conductors(int k, std::uint64_t X, std::uint64_t coprime_to = 1,
                                                                bool include_k_squared = true) {
  if (!is_odd_prime(k)) throw DomainError("order k must be an odd prime");
  std::vector<ConductorFactorization> out;
  if (X < 2) return out;
  const auto uk = static_cast<std::uint64_t>(k);
  const auto spf = arith::spf_sieve(static_cast<std::uint32_t>(X));
  for (std::uint64_t m = 2; m <= X; ++m) {
    if (std::gcd(m, coprime_to) != 1) continue;
    ConductorFactorization f{m, {}};
    std::uint64_t rest = m;
    bool ok = true;
    while (rest > 1 && ok) {
      const std::uint64_t p = spf[rest];
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (p == uk) {
        ok = include_k_squared && e == 2;
      } else {
        ok = e == 1 && p % uk == 1;
      }
      f.factors.push_back({p, e});
    }
    if (ok) out.push_back(std::move(f));
  }
  return out;
}

/// Log table of one local factor, by walking the powers of the least generator.
inline std::shared_ptr<const LocalLogTable> make_local_table(int k, const PrimePower& factor) {
  auto table = std::make_shared<LocalLogTable>();
  table->factor = factor;
  const std::uint64_t q = factor.modulus();
  table->generator = arith::primitive_root(factor.p, factor.e);
  table->log_mod_k.assign(q, -1);
  const std::uint64_t order = q / factor.p * (factor.p - 1);
  std::uint64_t x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    table->log_mod_k[x] = static_cast<std::int16_t>(i % static_cast<std::uint64_t>(k));
    x = x * table->generator % q;
  }
  return table;
}

/// One class per exponent vector with the first entry normalised to 1,
/// in lexicographic order of the remaining exponents.
inline std::vector<ConjugacyClass> enumerate_classes(int k, const ConductorFactorization& modulus) {
  if (!is_odd_prime(k)) throw DomainError("order k must be an odd prime");
  const auto check = admissible_factorization(k, modulus.m);
  if (!check || check->factors != modulus.factors) throw DomainError("no primitive order-k character mod m");
  std::vector<std::shared_ptr<const LocalLogTable>> tables;
  for (const auto& f : modulus.factors) tables.push_back(make_local_table(k, f));
  const std::size_t r = modulus.factors.size();
  std::vector<int> exps(r, 1);
  std::vector<ConjugacyClass> out;
  for (int id = 0;; ++id) {
    out.push_back({CharacterSpec{k, modulus, exps, tables}, id, k - 1});
    // odometer over positions 1..r-1
    std::size_t pos = r;
    while (pos > 1) {
      --pos;
      if (exps[pos] < k - 1) {
        ++exps[pos];
        break;
      }
      exps[pos] = 1;
      if (pos == 1) return out;
    }
    if (r <= 1) return out;
  }
}

inline std::vector<ConjugacyClass> enumerate_classes(int k, std::uint64_t m) {
  const auto f = admissible_factorization(k, m);
  if (!f) throw DomainError("no primitive order-k character mod m");
  return enumerate_classes(k, *f);
}

inline std::complex<double> eval_char(const CharacterSpec& spec, std::int64_t a) {
  const int j = spec.exponent(a);
  if (j < 0) return {0., 0.};
  return root_of_unity(spec.k, j);
}

/// Exponents scaled by t mod k: the character sigma_t o chi.
inline CharacterSpec conjugate_char(const CharacterSpec& spec, int t) {
  if (arith::mod(t, spec.k) == 0) throw DomainError("conjugation exponent must be a unit mod k");
  CharacterSpec out = spec;
  for (auto& e : out.exponents) e = static_cast<int>(arith::mod(std::int64_t{e} * t, spec.k));
  return out;
}

/// tau(chi) = sum_a chi(a) e^{2 pi i a/m}. Each term's phase j/k + a/m is
/// reduced exactly before the complex exponential.
inline std::complex<double> gauss_sum(const CharacterSpec& spec) {
  const std::uint64_t m = spec.modulus.m;
  const auto k = static_cast<std::uint64_t>(spec.k);
  const std::uint64_t denom = k * m;
  std::complex<double> sum{0., 0.};
  for (std::uint64_t a = 1; a < m; ++a) {
    const int j = spec.exponent(static_cast<std::int64_t>(a));
    if (j < 0) continue;
    const std::uint64_t num = (static_cast<std::uint64_t>(j) * m + a * k) % denom;
    sum += std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(denom));
  }
  return sum;
}

/// Number of primitive order-k characters of conductor m: (k-1)^r.
inline std::uint64_t characters_at(int k, const ConductorFactorization& f) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < f.factors.size(); ++i) n *= static_cast<std::uint64_t>(k - 1);
  return n;
}

struct CharacterCount {
  std::uint64_t count = 0;
  double ratio = 0.;  // count / X, an estimate of b_k
};

inline CharacterCount count_characters(int k, std::uint64_t X, bool include_k_squared = true) {
  CharacterCount c;
  for (const auto& f : enumerate_conductors(k, X, 1, include_k_squared)) c.count += characters_at(k, f);
  c.ratio = X == 0 ? 0. : static_cast<double>(c.count) / static_cast<double>(X);
  return c;
}

}  // namespace cyclotwist
