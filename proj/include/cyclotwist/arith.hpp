#pragma once

// Small integer number theory shared by the curve and character code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace cyclotwist::arith {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) return n == p;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Trial-division factorisation, primes ascending.
inline std::vector<std::pair<std::uint64_t, int>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Smallest-prime-factor sieve on [0, n].
inline std::vector<std::uint32_t> spf_sieve(std::uint32_t n) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(n) + 1, 0);
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::uint64_t j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = i;
    }
  }
  return spf;
}

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

/// Smallest generator of the cyclic group (Z/p^e Z)^*, p an odd prime.
/// Order testing against the prime divisors of p-1 (and p when e > 1).
inline std::uint64_t primitive_root(std::uint64_t p, int e = 1) {
  std::uint64_t modulus = 1;
  for (int i = 0; i < e; ++i) modulus *= p;
  const std::uint64_t order = modulus / p * (p - 1);
  std::vector<std::uint64_t> divisors;
  for (const auto& [q, mult] : factor(order)) divisors.push_back(q);
  for (std::uint64_t g = 2; g < modulus; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (std::uint64_t q : divisors) {
      if (powmod(g, order / q, modulus) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // modulus 2
}

/// Baby-step giant-step discrete log of `a` to base `g` modulo `m`
/// in a group of the given order. Returns -1 when no log exists.
inline std::int64_t discrete_log(std::uint64_t g, std::uint64_t a, std::uint64_t m,
                                 std::uint64_t order) {
  std::uint64_t steps = 1;
  while (steps * steps < order) ++steps;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> baby;
  baby.reserve(steps);
  std::uint64_t cur = 1;
  for (std::uint64_t j = 0; j < steps; ++j) {
    baby.emplace_back(cur, j);
    cur = mulmod(cur, g, m);
  }
  std::sort(baby.begin(), baby.end());
  // giant = g^{-steps}
  const std::uint64_t giant = powmod(powmod(g, steps, m), order - 1, m);
  std::uint64_t gamma = a % m;
  for (std::uint64_t i = 0; i < steps; ++i) {
    auto it = std::lower_bound(baby.begin(), baby.end(), std::make_pair(gamma, std::uint64_t{0}));
    if (it != baby.end() && it->first == gamma) return static_cast<std::int64_t>(i * steps + it->second);
    gamma = mulmod(gamma, giant, m);
  }
  return -1;
}

}  // namespace cyclotwist::arith
