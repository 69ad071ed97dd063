#pragma once

// Twisted central values L_E(1, chi) by the approximate functional equation,
// the algebraic invariant n_E(chi) in Z[xi_k]^+, and the smoothed
// modular-symbol route used to cross-check both.
//
// With Q = m sqrt(N_E) and root number eps(chi) = w_E chi(N_E) tau(chi)^2 / m,
//   L_E(1, chi) = sum a_n chi(n)/n e^{-2 pi n/(A Q)} + eps(chi) sum a_n conj(chi(n))/n e^{-2 pi n A/Q}
// for any split A > 0. All Galois conjugates chi^{sigma_t} share one pass
// over n: the terms are bucketed by the exponent j of chi(n) = xi_k^j.

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cyclotwist/curve.hpp"
#include "cyclotwist/cyclotomic.hpp"
#include "cyclotwist/dirichlet.hpp"
#include "cyclotwist/error.hpp"

namespace cyclotwist {

/// A curve together with its coefficients as doubles a_n / n.
class LSeries {
 public:
  LSeries(CurveData curve, std::int64_t n_max) : curve_(std::move(curve)) {
    table_ = std::make_shared<const CoefficientTable>(an_table(curve_, n_max));
    init();
  }
  LSeries(CurveData curve, std::shared_ptr<const CoefficientTable> table)
      : curve_(std::move(curve)), table_(std::move(table)) {
    init();
  }

  [[nodiscard]] const CurveData& curve() const { return curve_; }
  [[nodiscard]] const CoefficientTable& table() const { return *table_; }
  [[nodiscard]] std::shared_ptr<const CoefficientTable> shared_table() const { return table_; }
  [[nodiscard]] std::int64_t n_max() const { return table_->n_max; }
  [[nodiscard]] double an_over_n(std::int64_t n) const { return an_over_n_[static_cast<std::size_t>(n)]; }
  [[nodiscard]] const std::vector<double>& an_over_n() const { return an_over_n_; }

 private:
  void init() {
    an_over_n_.assign(static_cast<std::size_t>(table_->n_max) + 1, 0.);
    for (std::int64_t n = 1; n <= table_->n_max; ++n) {
      an_over_n_[static_cast<std::size_t>(n)] = static_cast<double>((*table_)[n]) / static_cast<double>(n);
    }
  }

  CurveData curve_;
  std::shared_ptr<const CoefficientTable> table_;
  std::vector<double> an_over_n_;
};

struct AfeParams {
  double eps = 1e-10;   // target absolute accuracy of L
  double split = 1.0;   // A
  std::int64_t n_max = 0;  // 0: derive from eps and split
};

/// Truncation for conductor m: ceil(max(A, 1/A) Q/(2 pi) (ln(1/eps) + 2 ln(2 + Q))), Q = m sqrt(N).
inline std::int64_t afe_terms_for(const CurveData& curve, std::uint64_t m, const AfeParams& params) {
  if (params.n_max > 0) return params.n_max;
  const double q = static_cast<double>(m) * std::sqrt(static_cast<double>(curve.conductor));
  return afe_truncation(q, params.eps, params.split);
}

/// Largest coefficient index any twist of conductor <= X can request.
inline std::int64_t afe_terms_bound(const CurveData& curve, std::uint64_t X, double eps, double max_split = 1.3) {
  return afe_terms_for(curve, X, AfeParams{eps, max_split, 0});
}

namespace detail {

struct BucketSums {
  std::vector<double> direct;  // weight e^{-2 pi n/(A Q)}
  std::vector<double> dual;    // weight e^{-2 pi n A/Q}
  std::int64_t terms = 0;
};

inline BucketSums bucket_sums(const LSeries& series, const std::vector<std::int16_t>& exps, int k, double q,
                              double split, std::int64_t n_max) {
  BucketSums s{std::vector<double>(static_cast<std::size_t>(k), 0.), std::vector<double>(static_cast<std::size_t>(k), 0.),
               n_max};
  const double c_direct = 2 * std::numbers::pi / (split * q);
  const double c_dual = 2 * std::numbers::pi * split / q;
  const double r_direct = std::exp(-c_direct), r_dual = std::exp(-c_dual);
  const auto m = static_cast<std::int64_t>(exps.size());
  const auto& coeff = series.an_over_n();
  double w_direct = 1., w_dual = 1.;
  std::int64_t residue = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    // refresh the running powers so rounding drift stays bounded
    if ((n & 1023) == 0) {
      w_direct = std::exp(-c_direct * static_cast<double>(n - 1));
      w_dual = std::exp(-c_dual * static_cast<double>(n - 1));
    }
    w_direct *= r_direct;
    w_dual *= r_dual;
    if (++residue == m) residue = 0;
    const int j = exps[static_cast<std::size_t>(residue)];
    const double c = coeff[static_cast<std::size_t>(n)];
    if (j < 0 || c == 0.) continue;
    s.direct[static_cast<std::size_t>(j)] += c * w_direct;
    s.dual[static_cast<std::size_t>(j)] += c * w_dual;
  }
  return s;
}

inline void require_coprime(const CurveData& curve, std::uint64_t m) {
  if (std::gcd(m, static_cast<std::uint64_t>(curve.conductor)) != 1) {
    throw DomainError("twist conductor not coprime to curve conductor");
  }
}

/// L(1, chi^{sigma_t}) from precomputed buckets of chi.
inline std::complex<double> conjugate_value(const BucketSums& s, const CharacterSpec& spec, int t, int w_e,
                                            std::int64_t conductor_e) {
  const int k = spec.k;
  std::complex<double> direct{0., 0.}, dual{0., 0.};
  for (int j = 0; j < k; ++j) {
    direct += s.direct[static_cast<std::size_t>(j)] * root_of_unity(k, std::int64_t{t} * j);
    dual += s.dual[static_cast<std::size_t>(j)] * root_of_unity(k, -std::int64_t{t} * j);
  }
  const CharacterSpec conj = conjugate_char(spec, t);
  const std::complex<double> tau = gauss_sum(conj);
  const std::complex<double> root = static_cast<double>(w_e) * eval_char(conj, conductor_e) * tau * tau /
                                    static_cast<double>(spec.modulus.m);
  return direct + root * dual;
}

}  // namespace detail

/// L_E(1, chi^{sigma_t}) for each requested t.
inline std::vector<std::complex<double>> conjugate_l_values(const LSeries& series, const CharacterSpec& spec,
                                                            const AfeParams& params, std::span<const int> ts) {
  const auto& curve = series.curve();
  const std::uint64_t m = spec.modulus.m;
  detail::require_coprime(curve, m);
  const std::int64_t n_max = afe_terms_for(curve, m, params);
  if (n_max > series.n_max()) throw DomainError("insufficient coefficients");
  const double q = static_cast<double>(m) * std::sqrt(static_cast<double>(curve.conductor));
  const auto sums = detail::bucket_sums(series, spec.exponent_table(), spec.k, q, params.split, n_max);
  std::vector<std::complex<double>> out;
  out.reserve(ts.size());
  for (int t : ts) out.push_back(detail::conjugate_value(sums, spec, t, curve.root_number, curve.conductor));
  return out;
}

inline std::complex<double> l_value_afe(const LSeries& series, const CharacterSpec& spec, const AfeParams& params) {
  const int one[] = {1};
  return conjugate_l_values(series, spec, params, one).front();
}

struct TwistRecord {
  int k = 3;
  std::uint64_t m = 0;
  int class_id = 0;
  std::string char_spec;
  std::vector<std::complex<double>> l_values;  // L(1, chi^{sigma_t}), t = 1..d
  std::vector<double> conjugates;              // real parts of sigma_t(n_E(chi))
  double max_imag = 0.;                        // largest |Im| discarded from the n_t
  RealCycloElement element;
  double residual = 0.;
  bool vanishing = false;
  std::int64_t afe_terms = 0;
};

/// Imaginary parts of the unrotated values above this multiple of the
/// propagated truncation error are treated as a phase bug, not noise.
inline constexpr double kImagTolerance = 10.;
/// Roundings with residual at or above this are rejected.
inline constexpr double kResidualLimit = 0.1;

/// sigma_t(n_E(chi)) for t = 1..d and the rounded element of Z[theta].
inline TwistRecord algebraic_vector(const LSeries& series, const ConjugacyClass& cls, const AfeParams& params) {
  const auto& curve = series.curve();
  const CharacterSpec& spec = cls.representative;
  const int k = spec.k;
  const int d = real_degree(k);
  const std::uint64_t m = spec.modulus.m;
  std::vector<int> ts(static_cast<std::size_t>(d));
  std::iota(ts.begin(), ts.end(), 1);

  TwistRecord rec;
  rec.k = k;
  rec.m = m;
  rec.class_id = cls.class_id;
  rec.char_spec = spec.id();
  rec.l_values = conjugate_l_values(series, spec, params, ts);
  rec.afe_terms = afe_terms_for(curve, m, params);

  const double omega = curve.real_period;
  const int e_n = spec.exponent(curve.conductor);  // chi(N_E) = xi^{e_n}
  const double l_scale = 2 * std::sqrt(static_cast<double>(m)) / omega;
  rec.conjugates.resize(static_cast<std::size_t>(d));
  for (int t = 1; t <= d; ++t) {
    const auto idx = static_cast<std::size_t>(t - 1);
    const std::complex<double> tau_conj = gauss_sum(conjugate_char(spec, k - t));
    const std::complex<double> l_alg = 2. * tau_conj * rec.l_values[idx] / omega;
    // chi^{sigma_t}(N_E)^{-(k+1)/2}, exact in the exponent
    std::complex<double> n_t = l_alg * root_of_unity(k, -std::int64_t{t} * e_n * ((k + 1) / 2));
    double scale = l_scale;
    if (curve.root_number == -1) {
      n_t *= root_of_unity(k, -t) - root_of_unity(k, t);
      scale *= 2.;
    }
    const double tol = kImagTolerance * params.eps * scale * std::max(1., std::abs(n_t)) + 1e-9;
    rec.max_imag = std::max(rec.max_imag, std::abs(n_t.imag()));
    if (std::abs(n_t.imag()) > tol) throw Error("rotation inconsistency (check w_E / tau)");
    rec.conjugates[idx] = n_t.real();
  }
  const auto rounding = round_to_lattice(rec.conjugates, k);
  rec.element = rounding.element;
  rec.residual = rounding.residual;
  if (rec.residual >= kResidualLimit) throw PrecisionError("insufficient precision");
  rec.vanishing = rec.element.is_zero();
  return rec;
}

/// Abel-smoothed lambda^+(a, m) = 2 sum a_n/n cos(2 pi a n/m), extrapolated to
/// zero smoothing from delta0, delta0/2, delta0/4. delta0 <= 0 selects
/// min(1e-3, 4 pi^2 / (40 N m^2)); the smoothing error near the cusp a/m is
/// about 2 exp(-4 pi^2 / (N m^2 delta)).
inline double lambda_plus_smoothed(const LSeries& series, std::int64_t a, std::int64_t m, double delta0 = 0.) {
  if (m < 1 || a <= 0 || a >= m) throw DomainError("lambda_plus: need 0 < a < m");
  const auto& curve = series.curve();
  if (delta0 <= 0.) {
    const double width = static_cast<double>(curve.conductor) * static_cast<double>(m) * static_cast<double>(m);
    delta0 = std::min(1e-3, 4 * std::numbers::pi * std::numbers::pi / (40 * width));
  }
  auto smoothed = [&](double delta) {
    const auto n_max = static_cast<std::int64_t>(std::ceil(40. / delta));
    if (n_max > series.n_max()) throw DomainError("insufficient coefficients");
    const double r = std::exp(-delta);
    double w = 1., sum = 0.;
    std::int64_t residue = 0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
      if ((n & 1023) == 0) w = std::exp(-delta * static_cast<double>(n - 1));
      w *= r;
      residue += a;
      if (residue >= m) residue -= m;
      const double c = series.an_over_n(n);
      if (c == 0.) continue;
      sum += c * w * std::cos(2 * std::numbers::pi * static_cast<double>(residue) / static_cast<double>(m));
    }
    return 2 * sum;
  };
  const double s1 = smoothed(delta0), s2 = smoothed(delta0 / 2), s4 = smoothed(delta0 / 4);
  const double limit = 0.05 * curve.real_period;
  if (std::abs(s1 - s2) > limit || std::abs(s2 - s4) > limit) throw Error("smoothing failed");
  const double r1 = 2 * s2 - s1, r2 = 2 * s4 - s2;
  return (4 * r2 - r1) / 3;
}

/// Modular symbols relative to the cusp 0: (lambda^+(a, m) - 2 L_E(1)) / Omega_E,
/// rounded. For gcd(m, N_E) = 1 the cusp a/m is Gamma_0(N_E)-equivalent to 0,
/// so these are integers; the shift cancels in every sum against a nontrivial
/// character.
inline std::vector<std::int64_t> modular_symbols(const LSeries& series, std::int64_t m) {
  const auto& curve = series.curve();
  const double root_n = std::sqrt(static_cast<double>(curve.conductor));
  const double l1 =
      l_value_untwisted(series.table(), curve.conductor, curve.root_number, 1., afe_truncation(root_n, 1e-13));
  std::vector<std::int64_t> symbols(static_cast<std::size_t>(m), 0);
  for (std::int64_t a = 1; a < m; ++a) {
    if (std::gcd(a, m) != 1) continue;
    symbols[static_cast<std::size_t>(a)] =
        std::llround((lambda_plus_smoothed(series, a, m) - 2 * l1) / curve.real_period);
  }
  return symbols;
}

/// Largest |L_AFE(1, chi) - Omega/(2 tau(conj chi)) sum_a conj(chi(a)) Lambda(a, m)|
/// over every primitive order-k character mod m.
inline double check_specialvalue_identity(const LSeries& series, int k, std::uint64_t m, double eps = 1e-10) {
  const auto classes = enumerate_classes(k, m);
  const auto& curve = series.curve();
  detail::require_coprime(curve, m);
  const auto symbols = modular_symbols(series, static_cast<std::int64_t>(m));
  double worst = 0.;
  for (const auto& cls : classes) {
    for (int t = 1; t < k; ++t) {
      const CharacterSpec chi = conjugate_char(cls.representative, t);
      const CharacterSpec chi_bar = conjugate_char(cls.representative, k - t);
      std::complex<double> sum{0., 0.};
      for (std::uint64_t a = 1; a < m; ++a) sum += eval_char(chi_bar, static_cast<std::int64_t>(a)) * static_cast<double>(symbols[a]);
      const std::complex<double> via_symbols = curve.real_period / (2. * gauss_sum(chi_bar)) * sum;
      const std::complex<double> via_afe = l_value_afe(series, chi, AfeParams{eps, 1., 0});
      worst = std::max(worst, std::abs(via_afe - via_symbols));
    }
  }
  return worst;
}

}  // namespace cyclotwist
