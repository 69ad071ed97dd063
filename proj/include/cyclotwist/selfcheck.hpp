#pragma once

// Quick identity and property checks behind `cyclotwist check`. Each runs in
// well under a second on the built-in catalogue.

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclotwist/curve.hpp"
#include "cyclotwist/dirichlet.hpp"
#include "cyclotwist/lvalue.hpp"
#include "cyclotwist/rmt.hpp"

namespace cyclotwist {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline std::vector<CheckResult> run_self_checks() {
  std::vector<CheckResult> out;
  auto run = [&](std::string name, const std::function<std::string(bool&)>& body) {
    CheckResult r{std::move(name), false, {}};
    try {
      r.detail = body(r.passed);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  };

  run("gauss sums |tau|^2 = m", [](bool& ok) {
    double worst = 0.;
    for (int k : {3, 5, 7}) {
      for (const auto& f : enumerate_conductors(k, 200)) {
        for (const auto& cls : enumerate_classes(k, f)) {
          worst = std::max(worst, std::abs(std::norm(gauss_sum(cls.representative)) - static_cast<double>(f.m)));
        }
      }
    }
    ok = worst < 1e-6;
    return "max deviation " + std::to_string(worst);
  });

  run("coefficient multiplicativity", [](bool& ok) {
    ok = true;
    for (const auto& curve : builtin_curves()) {
      const auto t = an_table(curve, 2000);
      for (std::int64_t a = 2; a <= 44 && ok; ++a) {
        for (std::int64_t b = 2; a * b <= 2000 && ok; ++b) {
          if (std::gcd(a, b) == 1 && t[a * b] != t[a] * t[b]) ok = false;
        }
      }
    }
    return ok ? std::string("a_mn = a_m a_n for coprime m, n") : std::string("violation found");
  });

  run("twisted value vs modular symbols (11a1, k=3, m=7)", [](bool& ok) {
    const LSeries series(find_curve(builtin_curves(), "11a1"), 400'000);
    const double err = check_specialvalue_identity(series, 3, 7);
    ok = err < 1e-3;
    return "max difference " + std::to_string(err);
  });

  run("integrality (11a1, k=3, m <= 300)", [](bool& ok) {
    const auto& curve = find_curve(builtin_curves(), "11a1");
    const LSeries series(curve, afe_terms_bound(curve, 300, 1e-10));
    double worst = 0.;
    for (const auto& f : enumerate_conductors(3, 300, 11)) {
      for (const auto& cls : enumerate_classes(3, f)) worst = std::max(worst, algebraic_vector(series, cls, {}).residual);
    }
    ok = worst < 1e-3;
    return "max residual " + std::to_string(worst);
  });

  run("moment_product(2, N) = N + 1", [](bool& ok) {
    double worst = 0.;
    for (int n = 1; n <= 200; ++n) worst = std::max(worst, std::abs(moment_product(2., n) / (n + 1) - 1));
    ok = worst < 1e-9;
    return "max relative error " + std::to_string(worst);
  });

  run("G(1/2) in (0, 1)", [](bool& ok) {
    const double g = barnes_g_half();
    ok = g > 0. && g < 1.;
    std::ostringstream os;
    os.precision(15);
    os << "G(1/2) = " << g;
    return os.str();
  });
  return out;
}

}  // namespace cyclotwist
