// Command-line front end: surveys, predictions, single twists and the
// random-matrix helpers.
//
// Exit codes: 0 success, 2 precision failures recorded, 3 configuration error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cyclotwist/cyclotwist.hpp"

namespace {

constexpr int kExitPrecision = 2;
constexpr int kExitConfig = 3;

std::vector<cyclotwist::CurveData> curves_from(const std::string& catalogue) {
  return catalogue.empty() ? cyclotwist::builtin_curves() : cyclotwist::load_catalogue(catalogue);
}

int cmd_survey(cyclotwist::SurveyConfig cfg) {
  const auto res = cyclotwist::run_survey(cfg);
  const auto& s = res.summary;
  std::cout << "classes=" << s.classes << " vanishing_classes=" << s.vanishing_classes
            << " vanishing_characters=" << s.vanishing_characters() << " errors=" << s.errors
            << " max_residual=" << s.max_residual << '\n';
  for (const auto& f : s.failures) std::cerr << "failure: m=" << f.m << " class=" << f.class_id << ": " << f.message << '\n';
  return s.errors > 0 ? kExitPrecision : 0;
}

int cmd_lvalue(const std::string& catalogue, const std::string& label, int k, std::uint64_t m, int class_id, double eps) {
  using namespace cyclotwist;
  const auto curves = curves_from(catalogue);
  const auto& curve = find_curve(curves, label);
  const auto classes = enumerate_classes(k, m);
  if (class_id < 0 || class_id >= static_cast<int>(classes.size())) {
    throw DomainError("class id out of range (0.." + std::to_string(classes.size() - 1) + ")");
  }
  const auto& cls = classes[static_cast<std::size_t>(class_id)];
  detail::require_coprime(curve, m);
  const LSeries series(curve, afe_terms_for(curve, m, AfeParams{eps / 100, 1.3, 0}));
  detail::ClassOutcome outcome = detail::evaluate_class(series, cls, eps);
  std::cout << kSurveyCsvHeader << detail::csv_rows(outcome, k, m, class_id, cls.representative.id());
  if (!outcome.record) {
    std::cerr << "error: " << outcome.failure.message << '\n';
    return kExitPrecision;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vanishing of cyclic twists of elliptic curve L-functions at the central point"};
  app.require_subcommand(1);
  std::string catalogue;
  app.add_option("--catalogue", catalogue, "curve catalogue file (default: built-in seed curves)");

  cyclotwist::SurveyConfig survey_cfg;
  survey_cfg.workers = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  auto* survey = app.add_subcommand("survey", "count vanishing twists over a conductor range");
  survey->add_option("--curve", survey_cfg.curve_label, "curve label")->required();
  survey->add_option("--order", survey_cfg.k, "character order k (odd prime)")->required();
  survey->add_option("--max-cond", survey_cfg.x_max, "largest conductor (inclusive)")->required();
  survey->add_option("--eps", survey_cfg.eps, "target accuracy of each L-value")->capture_default_str();
  survey->add_option("--out", survey_cfg.out, "output CSV")->required();
  survey->add_option("--checkpoint", survey_cfg.checkpoint, "checkpoint file (resume if present)");
  survey->add_option("--jobs", survey_cfg.workers, "worker threads")->capture_default_str();
  survey->add_flag("--include-k-squared,!--exclude-k-squared", survey_cfg.include_k_squared,
                   "include conductors divisible by k^2 (default on)");

  int order = 3;
  std::uint64_t max_cond = 10000;
  double ae_half = 1.0;
  std::string observed;
  auto* predict = app.add_subcommand("predict", "random-matrix prediction for the number of vanishing twists");
  predict->add_option("--order", order, "character order k")->required();
  predict->add_option("--max-cond", max_cond, "conductor bound X")->required();
  predict->add_option("--ae-half", ae_half, "arithmetic factor a_E(-1/2)")->capture_default_str();
  predict->add_option("--observed", observed, "survey CSV to compare against");

  std::string lv_curve = "11a1";
  std::uint64_t lv_cond = 7;
  int lv_class = 0;
  double lv_eps = 1e-10;
  auto* lvalue = app.add_subcommand("lvalue", "evaluate one conjugacy class of twists");
  lvalue->add_option("--curve", lv_curve, "curve label")->required();
  lvalue->add_option("--order", order, "character order k")->required();
  lvalue->add_option("--cond", lv_cond, "character conductor m")->required();
  lvalue->add_option("--class", lv_class, "class id (0-based, as in survey output)")->capture_default_str();
  lvalue->add_option("--eps", lv_eps, "target accuracy")->capture_default_str();

  int size = 4;
  double s = 1.0;
  auto* moment = app.add_subcommand("rmt-moment", "E|det(A - I)|^s over Haar U(N), exact product");
  moment->add_option("--size", size, "matrix size N")->required();
  moment->add_option("--s", s, "exponent s > -1")->required();

  std::int64_t samples = 100000;
  std::uint64_t seed = 1;
  auto* mc = app.add_subcommand("mc-haar", "Monte-Carlo estimate of the same moment");
  mc->add_option("--size", size, "matrix size N")->required();
  mc->add_option("--s", s, "exponent s")->required();
  mc->add_option("--samples", samples, "number of samples")->capture_default_str();
  mc->add_option("--seed", seed, "generator seed")->capture_default_str();

  auto* check = app.add_subcommand("check", "run the built-in identity and property checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*survey) {
      survey_cfg.catalogue_path = catalogue;
      return cmd_survey(survey_cfg);
    }
    if (*predict) {
      const auto model = cyclotwist::make_model(order, static_cast<double>(max_cond), ae_half);
      std::optional<cyclotwist::SurveySummary> obs;
      if (!observed.empty()) obs = cyclotwist::summarize_csv(observed);
      std::cout << cyclotwist::predict_report(order, max_cond, model, obs).to_csv();
      return 0;
    }
    if (*lvalue) return cmd_lvalue(catalogue, lv_curve, order, lv_cond, lv_class, lv_eps);
    if (*moment) {
      std::printf("%.15g\n", cyclotwist::moment_product(s, size));
      return 0;
    }
    if (*mc) {
      const auto est = cyclotwist::mc_haar_moment(size, s, samples, seed,
                                                  static_cast<int>(std::max(1U, std::thread::hardware_concurrency())));
      std::printf("estimate=%.12g stderr=%.6g exact=%.12g\n", est.estimate, est.stderr_,
                  cyclotwist::moment_product(s, size));
      return 0;
    }
    if (*check) {
      bool all = true;
      for (const auto& r : cyclotwist::run_self_checks()) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
      }
      return all ? 0 : 1;
    }
  } catch (const cyclotwist::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cyclotwist::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cyclotwist::PrecisionError& e) {
    std::cerr << "precision failure: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
