#pragma once

// Vanishing surveys over conductor ranges.
//
// Output CSV, one row per Galois conjugate t = 1..d of each class:
//   k,m,class_id,char_spec,t,re_L,im_L,n_coords,residual,vanishing
// char_spec is quoted, n_coords is ';'-joined. A class that fails twice is a
// single row with empty numeric fields and vanishing = "error".
//
// The checkpoint is a key=value file replaced by rename after every
// conductor. It records the CSV length at that point; resuming truncates the
// CSV back to it, so rows written after the last checkpoint are discarded.

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cyclotwist/curve.hpp"
#include "cyclotwist/dirichlet.hpp"
#include "cyclotwist/error.hpp"
#include "cyclotwist/lvalue.hpp"
#include "cyclotwist/rmt.hpp"

namespace cyclotwist {

/// Raised for unusable survey settings or a checkpoint from another run.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct SurveyConfig {
  std::string curve_label = "11a1";
  std::string catalogue_path;  // empty: built-in catalogue
  int k = 3;
  std::uint64_t x_max = 1000;
  bool coprime_only = true;  // skip m sharing a factor with N_E
  double eps = 1e-10;
  std::filesystem::path out;
  std::filesystem::path checkpoint;  // empty: no checkpointing
  int workers = 1;
  bool include_k_squared = true;
  /// Stop after this many conductors in this invocation; 0 runs to the end.
  std::uint64_t max_conductors_this_run = 0;
};

inline constexpr const char* kSurveyCsvHeader = "k,m,class_id,char_spec,t,re_L,im_L,n_coords,residual,vanishing\n";

struct WindowCount {
  std::uint64_t classes = 0;
  std::uint64_t vanishing = 0;
};

struct SurveyFailure {
  std::uint64_t m = 0;
  int class_id = 0;
  std::string message;
};

struct SurveySummary {
  int k = 3;
  std::uint64_t classes = 0;
  std::uint64_t vanishing_classes = 0;
  std::uint64_t errors = 0;
  double max_residual = 0.;
  std::map<int, WindowCount> windows;  // key j: conductors in [2^j, 2^{j+1})
  std::vector<SurveyFailure> failures;

  [[nodiscard]] std::uint64_t characters() const { return classes * static_cast<std::uint64_t>(k - 1); }
  [[nodiscard]] std::uint64_t vanishing_characters() const {
    return vanishing_classes * static_cast<std::uint64_t>(k - 1);
  }

  /// Window totals agree with the overall counts.
  [[nodiscard]] bool consistent() const {
    std::uint64_t c = 0, v = 0;
    for (const auto& [j, w] : windows) {
      c += w.classes;
      v += w.vanishing;
    }
    return c == classes && v == vanishing_classes && errors == failures.size() && vanishing_classes + errors <= classes;
  }
};

inline int dyadic_window(std::uint64_t m) {
  int j = 0;
  while ((m >> static_cast<unsigned>(j + 1)) != 0) ++j;
  return j;
}

struct SurveyResult {
  SurveySummary summary;
  bool completed = false;
  std::uint64_t conductors_done = 0;  // in this invocation
};

namespace detail {

struct ClassOutcome {
  std::optional<TwistRecord> record;
  SurveyFailure failure;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_rows(const ClassOutcome& o, int k, std::uint64_t m, int class_id, const std::string& spec) {
  std::string out;
  const std::string prefix = std::to_string(k) + ',' + std::to_string(m) + ',' + std::to_string(class_id) + ",\"" + spec + "\",";
  if (!o.record) return prefix + ",,,,,error\n";
  const auto& r = *o.record;
  std::string coords;
  for (std::size_t i = 0; i < r.element.coords.size(); ++i) {
    if (i) coords += ';';
    coords += std::to_string(r.element.coords[i]);
  }
  for (std::size_t t = 0; t < r.l_values.size(); ++t) {
    out += prefix + std::to_string(t + 1) + ',' + format_double(r.l_values[t].real()) + ',' +
           format_double(r.l_values[t].imag()) + ',' + coords + ',' + format_double(r.residual) + ',' +
           (r.vanishing ? "1" : "0") + '\n';
  }
  return out;
}

/// One class: retry once at eps/100 on a precision failure; on a sampled 1%
/// of classes re-evaluate with split 1.3 and require the same element.
inline ClassOutcome evaluate_class(const LSeries& series, const ConjugacyClass& cls, double eps) {
  ClassOutcome out;
  out.failure = {cls.representative.conductor(), cls.class_id, ""};
  for (const double e : {eps, eps / 100}) {
    try {
      auto rec = algebraic_vector(series, cls, AfeParams{e, 1.0, 0});
      if ((cls.representative.conductor() * 31 + static_cast<std::uint64_t>(cls.class_id)) % 100 == 0) {
        const auto check = algebraic_vector(series, cls, AfeParams{e, 1.3, 0});
        if (!(check.element == rec.element)) throw PrecisionError("split self-check disagrees");
      }
      out.record = std::move(rec);
      return out;
    } catch (const PrecisionError& err) {
      out.failure.message = err.what();
    } catch (const Error& err) {
      out.failure.message = err.what();
      return out;
    }
  }
  return out;
}

struct ConductorResult {
  std::string rows;
  std::vector<ClassOutcome> outcomes;
};

inline ConductorResult evaluate_conductor(const LSeries& series, int k, const ConductorFactorization& f, double eps) {
  ConductorResult res;
  for (const auto& cls : enumerate_classes(k, f)) {
    auto o = evaluate_class(series, cls, eps);
    res.rows += csv_rows(o, k, f.m, cls.class_id, cls.representative.id());
    res.outcomes.push_back(std::move(o));
  }
  return res;
}

inline void add_to_summary(SurveySummary& s, std::uint64_t m, const ConductorResult& r) {
  auto& w = s.windows[dyadic_window(m)];
  for (const auto& o : r.outcomes) {
    ++s.classes;
    ++w.classes;
    if (!o.record) {
      ++s.errors;
      s.failures.push_back(o.failure);
      continue;
    }
    s.max_residual = std::max(s.max_residual, o.record->residual);
    if (o.record->vanishing) {
      ++s.vanishing_classes;
      ++w.vanishing;
    }
  }
}

inline std::string hexfloat(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

inline std::string config_fingerprint(const SurveyConfig& c) {
  std::ostringstream os;
  os << c.curve_label << '|' << c.k << '|' << c.x_max << '|' << c.coprime_only << '|' << hexfloat(c.eps) << '|'
     << c.include_k_squared;
  return os.str();
}

struct Checkpoint {
  std::string fingerprint;
  std::uint64_t last_conductor = 0;
  std::uint64_t csv_bytes = 0;
  SurveySummary summary;
};

inline void write_checkpoint(const std::filesystem::path& path, const Checkpoint& cp) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write checkpoint " + tmp.string());
    const auto& s = cp.summary;
    os << "config=" << cp.fingerprint << '\n'
       << "last_conductor=" << cp.last_conductor << '\n'
       << "csv_bytes=" << cp.csv_bytes << '\n'
       << "classes=" << s.classes << '\n'
       << "vanishing_classes=" << s.vanishing_classes << '\n'
       << "max_residual=" << hexfloat(s.max_residual) << '\n';
    for (const auto& [j, w] : s.windows) os << "window=" << j << ',' << w.classes << ',' << w.vanishing << '\n';
    for (const auto& f : s.failures) os << "failure=" << f.m << ',' << f.class_id << ',' << f.message << '\n';
    if (!os.flush()) throw Error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path, int k) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  Checkpoint cp;
  cp.summary.k = k;
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed checkpoint line: " + line);
    const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    try {
      if (key == "config") {
        cp.fingerprint = value;
      } else if (key == "last_conductor") {
        cp.last_conductor = std::stoull(value);
      } else if (key == "csv_bytes") {
        cp.csv_bytes = std::stoull(value);
      } else if (key == "classes") {
        cp.summary.classes = std::stoull(value);
      } else if (key == "vanishing_classes") {
        cp.summary.vanishing_classes = std::stoull(value);
      } else if (key == "max_residual") {
        cp.summary.max_residual = std::strtod(value.c_str(), nullptr);
      } else if (key == "window") {
        int j = 0;
        unsigned long long c = 0, v = 0;
        if (std::sscanf(value.c_str(), "%d,%llu,%llu", &j, &c, &v) != 3) throw ConfigError("malformed window");
        cp.summary.windows[j] = {c, v};
      } else if (key == "failure") {
        const auto c1 = value.find(','), c2 = value.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw ConfigError("malformed failure");
        cp.summary.failures.push_back(
            {std::stoull(value.substr(0, c1)), std::stoi(value.substr(c1 + 1, c2 - c1 - 1)), value.substr(c2 + 1)});
      } else {
        throw ConfigError("unknown checkpoint key: " + key);
      }
    } catch (const std::logic_error&) {
      throw ConfigError("malformed checkpoint line: " + line);
    }
  }
  cp.summary.errors = cp.summary.failures.size();
  return cp;
}

inline void write_summary_file(const std::filesystem::path& path, const SurveyConfig& c, const SurveySummary& s,
                               bool completed) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write summary " + path.string());
  os << "curve=" << c.curve_label << '\n'
     << "k=" << c.k << '\n'
     << "max_conductor=" << c.x_max << " (inclusive)\n"
     << "coprime_to_curve_conductor=" << (c.coprime_only ? 1 : 0) << '\n'
     << "include_k_squared=" << (c.include_k_squared ? 1 : 0) << '\n'
     << "eps=" << format_double(c.eps) << '\n'
     << "completed=" << (completed ? 1 : 0) << '\n'
     << "classes=" << s.classes << '\n'
     << "characters=" << s.characters() << '\n'
     << "vanishing_classes=" << s.vanishing_classes << '\n'
     << "vanishing_characters=" << s.vanishing_characters() << '\n'
     << "errors=" << s.errors << '\n'
     << "max_residual=" << format_double(s.max_residual) << '\n';
  for (const auto& [j, w] : s.windows) {
    os << "window=[" << (std::uint64_t{1} << static_cast<unsigned>(j)) << ','
       << (std::uint64_t{1} << static_cast<unsigned>(j + 1)) << ") classes=" << w.classes
       << " vanishing=" << w.vanishing << '\n';
  }
  for (const auto& f : s.failures) os << "failure=m:" << f.m << " class:" << f.class_id << ' ' << f.message << '\n';
}

}  // namespace detail

inline void validate(const SurveyConfig& c) {
  if (!is_odd_prime(c.k)) throw ConfigError("order k must be an odd prime");
  if (c.x_max < 3) throw ConfigError("max conductor must be at least 3");
  if (!(c.eps > 0. && c.eps <= 1e-6)) throw ConfigError("eps must lie in (0, 1e-6]");
  if (c.workers < 1) throw ConfigError("worker count must be positive");
  if (c.out.empty()) throw ConfigError("output path required");
}

inline CurveData survey_curve(const SurveyConfig& c) {
  try {
    const auto curves = c.catalogue_path.empty() ? builtin_curves() : load_catalogue(c.catalogue_path);
    return find_curve(curves, c.curve_label);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

/// Coefficient table large enough for every class the survey can meet,
/// including the eps/100 retry and the split-1.3 self-check.
inline std::shared_ptr<const CoefficientTable> survey_table(const CurveData& curve, const SurveyConfig& c) {
  return std::make_shared<const CoefficientTable>(an_table(curve, afe_terms_bound(curve, c.x_max, c.eps / 100, 1.3)));
}

/// Runs (or resumes) a survey. `series` may be supplied to share one
/// coefficient table across runs; it must match the configured curve.
inline SurveyResult run_survey(const SurveyConfig& config, const LSeries* series = nullptr) {
  validate(config);
  std::optional<LSeries> owned;
  if (series == nullptr) {
    const CurveData curve = survey_curve(config);
    owned.emplace(curve, survey_table(curve, config));
    series = &*owned;
  } else if (series->curve().label != config.curve_label) {
    throw ConfigError("coefficient table belongs to another curve");
  }
  const CurveData& curve = series->curve();
  const std::uint64_t coprime = config.coprime_only ? static_cast<std::uint64_t>(curve.conductor) : 1;
  // Without the coprime filter, twists sharing a factor with N_E are reported as error rows.
  const auto conductors = enumerate_conductors(config.k, config.x_max, coprime, config.include_k_squared);

  const std::string fingerprint = detail::config_fingerprint(config);
  detail::Checkpoint cp{fingerprint, 0, 0, SurveySummary{}};
  cp.summary.k = config.k;
  bool resumed = false;
  if (!config.checkpoint.empty()) {
    if (auto prior = detail::read_checkpoint(config.checkpoint, config.k)) {
      if (prior->fingerprint != fingerprint) throw ConfigError("checkpoint belongs to a different survey configuration");
      cp = *prior;
      resumed = true;
    }
  }

  if (resumed) {
    if (!std::filesystem::exists(config.out) || std::filesystem::file_size(config.out) < cp.csv_bytes) {
      throw ConfigError("survey output is shorter than its checkpoint");
    }
    std::filesystem::resize_file(config.out, cp.csv_bytes);
  } else {
    std::ofstream init(config.out, std::ios::binary | std::ios::trunc);
    if (!init) throw ConfigError("cannot open output " + config.out.string());
    init << kSurveyCsvHeader;
    init.close();
    cp.csv_bytes = std::string(kSurveyCsvHeader).size();
  }
  std::ofstream csv(config.out, std::ios::binary | std::ios::app);
  if (!csv) throw ConfigError("cannot open output " + config.out.string());

  const auto first = std::upper_bound(conductors.begin(), conductors.end(), cp.last_conductor,
                                      [](std::uint64_t m, const ConductorFactorization& f) { return m < f.m; });
  std::vector<ConductorFactorization> todo(first, conductors.end());
  if (config.max_conductors_this_run > 0 && todo.size() > config.max_conductors_this_run) {
    todo.resize(config.max_conductors_this_run);
  }
  const bool reaches_end = static_cast<std::size_t>(conductors.end() - first) == todo.size();

  SurveyResult result;
  const auto batch = static_cast<std::size_t>(config.workers) * 4;
  for (std::size_t start = 0; start < todo.size(); start += batch) {
    const std::size_t stop = std::min(todo.size(), start + batch);
    std::vector<detail::ConductorResult> results(stop - start);
    std::atomic<std::size_t> next{start};
    auto work = [&] {
      for (std::size_t i = next++; i < stop; i = next++) {
        results[i - start] = detail::evaluate_conductor(*series, config.k, todo[i], config.eps);
      }
    };
    if (config.workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (int w = 0; w < config.workers; ++w) pool.emplace_back(work);
    }
    for (std::size_t i = start; i < stop; ++i) {
      const auto& r = results[i - start];
      csv << r.rows;
      if (!csv.flush()) throw Error("write failed: " + config.out.string());
      detail::add_to_summary(cp.summary, todo[i].m, r);
      cp.csv_bytes += r.rows.size();
      cp.last_conductor = todo[i].m;
      if (!config.checkpoint.empty()) detail::write_checkpoint(config.checkpoint, cp);
      ++result.conductors_done;
    }
  }
  result.summary = cp.summary;
  result.completed = reaches_end;
  detail::write_summary_file(config.out.string() + ".summary", config, cp.summary, result.completed);
  return result;
}

// ---------------------------------------------------------------------------
// Reading survey CSVs back

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace detail

/// Rebuilds the class-level summary from a survey CSV.
inline SurveySummary summarize_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line + '\n' != kSurveyCsvHeader) throw ConfigError("not a survey CSV: " + path.string());
  SurveySummary s;
  bool have_k = false;
  std::pair<std::uint64_t, int> last{0, -1};
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 10) throw ConfigError("malformed survey row: " + line);
    int k = 0;
    std::uint64_t m = 0;
    int class_id = 0;
    try {
      k = std::stoi(f[0]);
      m = std::stoull(f[1]);
      class_id = std::stoi(f[2]);
    } catch (const std::logic_error&) {
      throw ConfigError("malformed survey row: " + line);
    }
    if (!have_k) {
      s.k = k;
      have_k = true;
    } else if (k != s.k) {
      throw ConfigError("survey CSV mixes orders");
    }
    if (std::pair{m, class_id} == last) continue;  // further conjugates of the same class
    last = {m, class_id};
    auto& w = s.windows[dyadic_window(m)];
    ++s.classes;
    ++w.classes;
    if (f[9] == "error") {
      ++s.errors;
      s.failures.push_back({m, class_id, "error"});
    } else {
      s.max_residual = std::max(s.max_residual, std::strtod(f[8].c_str(), nullptr));
      if (f[9] == "1") {
        ++s.vanishing_classes;
        ++w.vanishing;
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Prediction reports

struct WindowComparison {
  std::uint64_t lo = 0, hi = 0;  // [lo, hi)
  std::uint64_t observed_vanishing_characters = 0;
  double heuristic = 0.;
};

struct PredictionReport {
  RmtModel model;
  std::uint64_t X = 0;
  HeuristicSum heuristic;
  std::vector<WindowComparison> windows;

  [[nodiscard]] std::string to_csv() const {
    std::ostringstream os;
    os << "k,X,N,sum,classification,C_E,aE_half\n"
       << model.k << ',' << X << ',' << model.matrix_size() << ',' << detail::format_double(heuristic.sum) << ",\""
       << to_string(heuristic.classification) << "\"," << detail::format_double(model.C_E) << ','
       << detail::format_double(model.ae_half) << '\n';
    if (!windows.empty()) {
      os << "\nwindow_lo,window_hi,observed_vanishing_characters,heuristic_sum\n";
      for (const auto& w : windows) {
        os << w.lo << ',' << w.hi << ',' << w.observed_vanishing_characters << ',' << detail::format_double(w.heuristic)
           << '\n';
      }
    }
    return os.str();
  }
};

inline PredictionReport predict_report(int k, std::uint64_t X, const RmtModel& model,
                                       const std::optional<SurveySummary>& observed = std::nullopt) {
  PredictionReport r{model, X, heuristic_sum(k, X, model), {}};
  if (!observed) return r;
  if (observed->k != k) throw DomainError("observed survey has a different order");
  // Per-window heuristic mass over the same admissible conductors.
  std::map<int, double> mass;
  for (const auto& f : enumerate_conductors(k, X)) {
    mass[dyadic_window(f.m)] += static_cast<double>(characters_at(k, f)) * class_vanishing_probability(k, f.m, model);
  }
  std::map<int, std::uint64_t> seen;
  for (const auto& [j, w] : observed->windows) seen[j] = w.vanishing * static_cast<std::uint64_t>(k - 1);
  for (const auto& [j, v] : mass) seen.try_emplace(j, 0);
  for (const auto& [j, v] : seen) {
    const auto lo = std::uint64_t{1} << static_cast<unsigned>(j);
    r.windows.push_back({lo, lo * 2, v, mass.count(j) ? mass[j] : 0.});
  }
  return r;
}

}  // namespace cyclotwist
