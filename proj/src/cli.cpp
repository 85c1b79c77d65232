#include "amgm/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "amgm/amgm.hpp"
#include "amgm/gap_report.hpp"
#include "amgm/kaczmarz.hpp"
#include "amgm/matrix_io.hpp"
#include "amgm/norms.hpp"
#include "amgm/parallel.hpp"
#include "amgm/search.hpp"
#include "amgm/sweeps.hpp"
#include "amgm/wedge.hpp"
#include "json.hpp"

namespace amgm {

namespace {

using ojson = nlohmann::ordered_json;

/// Raised for configuration problems discovered after option parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A command-line option that is also a config-file field of the same name.
struct Field {
  std::string key;
  CLI::Option* option = nullptr;
  std::function<void(const ojson&)> load;
  std::function<ojson()> dump;
};

class FieldSet {
 public:
  template <typename T>
  CLI::Option* add(CLI::App* app, const std::string& key, T& var, const std::string& help,
                   const std::string& aliases = "") {
    const std::string names = "--" + key + (aliases.empty() ? "" : "," + aliases);
    CLI::Option* opt = app->add_option(names, var, help)->capture_default_str();
    fields_.push_back({key, opt, [&var](const ojson& j) { var = j.get<T>(); },
                       [&var] { return ojson(var); }});
    return opt;
  }

  /// Applies config values for every field not given on the command line.
  void apply(const ojson& cfg, const std::string& command) const {
    for (const auto& [key, value] : cfg.items()) {
      if (key == "command") {
        if (value.get<std::string>() != command) {
          throw UsageError("config was written by '" + value.get<std::string>() +
                           "', not '" + command + "'");
        }
        continue;
      }
      const auto it = std::find_if(fields_.begin(), fields_.end(),
                                   [&](const Field& f) { return f.key == key; });
      if (it == fields_.end()) throw UsageError("config: unknown field '" + key + "'");
      if (it->option->count() > 0) continue;
      try {
        it->load(value);
      } catch (const ojson::exception& e) {
        throw UsageError("config field '" + key + "': " + e.what());
      }
    }
  }

  ojson dump(const std::string& command) const {
    ojson j = {{"command", command}};
    for (const auto& f : fields_) j[f.key] = f.dump();
    return j;
  }

 private:
  std::vector<Field> fields_;
};

struct Globals {
  std::uint64_t seed = 1;
  double epsilon = kDefaultEpsilon;
  std::string out;
  std::string format = "auto";
  int jobs = 0;
  std::string config;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Accepts a JSON config, a JSON report with a "config" member, or a CSV
/// report whose header carries a "# config: {...}" line.
ojson load_config(const std::string& path) {
  const std::string text = read_file(path);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::string tag = "# config: ";
    if (line.rfind(tag, 0) == 0) {
      try {
        return ojson::parse(line.substr(tag.size()));
      } catch (const ojson::exception& e) {
        throw UsageError("config header in '" + path + "': " + e.what());
      }
    }
    if (!line.empty() && line[0] != '#') break;
  }
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw UsageError("config file '" + path + "' is not a JSON object");
  if (j.contains("config") && j["config"].is_object()) return j["config"];
  return j;
}

std::vector<NormSpec> parse_norms(const std::vector<std::string>& names) {
  std::vector<NormSpec> out;
  for (const auto& name : names) out.push_back(parse_norm(name));
  if (out.empty()) throw DomainError("no norms given");
  return out;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& spec : default_norm_catalog()) out.push_back(to_string(spec));
  return out;
}

class Output {
 public:
  Output(const Globals& g, std::ostream& out, std::ostream& err) : g_(g), out_(out), err_(err) {}

  void primary(const std::string& text) const {
    if (g_.out.empty()) {
      out_ << text;
      out_.flush();
    } else {
      write(g_.out, text);
    }
  }

  /// Written next to --out with the given suffix; without --out, to the error
  /// stream when `fallback` is set.
  void secondary(const std::string& suffix, const std::string& text, bool fallback) const {
    if (!g_.out.empty()) {
      write(g_.out + suffix, text);
    } else if (fallback) {
      err_ << text;
    }
  }

  std::ostream& err() const { return err_; }

 private:
  static void write(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + path + "'");
    f << text;
    if (!f) throw UsageError("error writing '" + path + "'");
  }

  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string resolve_format(const Globals& g, const std::string& fallback) {
  return g.format == "auto" ? fallback : g.format;
}

std::string csv_header(const ojson& config) { return "# config: " + config.dump() + "\n"; }

void require_range(long long v, long long lo, long long hi, const std::string& what) {
  if (v < lo || v > hi) {
    throw DomainError(what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "], got " + std::to_string(v));
  }
}

std::string gap_reports_csv(const ojson& config, const std::vector<GapReport>& reports) {
  std::string text = csv_header(config) + gap_csv_header() + "\n";
  for (const auto& r : reports) text += to_csv_row(r) + "\n";
  return text;
}

ojson gap_summary(const std::vector<GapReport>& reports) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;
  std::map<std::string, double> worst;
  for (const auto& r : reports) {
    auto& c = counts[r.check];
    ++c.first;
    if (!r.pass) ++c.second;
    auto it = worst.find(r.check);
    if (it == worst.end() || r.rel_gap < it->second) worst[r.check] = r.rel_gap;
  }
  ojson j = ojson::object();
  for (const auto& [check, c] : counts) {
    j[check] = {{"count", c.first}, {"failures", c.second}, {"worst_rel_gap", worst[check]}};
  }
  return j;
}

std::string gap_reports_json(const ojson& config, const std::vector<GapReport>& reports) {
  ojson arr = ojson::array();
  for (const auto& r : reports) arr.push_back(ojson::parse(to_json(r)));
  ojson j = {{"config", config}, {"summary", gap_summary(reports)}, {"reports", arr}};
  return j.dump(2) + "\n";
}

void print_summary(std::ostream& err, const std::vector<GapReport>& reports) {
  const ojson summary = gap_summary(reports);
  for (const auto& [check, s] : summary.items()) {
    err << check << ": " << s["count"].get<std::size_t>() << " checks, "
        << s["failures"].get<std::size_t>() << " failures, worst rel_gap "
        << format_double(s["worst_rel_gap"].get<double>()) << "\n";
  }
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::uint64_t trials = 200;
  std::vector<int> d{2, 3, 4, 5, 6};
  std::vector<std::string> norm = catalog_names();
};

int run_verify(const Globals& g, const VerifyArgs& a, const ojson& config, const Output& out) {
  const auto norms = parse_norms(a.norm);
  if (a.d.empty()) throw DomainError("verify: no dimensions given");
  for (int d : a.d) require_range(d, 1, 16, "verify: d");
  require_range(static_cast<long long>(a.trials), 1, 10'000'000, "verify: trials");

  std::vector<std::vector<GapReport>> per_trial(a.trials);
  parallel_for(a.trials, resolve_jobs(g.jobs), [&](std::size_t t) {
    per_trial[t] = verify_trial(g.seed, t, a.d, norms, g.epsilon);
  });
  std::vector<GapReport> reports;
  for (auto& v : per_trial) {
    for (auto& r : v) reports.push_back(std::move(r));
  }
  const bool failed = std::any_of(reports.begin(), reports.end(),
                                  [](const GapReport& r) { return !r.pass; });
  const std::string format = resolve_format(g, "csv");
  out.primary(format == "json" ? gap_reports_json(config, reports) : gap_reports_csv(config, reports));
  print_summary(out.err(), reports);
  return failed ? kExitProvedFailure : kExitOk;
}

// ---------------------------------------------------------------- amgm

struct AmgmArgs {
  int m = 3;
  int n = 4;
  int d = 3;
  std::vector<std::string> norm = catalog_names();
  std::uint64_t trials = 100;
};

int run_amgm(const Globals& g, const AmgmArgs& a, const ojson& config, const Output& out) {
  const auto norms = parse_norms(a.norm);
  require_range(a.m, 1, 12, "amgm: m");
  require_range(a.n, 1, 1000, "amgm: n");
  require_range(a.d, 1, 64, "amgm: d");
  require_range(static_cast<long long>(a.trials), 1, 10'000'000, "amgm: trials");
  const auto m = static_cast<std::size_t>(a.m);
  const auto n = static_cast<std::size_t>(a.n);
  const auto d = static_cast<std::size_t>(a.d);
  require_enumerable(n, m, false);
  require_enumerable(n, m, true);
  const auto specs = catalog_for_dim(norms, d);
  if (specs.empty()) throw DomainError("amgm: no norm applies at d=" + std::to_string(d));

  struct TrialOut {
    MatrixFamily family;
    std::vector<GapReport> reports;
  };
  std::vector<TrialOut> trials(a.trials);
  parallel_for(a.trials, resolve_jobs(g.jobs), [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(g.seed, t);
    Rng rng(seed);
    TrialOut& slot = trials[t];
    slot.family = sweep_family(rng, n, d);
    slot.reports = amgm_gaps(slot.family, m, specs, g.epsilon);
    slot.reports.push_back(recht_gap(slot.family, m, g.epsilon));
    for (auto& r : slot.reports) {
      r.seed = seed;
      r.context = "trial=" + std::to_string(t);
    }
  });

  std::vector<GapReport> reports;
  bool proved_failure = false;
  bool verified_candidate = false;
  std::string candidates;
  for (const auto& t : trials) {
    for (const auto& r : t.reports) {
      reports.push_back(r);
      if (r.pass) continue;
      const bool asserted = r.check == "amgm_gap" ? m <= 3 : m <= 2;
      if (asserted) {
        proved_failure = true;
      } else if (r.check == "amgm_gap") {
        const NormSpec spec = parse_norm(std::find_if(r.params.begin(), r.params.end(), [](const auto& p) {
                                           return p.first == "norm";
                                         })->second);
        const auto recheck = amgm_gap(t.family, m, spec, kVerifyEpsilon);
        if (recheck.rel_gap < -kVerifyEpsilon) {
          verified_candidate = true;
          candidates += candidate_dump(t.family, recheck);
        }
      }
    }
  }
  const std::string format = resolve_format(g, "csv");
  out.primary(format == "json" ? gap_reports_json(config, reports) : gap_reports_csv(config, reports));
  if (!candidates.empty()) out.secondary(".candidates.txt", candidates, true);
  print_summary(out.err(), reports);
  if (proved_failure) return kExitProvedFailure;
  return verified_candidate ? kExitCounterexample : kExitOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  int m = 4;
  std::vector<int> n_values{4, 5};
  std::vector<int> d_values{2, 3, 4};
  std::vector<std::string> norms = catalog_names();
  std::uint64_t trials = 10000;
  int perturb_steps = SearchConfig{}.perturb_steps;
};

int run_search(const Globals& g, const SearchArgs& a, const ojson& config, const Output& out) {
  SearchConfig cfg;
  cfg.m = a.m;
  cfg.n_values = a.n_values;
  cfg.d_values = a.d_values;
  cfg.norms = parse_norms(a.norms);
  cfg.trials = a.trials;
  cfg.perturb_steps = a.perturb_steps;
  cfg.seed = g.seed;
  cfg.epsilon = g.epsilon;
  cfg.validate();

  const SearchReport report = search_counterexample(cfg, g.jobs);
  const std::string format = resolve_format(g, "json");
  if (format == "json") {
    ojson j = ojson::parse(report.to_json(cfg));
    j["config"] = config;
    out.primary(j.dump(2) + "\n");
  } else {
    std::string text = csv_header(config) + "trial,min_rel_gap\n";
    for (const auto& [trial, gap] : report.trial_gaps) {
      text += std::to_string(trial) + "," + format_double(gap) + "\n";
    }
    out.primary(text);
  }
  out.err() << "search: " << report.trials << " trials, best rel_gap "
            << format_double(report.best_gap) << ", violation_found "
            << (report.violation_found ? "true" : "false") << ", verified "
            << (report.verified ? "true" : "false") << "\n";
  if (report.violation_found && report.best_instance) {
    out.secondary(".candidate.txt",
                  candidate_dump(report.best_instance->family, report.best_instance->report),
                  report.verified);
  }
  if (report.verified) {
    return static_cast<std::size_t>(cfg.m) <= 3 ? kExitProvedFailure : kExitCounterexample;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- kaczmarz

struct KaczmarzArgs {
  int rows = 12;
  int cols = 4;
  std::uint64_t trials = 200;
  int steps = 120;
  std::vector<std::string> modes{"wr", "wor", "cyclic"};
  std::vector<std::string> norm = catalog_names();
  std::string system;
  int checkpoint_every = 10;
};

int run_kaczmarz(const Globals& g, const KaczmarzArgs& a, const ojson& config, const Output& out) {
  BenchConfig cfg;
  require_range(static_cast<long long>(a.trials), 1, 1'000'000, "kaczmarz: trials");
  require_range(a.steps, 1, 10'000'000, "kaczmarz: steps");
  require_range(a.checkpoint_every, 0, 10'000'000, "kaczmarz: checkpoint_every");
  cfg.trials = a.trials;
  cfg.steps = static_cast<std::size_t>(a.steps);
  cfg.seed = g.seed;
  cfg.checkpoint_every = static_cast<std::size_t>(a.checkpoint_every);
  cfg.norms = parse_norms(a.norm);
  cfg.modes.clear();
  for (const auto& m : a.modes) cfg.modes.push_back(parse_sample_mode(m));
  if (cfg.modes.empty()) throw DomainError("kaczmarz: no sampling modes given");

  LinearSystem sys;
  if (!a.system.empty()) {
    sys = LinearSystem::from_json(read_file(a.system));
    if (!sys.solution) throw DomainError("kaczmarz: system file has no solution; x* is required");
  } else {
    require_range(a.rows, 1, 10'000, "kaczmarz: rows");
    require_range(a.cols, 1, 64, "kaczmarz: cols");
    Rng rng(g.seed);
    sys = random_consistent_system(rng, static_cast<std::size_t>(a.rows),
                                   static_cast<std::size_t>(a.cols));
  }

  const BenchReport report = bench_compare(sys, cfg, g.jobs);
  const std::string summary = report.summary_json(config.dump()) + "\n";
  const std::string format = resolve_format(g, "csv");
  if (format == "json") {
    out.primary(summary);
  } else {
    std::string text = csv_header(config);
    if (sys.n() < sys.d()) {
      text += "# note: underdetermined system (" + std::to_string(sys.n()) + " rows < " +
              std::to_string(sys.d()) + " columns); consistent by construction\n";
    }
    out.primary(text + report.to_csv());
    out.secondary(".summary.json", summary, false);
  }

  bool failed = false;
  for (const auto& series : report.modes) {
    out.err() << to_string(series.mode) << ": final mean error "
              << format_double(series.mean.back()) << ", monotonicity violations "
              << series.monotonicity_violations << ", max product deviation "
              << format_double(series.max_product_deviation) << "\n";
    if (series.monotonicity_violations > 0 || !(series.max_product_deviation <= 1e-8)) failed = true;
  }
  for (const auto& row : report.expected_product_norms) {
    const auto rep = make_gap("expected_product_norm", row.wr, row.wor, g.epsilon);
    if (!rep.pass) {
      out.err() << "expected product norm m=" << row.m << " " << row.norm << ": wor "
                << format_double(row.wor) << " > wr " << format_double(row.wr) << "\n";
      failed = true;
    }
  }
  return failed ? kExitProvedFailure : kExitOk;
}

// ---------------------------------------------------------------- wedge

struct WedgeArgs {
  std::vector<int> d{2, 3, 4, 5, 6};
  std::vector<int> k{1, 2, 3};
  std::uint64_t trials = 100;
  double tol = 1e-7;
};

int run_wedge(const Globals& g, const WedgeArgs& a, const ojson& config, const Output& out) {
  if (a.d.empty() || a.k.empty()) throw DomainError("wedge: d and k lists must be non-empty");
  require_range(static_cast<long long>(a.trials), 1, 10'000'000, "wedge: trials");
  if (!(a.tol > 0.0)) throw DomainError("wedge: tol must be positive");
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (int d : a.d) {
    require_range(d, 1, 64, "wedge: d");
    for (int k : a.k) {
      require_range(k, 1, 64, "wedge: k");
      if (k > d) continue;
      const auto dd = static_cast<std::size_t>(d);
      const auto kk = static_cast<std::size_t>(k);
      if (binomial(dd, kk) > kMaxCompoundSize) {
        throw DomainError("wedge: C(" + std::to_string(d) + "," + std::to_string(k) +
                          ") exceeds the compound size limit " + std::to_string(kMaxCompoundSize));
      }
      shapes.emplace_back(dd, kk);
    }
  }
  if (shapes.empty()) throw DomainError("wedge: no (d, k) pair with k <= d");

  struct TrialOut {
    std::size_t d = 0;
    std::size_t k = 0;
    std::string kind;
    PropertyReport report;
  };
  std::vector<TrialOut> trials(a.trials);
  parallel_for(a.trials, resolve_jobs(g.jobs), [&](std::size_t t) {
    Rng rng(derive_seed(g.seed, t));
    const auto [d, k] = shapes[rng.index(shapes.size())];
    Matrix m;
    std::string kind;
    switch (t % 3) {
      case 0:
        m = sweep_wedge_matrix(rng, d);
        kind = "psd";
        break;
      case 1:
        m = random_gaussian(rng, d);
        kind = "general";
        break;
      default:
        m = random_psd(rng, d, Projector{static_cast<int>(d) - 1});
        kind = "singular-psd";
        break;
    }
    const Matrix b = random_gaussian(rng, d);
    trials[t] = {d, k, kind, verify_wedge_properties(m, b, k, a.tol)};
  });

  bool failed = false;
  double worst = 0.0;
  for (const auto& t : trials) {
    failed = failed || !t.report.ok();
    worst = std::max(worst, t.report.max_deviation());
  }
  const std::string format = resolve_format(g, "json");
  if (format == "json") {
    ojson arr = ojson::array();
    for (std::size_t i = 0; i < trials.size(); ++i) {
      arr.push_back({{"trial", i},
                     {"d", trials[i].d},
                     {"k", trials[i].k},
                     {"kind", trials[i].kind},
                     {"properties", ojson::parse(trials[i].report.to_json())}});
    }
    ojson j = {{"config", config}, {"ok", !failed}, {"max_deviation", worst}, {"reports", arr}};
    out.primary(j.dump(2) + "\n");
  } else {
    std::string text = csv_header(config) + "trial,d,k,kind,property,status,max_deviation\n";
    for (std::size_t i = 0; i < trials.size(); ++i) {
      for (const auto& p : trials[i].report.properties) {
        text += std::to_string(i) + "," + std::to_string(trials[i].d) + "," +
                std::to_string(trials[i].k) + "," + trials[i].kind + "," + p.name + "," +
                to_string(p.status) + "," + format_double(p.max_deviation) + "\n";
      }
    }
    out.primary(text);
  }
  out.err() << "wedge: " << trials.size() << " trials, max deviation " << format_double(worst)
            << (failed ? ", failures present" : ", all pass or skipped") << "\n";
  return failed ? kExitProvedFailure : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix AMGM inequality laboratory", args.empty() ? "amgm_lab" : args.front()};
  app.require_subcommand(1);

  Globals g;
  FieldSet globals;
  globals.add(&app, "seed", g.seed, "Base seed; trial i uses mix64(seed XOR i)");
  globals.add(&app, "epsilon", g.epsilon, "Relative tolerance for inequality checks")
      ->check(CLI::PositiveNumber);
  globals.add(&app, "format", g.format, "Report format: auto, csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("--out", g.out, "Report path (default: standard output)");
  app.add_option("--jobs", g.jobs, "Worker threads, 0 for all cores")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  app.add_option("--config", g.config, "JSON config, or a report whose header holds one");

  VerifyArgs verify_args;
  FieldSet verify_fields;
  CLI::App* verify = app.add_subcommand("verify", "Randomized sweep over the proved inequalities");
  verify_fields.add(verify, "trials", verify_args.trials, "Number of random instances");
  verify_fields.add(verify, "d", verify_args.d, "Matrix dimensions to draw from")->delimiter(',');
  verify_fields.add(verify, "norm", verify_args.norm, "Norms (op, trace, fro, schatten:p, kyfan:k)")
      ->delimiter(',');

  AmgmArgs amgm_args;
  FieldSet amgm_fields;
  CLI::App* amgm_cmd = app.add_subcommand("amgm", "With- vs without-replacement norm means");
  amgm_fields.add(amgm_cmd, "m", amgm_args.m, "Product length");
  amgm_fields.add(amgm_cmd, "n", amgm_args.n, "Family size");
  amgm_fields.add(amgm_cmd, "d", amgm_args.d, "Matrix dimension");
  amgm_fields.add(amgm_cmd, "norm", amgm_args.norm, "Norms")->delimiter(',');
  amgm_fields.add(amgm_cmd, "trials", amgm_args.trials, "Number of random families");

  SearchArgs search_args;
  FieldSet search_fields;
  CLI::App* search = app.add_subcommand("search", "Randomized counterexample search");
  search_fields.add(search, "m", search_args.m, "Product length");
  search_fields.add(search, "n_values", search_args.n_values, "Family sizes", "--n")
      ->delimiter(',');
  search_fields.add(search, "d_values", search_args.d_values, "Dimensions", "--d")
      ->delimiter(',');
  search_fields.add(search, "norms", search_args.norms, "Norms", "--norm")->delimiter(',');
  search_fields.add(search, "trials", search_args.trials, "Trial budget");
  search_fields.add(search, "perturb_steps", search_args.perturb_steps,
                    "Local descent steps per trial");

  KaczmarzArgs kz_args;
  FieldSet kz_fields;
  CLI::App* kaczmarz = app.add_subcommand("kaczmarz", "Kaczmarz sampling benchmark");
  kz_fields.add(kaczmarz, "rows", kz_args.rows, "Rows of the random system");
  kz_fields.add(kaczmarz, "cols", kz_args.cols, "Columns of the random system");
  kz_fields.add(kaczmarz, "trials", kz_args.trials, "Trials per mode");
  kz_fields.add(kaczmarz, "steps", kz_args.steps, "Iterations per trial");
  kz_fields.add(kaczmarz, "modes", kz_args.modes, "Sampling modes: wr, wor, cyclic")
      ->delimiter(',');
  kz_fields.add(kaczmarz, "norm", kz_args.norm, "Norms for the expected product table")
      ->delimiter(',');
  kz_fields.add(kaczmarz, "system", kz_args.system, "JSON system file instead of a random one");
  kz_fields.add(kaczmarz, "checkpoint_every", kz_args.checkpoint_every,
                "Steps between product-identity checks");

  WedgeArgs wedge_args;
  FieldSet wedge_fields;
  CLI::App* wedge = app.add_subcommand("wedge", "Compound matrix property sweep");
  wedge_fields.add(wedge, "d", wedge_args.d, "Dimensions")->delimiter(',');
  wedge_fields.add(wedge, "k", wedge_args.k, "Compound orders")->delimiter(',');
  wedge_fields.add(wedge, "trials", wedge_args.trials, "Number of random instances");
  wedge_fields.add(wedge, "tol", wedge_args.tol, "Deviation tolerance");

  for (CLI::App* sub : {verify, amgm_cmd, search, kaczmarz, wedge}) sub->fallthrough();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::map<CLI::App*, std::pair<std::string, FieldSet*>> commands{
      {verify, {"verify", &verify_fields}},     {amgm_cmd, {"amgm", &amgm_fields}},
      {search, {"search", &search_fields}},     {kaczmarz, {"kaczmarz", &kz_fields}},
      {wedge, {"wedge", &wedge_fields}}};
  CLI::App* active = app.get_subcommands().front();
  const auto& [name, fields] = commands.at(active);

  try {
    if (!g.config.empty()) {
      ojson cfg = load_config(g.config);
      ojson global_part = ojson::object();
      ojson command_part = ojson::object();
      for (const auto& [key, value] : cfg.items()) {
        if (key == "seed" || key == "epsilon" || key == "format") {
          global_part[key] = value;
        } else {
          command_part[key] = value;
        }
      }
      globals.apply(global_part, name);
      fields->apply(command_part, name);
    }
    if (!(g.epsilon > 0.0)) throw DomainError("epsilon must be positive");

    ojson config = fields->dump(name);
    config["seed"] = g.seed;
    config["epsilon"] = g.epsilon;
    config["format"] = g.format;

    const Output output(g, out, err);
    if (active == verify) return run_verify(g, verify_args, config, output);
    if (active == amgm_cmd) return run_amgm(g, amgm_args, config, output);
    if (active == search) return run_search(g, search_args, config, output);
    if (active == kaczmarz) return run_kaczmarz(g, kz_args, config, output);
    return run_wedge(g, wedge_args, config, output);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace amgm
