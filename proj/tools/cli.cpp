#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "nssga/calibration.hpp"
#include "nssga/data_ingest.hpp"
#include "nssga/errors.hpp"

namespace nssga::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

constexpr const char* kToolName = "nssga";

struct GaOptions {
  std::size_t population = 1024;
  std::size_t generations = 10'000;
  std::size_t elite = 3;
  std::size_t tournament = 3;
  double mutation_min = 0.2;
  double mutation_max = 0.5;
  std::size_t returning = 64;
  std::uint64_t seed = 0;
  std::size_t window = 50;
  double alpha = 1.0;
  double line_probability = 0.5;
  double line_alpha = 2.0;
  std::size_t threads = 0;
  std::string betas = "lsq";
};

struct BoundsSpec {
  std::string name;  // preset name or file path as given; empty means "model default"
  std::optional<std::vector<Interval>> intervals;
};

struct CalibrateOptions {
  std::string input;
  std::string date;
  std::string model = "nss";
  BoundsSpec bounds;
  GaOptions ga;
};

struct RollOptions {
  std::string input;
  std::string model = "nss";
  BoundsSpec bounds;
  GaOptions ga;
  std::size_t gens_first = 10'000;
  std::size_t gens_next = 1'000;
  std::size_t carry = 64;
  std::string table;
};

struct FitBondsOptions {
  std::string input;
  std::string as_of;
  BoundsSpec bounds{"usd", std::nullopt};
  std::string yield = "mid";
  GaOptions ga;
};

struct EvalOptions {
  std::string params;
  std::string report;
  std::size_t record = 0;
  std::string tenors;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<double> step;
  std::string grid_from_ois;
};

// ---- shared helpers -------------------------------------------------------

std::string shortest(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(x);
}

double parse_number(std::string_view text, const char* what) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) {
    throw ConfigError(std::string("invalid ") + what + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> values;
  for (const std::string& cell : split_csv_line(text)) values.push_back(parse_number(cell, what));
  return values;
}

GaConfig to_config(const GaOptions& o) {
  GaConfig c;
  c.population_size = o.population;
  c.max_generations = o.generations;
  c.elite_count = o.elite;
  c.tournament_size = o.tournament;
  c.mutation_rate_min = o.mutation_min;
  c.mutation_rate_max = o.mutation_max;
  c.returning_genes = o.returning;
  c.rng_seed = o.seed;
  c.stagnation_window = o.window;
  c.blend_alpha = o.alpha;
  c.line_blend_probability = o.line_probability;
  c.line_blend_alpha = o.line_alpha;
  c.threads = o.threads;
  c.validate();
  return c;
}

json ga_to_json(const GaOptions& o) {
  return json{{"population", o.population},
              {"generations", o.generations},
              {"elite", o.elite},
              {"tournament", o.tournament},
              {"mutation_min", o.mutation_min},
              {"mutation_max", o.mutation_max},
              {"returning", o.returning},
              {"seed", o.seed},
              {"stagnation_window", o.window},
              {"blend_alpha", o.alpha},
              {"line_blend_probability", o.line_probability},
              {"line_blend_alpha", o.line_alpha},
              {"threads", o.threads},
              {"betas", o.betas}};
}

GaOptions ga_from_json(const json& j) {
  GaOptions o;
  o.population = j.at("population").get<std::size_t>();
  o.generations = j.at("generations").get<std::size_t>();
  o.elite = j.at("elite").get<std::size_t>();
  o.tournament = j.at("tournament").get<std::size_t>();
  o.mutation_min = j.at("mutation_min").get<double>();
  o.mutation_max = j.at("mutation_max").get<double>();
  o.returning = j.at("returning").get<std::size_t>();
  o.seed = j.at("seed").get<std::uint64_t>();
  o.window = j.at("stagnation_window").get<std::size_t>();
  o.alpha = j.at("blend_alpha").get<double>();
  o.line_probability = j.at("line_blend_probability").get<double>();
  o.line_alpha = j.at("line_blend_alpha").get<double>();
  o.threads = j.at("threads").get<std::size_t>();
  o.betas = j.at("betas").get<std::string>();
  return o;
}

void add_ga_options(CLI::App& cmd, GaOptions& o) {
  cmd.add_option("--pop", o.population, "Population size (multiple of 4)")->capture_default_str();
  cmd.add_option("--gens", o.generations, "Generations")->capture_default_str();
  cmd.add_option("--elite", o.elite, "Elite genes")->capture_default_str();
  cmd.add_option("--tournament", o.tournament, "Tournament size")->capture_default_str();
  cmd.add_option("--mutation-min", o.mutation_min, "Minimum mutation rate")->capture_default_str();
  cmd.add_option("--mutation-max", o.mutation_max, "Maximum mutation rate")->capture_default_str();
  cmd.add_option("--returning", o.returning, "Winners kept for warm starts")->capture_default_str();
  cmd.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  cmd.add_option("--stagnation-window", o.window, "Generations before mutation ramps up")
      ->capture_default_str();
  cmd.add_option("--alpha", o.alpha, "Blend extrapolation limit")->capture_default_str();
  cmd.add_option("--line-prob", o.line_probability, "Chance of a single-weight blend")
      ->capture_default_str();
  cmd.add_option("--line-alpha", o.line_alpha, "Extrapolation limit of single-weight blends")
      ->capture_default_str();
  cmd.add_option("--threads", o.threads, "Evaluation threads, 0 = all cores")->capture_default_str();
  cmd.add_option("--betas", o.betas,
                 "lsq: also score each gene with least-squares betas; ga: evolved betas only")
      ->check(CLI::IsMember({"ga", "lsq"}))
      ->capture_default_str();
}

// Small populations cannot hold the default number of returning genes.
void default_returning(const CLI::App& cmd, GaOptions& o) {
  if (cmd.count("--returning") == 0) o.returning = std::min(o.returning, o.population / 2);
}

Bounds resolve_bounds(BoundsSpec& spec, ModelKind kind) {
  if (spec.intervals) return Bounds(*spec.intervals);
  if (spec.name.empty()) spec.name = kind == ModelKind::NS ? "ois-ns" : "ois";
  Bounds bounds = [&] {
    if (spec.name == "ois" || spec.name == "ois-ns" || spec.name == "usd") {
      return presets::by_name(spec.name);
    }
    if (!std::filesystem::is_regular_file(spec.name)) {
      throw ConfigError("--bounds '" + spec.name +
                        "' is neither a preset (ois, ois-ns, usd) nor a readable file");
    }
    json j;
    try {
      j = json::parse(read_text_file(spec.name));
    } catch (const json::exception& e) {
      throw ConfigError("bounds file '" + spec.name + "': " + e.what());
    }
    if (!j.is_array()) throw ConfigError("bounds file must hold an array of [lower, upper] pairs");
    std::vector<Interval> intervals;
    for (const json& pair : j) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw ConfigError("bounds file must hold an array of [lower, upper] pairs");
      }
      intervals.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return Bounds(std::move(intervals));
  }();
  check_bounds_for(kind, bounds);
  spec.intervals.emplace(bounds.intervals().begin(), bounds.intervals().end());
  return bounds;
}

json bounds_to_json(const BoundsSpec& spec) {
  json intervals = json::array();
  for (const Interval& i : *spec.intervals) intervals.push_back({i.lower, i.upper});
  return json{{"source", spec.name}, {"intervals", intervals}};
}

BoundsSpec bounds_from_json(const json& j) {
  BoundsSpec spec;
  spec.name = j.at("source").get<std::string>();
  std::vector<Interval> intervals;
  for (const json& pair : j.at("intervals")) {
    intervals.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
  }
  spec.intervals = std::move(intervals);
  return spec;
}

json params_to_json(const CurveParams& p) {
  json j{{"beta0", p.beta0()}, {"beta1", p.beta1()}, {"beta2", p.beta2()}};
  if (p.kind() == ModelKind::NSS) j["beta3"] = p.beta3();
  j["lambda"] = p.lambda();
  if (p.kind() == ModelKind::NSS) j["kappa"] = p.kappa();
  return j;
}

CurveParams params_from_json(ModelKind kind, const json& j) {
  if (kind == ModelKind::NS) {
    return CurveParams::ns(j.at("beta0").get<double>(), j.at("beta1").get<double>(),
                           j.at("beta2").get<double>(), j.at("lambda").get<double>());
  }
  return CurveParams::nss(j.at("beta0").get<double>(), j.at("beta1").get<double>(),
                          j.at("beta2").get<double>(), j.at("beta3").get<double>(),
                          j.at("lambda").get<double>(), j.at("kappa").get<double>());
}

json record_to_json(const CalibrationResult& r, double wall_ms) {
  return json{{"date", to_iso_string(r.date)},
              {"model", std::string(to_string(r.params.kind()))},
              {"params", params_to_json(r.params)},
              {"l2", r.errors.l2},
              {"linf", r.errors.linf},
              {"generations", r.generations},
              {"wall_time_ms", std::round(wall_ms * 10.0) / 10.0}};
}

json report_skeleton(const json& config, std::uint64_t seed) {
  return json{{"tool", kToolName},
              {"version", NSSGA_VERSION},
              {"rng_seed", seed},
              {"config", config},
              {"records", json::array()}};
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << text;
}

// ---- commands -------------------------------------------------------------

json run_calibrate(CalibrateOptions& o) {
  const ModelKind kind = parse_model_kind(o.model);
  const Bounds bounds = resolve_bounds(o.bounds, kind);
  const GaConfig config = to_config(o.ga);
  const auto markets = ois_to_term_structures(parse_ois_csv(read_text_file(o.input)));

  std::vector<const TermStructure*> selected;
  if (o.date.empty()) {
    for (const TermStructure& m : markets) selected.push_back(&m);
  } else {
    const Date date = parse_iso_date(o.date);
    const auto it = std::find_if(markets.begin(), markets.end(),
                                 [&](const TermStructure& m) { return m.as_of() == date; });
    if (it == markets.end()) throw InputError("date " + o.date + " is not in " + o.input);
    selected.push_back(&*it);
  }

  json report = report_skeleton(json{{"command", "calibrate"},
                                     {"input", o.input},
                                     {"date", o.date},
                                     {"model", std::string(to_string(kind))},
                                     {"bounds", bounds_to_json(o.bounds)},
                                     {"ga", ga_to_json(o.ga)}},
                                o.ga.seed);
  for (const TermStructure* market : selected) {
    const auto start = Clock::now();
    const CalibrationResult r = calibrate(*market, kind, bounds, config, {}, parse_beta_fit(o.ga.betas));
    report["records"].push_back(record_to_json(r, elapsed_ms(start)));
  }
  return report;
}

std::string table_csv(const json& records, ModelKind kind) {
  std::ostringstream csv;
  csv << (kind == ModelKind::NSS ? "date,beta0,beta1,beta2,beta3,lambda,kappa,l2,linf\n"
                                 : "date,beta0,beta1,beta2,lambda,l2,linf\n");
  for (const json& r : records) {
    csv << r["date"].get<std::string>();
    for (const auto& [name, value] : r["params"].items()) csv << ',' << shortest(value.get<double>());
    csv << ',' << shortest(r["l2"].get<double>()) << ',' << shortest(r["linf"].get<double>()) << '\n';
  }
  return csv.str();
}

json run_roll(RollOptions& o) {
  const ModelKind kind = parse_model_kind(o.model);
  const Bounds bounds = resolve_bounds(o.bounds, kind);
  const RollingPlan plan{o.gens_first, o.gens_next, o.carry};
  plan.validate();
  // The per-day generation counts come from the plan.
  GaOptions ga = o.ga;
  ga.generations = o.gens_first;
  const GaConfig config = to_config(ga);
  const auto markets = ois_to_term_structures(parse_ois_csv(read_text_file(o.input)));

  json report = report_skeleton(json{{"command", "roll"},
                                     {"input", o.input},
                                     {"model", std::string(to_string(kind))},
                                     {"bounds", bounds_to_json(o.bounds)},
                                     {"ga", ga_to_json(ga)},
                                     {"plan",
                                      {{"gens_first", o.gens_first},
                                       {"gens_next", o.gens_next},
                                       {"carry", o.carry}}}},
                                o.ga.seed);
  auto start = Clock::now();
  calibrate_series(markets, kind, bounds, config, plan,
                   [&](std::size_t, const CalibrationResult& r) {
                     report["records"].push_back(record_to_json(r, elapsed_ms(start)));
                     start = Clock::now();
                   },
                   parse_beta_fit(ga.betas));
  if (!o.table.empty()) {
    std::ostringstream ignored;
    write_text(o.table, table_csv(report["records"], kind), ignored);
  }
  return report;
}

json run_fit_bonds(FitBondsOptions& o) {
  const Bounds bounds = resolve_bounds(o.bounds, ModelKind::NSS);
  const GaConfig config = to_config(o.ga);
  const YieldSide side = o.yield == "bid" ? YieldSide::Bid : YieldSide::Mid;
  const Date as_of = parse_iso_date(o.as_of);
  const auto bonds = parse_bonds_csv(read_text_file(o.input));
  const TermStructure market = bonds_to_term_structure(bonds, as_of, side);

  json report = report_skeleton(json{{"command", "fit-bonds"},
                                     {"input", o.input},
                                     {"as_of", o.as_of},
                                     {"model", "nss"},
                                     {"yield", o.yield},
                                     {"bounds", bounds_to_json(o.bounds)},
                                     {"ga", ga_to_json(o.ga)}},
                                o.ga.seed);
  const auto start = Clock::now();
  const CalibrationResult r = calibrate(market, ModelKind::NSS, bounds, config, {}, parse_beta_fit(o.ga.betas));
  report["records"].push_back(record_to_json(r, elapsed_ms(start)));

  json residuals = json::array();
  for (const BondRecord& bond : bonds) {
    const Tenor tenor = Tenor::from_days(days_between(as_of, bond.maturity));
    const double market_yield =
        (side == YieldSide::Mid ? bond.mid_yield_percent : bond.bid_yield_percent) / 100.0;
    const double fitted = spot_rate(r.params, tenor);
    residuals.push_back(json{{"cusip", bond.cusip},
                             {"maturity", to_iso_string(bond.maturity)},
                             {"tenor_years", tenor.years()},
                             {"market_yield", market_yield},
                             {"fitted_yield", fitted},
                             {"residual", fitted - market_yield}});
  }
  report["residuals"] = std::move(residuals);
  return report;
}

CurveParams params_from_list(const std::vector<double>& v) {
  if (v.size() == 4) return CurveParams::from_vector(ModelKind::NS, v);
  if (v.size() == 6) return CurveParams::from_vector(ModelKind::NSS, v);
  throw ConfigError("--params needs 4 (NS) or 6 (NSS) values: betas, lambda[, kappa]");
}

std::vector<double> eval_grid(const EvalOptions& o) {
  const int sources = static_cast<int>(!o.tenors.empty()) + static_cast<int>(o.from.has_value()) +
                      static_cast<int>(!o.grid_from_ois.empty());
  if (sources != 1) {
    throw ConfigError("give exactly one tenor grid: --tenors, --from/--to/--step or --grid-from-ois");
  }
  if (!o.tenors.empty()) return parse_number_list(o.tenors, "tenor");
  if (!o.grid_from_ois.empty()) {
    const OisTable table = parse_ois_csv(read_text_file(o.grid_from_ois));
    std::vector<double> grid;
    for (long days : table.terms_days) grid.push_back(Tenor::from_days(days).years());
    return grid;
  }
  if (!o.to || !o.step) throw ConfigError("--from needs --to and --step");
  if (!(*o.step > 0.0) || *o.to < *o.from) {
    throw ConfigError("the grid needs step > 0 and to >= from");
  }
  const auto count = static_cast<std::size_t>(std::floor((*o.to - *o.from) / *o.step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = *o.from + static_cast<double>(i) * *o.step;
  return grid;
}

std::string run_eval(const EvalOptions& o) {
  if (o.params.empty() == o.report.empty()) {
    throw ConfigError("give exactly one of --params or --report");
  }
  const CurveParams params = [&] {
    if (!o.params.empty()) return params_from_list(parse_number_list(o.params, "parameter"));
    json report;
    try {
      report = json::parse(read_text_file(o.report));
      const json& records = report.at("records");
      if (o.record >= records.size()) {
        throw ConfigError("report has " + std::to_string(records.size()) + " records, --record " +
                          std::to_string(o.record) + " is out of range");
      }
      const json& rec = records[o.record];
      return params_from_json(parse_model_kind(rec.at("model").get<std::string>()), rec.at("params"));
    } catch (const json::exception& e) {
      throw InputError("report '" + o.report + "' is malformed: " + e.what());
    }
  }();

  std::string csv = "tenor_years,spot_rate,forward_rate\n";
  for (double t : eval_grid(o)) {
    const Tenor tenor(t);
    csv += shortest(t) + ',' + shortest(spot_rate(params, tenor)) + ',' +
           shortest(forward_rate(params, tenor)) + '\n';
  }
  return csv;
}

json run_replay(const std::string& path) {
  json original;
  try {
    original = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw InputError("report '" + path + "' is malformed: " + e.what());
  }
  try {
    const json& c = original.at("config");
    const std::string command = c.at("command").get<std::string>();
    if (command == "calibrate") {
      CalibrateOptions o;
      o.input = c.at("input").get<std::string>();
      o.date = c.at("date").get<std::string>();
      o.model = c.at("model").get<std::string>();
      o.bounds = bounds_from_json(c.at("bounds"));
      o.ga = ga_from_json(c.at("ga"));
      return run_calibrate(o);
    }
    if (command == "roll") {
      RollOptions o;
      o.input = c.at("input").get<std::string>();
      o.model = c.at("model").get<std::string>();
      o.bounds = bounds_from_json(c.at("bounds"));
      o.ga = ga_from_json(c.at("ga"));
      o.gens_first = c.at("plan").at("gens_first").get<std::size_t>();
      o.gens_next = c.at("plan").at("gens_next").get<std::size_t>();
      o.carry = c.at("plan").at("carry").get<std::size_t>();
      return run_roll(o);
    }
    if (command == "fit-bonds") {
      FitBondsOptions o;
      o.input = c.at("input").get<std::string>();
      o.as_of = c.at("as_of").get<std::string>();
      o.yield = c.at("yield").get<std::string>();
      o.bounds = bounds_from_json(c.at("bounds"));
      o.ga = ga_from_json(c.at("ga"));
      return run_fit_bonds(o);
    }
    throw ConfigError("report config names unknown command '" + command + "'");
  } catch (const json::exception& e) {
    throw ConfigError("report '" + path + "' has an incomplete config: " + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nelson-Siegel(-Svensson) yield curve calibration with a genetic algorithm",
               kToolName};
  app.set_version_flag("--version", NSSGA_VERSION);
  app.require_subcommand(1);

  CalibrateOptions cal;
  std::string cal_out;
  auto* cmd_cal = app.add_subcommand("calibrate", "Fit one curve per date of an OIS table");
  cmd_cal->add_option("--input", cal.input, "OIS CSV (Term,<dates>...)")->required();
  cmd_cal->add_option("--date", cal.date, "Only this date (YYYY-MM-DD); default all dates");
  cmd_cal->add_option("--model", cal.model, "ns or nss")
      ->capture_default_str()
      ->check(CLI::IsMember({"ns", "nss"}, CLI::ignore_case));
  cmd_cal->add_option("--bounds", cal.bounds.name,
                      "Preset (ois, ois-ns, usd) or JSON file of [lower, upper] pairs");
  cmd_cal->add_option("--out", cal_out, "Write the JSON report here instead of stdout");
  add_ga_options(*cmd_cal, cal.ga);

  RollOptions roll;
  std::string roll_out;
  auto* cmd_roll = app.add_subcommand("roll", "Warm-started calibration across all dates");
  cmd_roll->add_option("--input", roll.input, "OIS CSV with dates in ascending order")->required();
  cmd_roll->add_option("--model", roll.model, "ns or nss")
      ->capture_default_str()
      ->check(CLI::IsMember({"ns", "nss"}, CLI::ignore_case));
  cmd_roll->add_option("--bounds", roll.bounds.name, "Preset or bounds file");
  cmd_roll->add_option("--gens-first", roll.gens_first, "Generations on the first date")
      ->capture_default_str();
  cmd_roll->add_option("--gens-next", roll.gens_next, "Generations on later dates")
      ->capture_default_str();
  cmd_roll->add_option("--carry", roll.carry, "Winners carried to the next date")
      ->capture_default_str();
  cmd_roll->add_option("--table", roll.table, "Also write a CSV parameter table here");
  cmd_roll->add_option("--out", roll_out, "Write the JSON report here instead of stdout");
  add_ga_options(*cmd_roll, roll.ga);
  cmd_roll->remove_option(cmd_roll->get_option("--gens"));

  EvalOptions ev;
  std::string ev_out;
  auto* cmd_eval = app.add_subcommand("eval", "Sample spot and forward curves as CSV");
  cmd_eval->add_option("--params", ev.params, "b0,b1,b2,lambda or b0,b1,b2,b3,lambda,kappa");
  cmd_eval->add_option("--report", ev.report, "Take parameters from a JSON report");
  cmd_eval->add_option("--record", ev.record, "Record index within --report")->capture_default_str();
  cmd_eval->add_option("--tenors", ev.tenors, "Comma-separated tenors in years");
  cmd_eval->add_option("--from", ev.from, "Grid start (years)");
  cmd_eval->add_option("--to", ev.to, "Grid end (years)");
  cmd_eval->add_option("--step", ev.step, "Grid step (years)");
  cmd_eval->add_option("--grid-from-ois", ev.grid_from_ois, "Use the terms of an OIS CSV");
  cmd_eval->add_option("--out", ev_out, "Write the CSV here instead of stdout");

  FitBondsOptions fb;
  std::string fb_out;
  auto* cmd_fb = app.add_subcommand("fit-bonds", "Fit NSS to bond yields");
  cmd_fb->add_option("--input", fb.input, "Bond CSV")->required();
  cmd_fb->add_option("--as-of", fb.as_of, "Valuation date (YYYY-MM-DD)")->required();
  cmd_fb->add_option("--bounds", fb.bounds.name, "Preset or bounds file")->capture_default_str();
  cmd_fb->add_option("--yield", fb.yield, "mid or bid")
      ->capture_default_str()
      ->check(CLI::IsMember({"mid", "bid"}, CLI::ignore_case));
  cmd_fb->add_option("--out", fb_out, "Write the JSON report here instead of stdout");
  add_ga_options(*cmd_fb, fb.ga);

  std::string replay_report;
  std::string replay_out;
  auto* cmd_replay = app.add_subcommand("replay", "Rerun the configuration echoed in a report");
  cmd_replay->add_option("--report", replay_report, "JSON report")->required();
  cmd_replay->add_option("--out", replay_out, "Write the JSON report here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  default_returning(*cmd_cal, cal.ga);
  default_returning(*cmd_roll, roll.ga);
  default_returning(*cmd_fb, fb.ga);
  if (cmd_roll->count("--carry") == 0) roll.carry = std::min(roll.carry, roll.ga.returning);

  try {
    if (cmd_cal->parsed()) {
      write_text(cal_out, run_calibrate(cal).dump(2) + '\n', out);
    } else if (cmd_roll->parsed()) {
      write_text(roll_out, run_roll(roll).dump(2) + '\n', out);
    } else if (cmd_eval->parsed()) {
      write_text(ev_out, run_eval(ev), out);
    } else if (cmd_fb->parsed()) {
      std::transform(fb.yield.begin(), fb.yield.end(), fb.yield.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      write_text(fb_out, run_fit_bonds(fb).dump(2) + '\n', out);
    } else if (cmd_replay->parsed()) {
      write_text(replay_out, run_replay(replay_report).dump(2) + '\n', out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kConfigError;
  }
  return kOk;
}

}  // namespace nssga::cli
