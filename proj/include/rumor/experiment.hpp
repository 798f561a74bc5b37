#pragma once

// Scaling experiments: sweep a graph family, measure spreading times, divide by
// a bound model and report the drift (max ratio / min ratio) of the sweep.
// The constants in the bounds are unknown, so growth rates are compared through drift
// rather than absolute levels. Logs are base 2 throughout.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rumor/errors.hpp"
#include "rumor/expansion.hpp"
#include "rumor/family.hpp"
#include "rumor/generators.hpp"
#include "rumor/io.hpp"
#include "rumor/protocols.hpp"
#include "rumor/rng.hpp"

namespace rumor {

inline constexpr double kDefaultDriftThreshold = 2.0;

enum class BoundModel {
  logn,                      // log n
  logn_logdelta_over_alpha,  // log n * log Delta / alpha
  logn_over_phi,             // log n / phi
  logn_over_xi,              // log n / xi
  linear_n,                  // n
};

inline BoundModel parse_bound_model(const std::string& s) {
  if (s == "logn") return BoundModel::logn;
  if (s == "logn_logdelta_over_alpha") return BoundModel::logn_logdelta_over_alpha;
  if (s == "logn_over_phi") return BoundModel::logn_over_phi;
  if (s == "logn_over_xi") return BoundModel::logn_over_xi;
  if (s == "linear_n") return BoundModel::linear_n;
  throw ConfigError("unknown bound model '" + s + "'");
}

inline const char* to_string(BoundModel m) {
  switch (m) {
    case BoundModel::logn: return "logn";
    case BoundModel::logn_logdelta_over_alpha: return "logn_logdelta_over_alpha";
    case BoundModel::logn_over_phi: return "logn_over_phi";
    case BoundModel::logn_over_xi: return "logn_over_xi";
    case BoundModel::linear_n: return "linear_n";
  }
  return "unknown";
}

// Which expansion measure a model divides by, if any.
inline std::optional<std::string> model_measure(BoundModel m) {
  switch (m) {
    case BoundModel::logn_logdelta_over_alpha: return "alpha";
    case BoundModel::logn_over_phi: return "phi";
    case BoundModel::logn_over_xi: return "xi";
    default: return std::nullopt;
  }
}

struct ExperimentConfig {
  std::string name = "experiment";
  FamilySpec base;             // family and fixed parameters
  std::string sweep_param;     // parameter varied across the sweep
  std::vector<double> sweep;
  Variant variant = Variant::pushpull;
  std::string seed_set = "random_node";  // random_node | dominating | node:<id>
  std::size_t trials = 200;
  std::size_t max_rounds = 0;           // 0: default_max_rounds(n)
  double max_rounds_per_node = 0.0;     // > 0: max_rounds = ceil(factor * n)
  BoundModel model = BoundModel::logn;
  std::string statistic = "median";     // median | mean | q<level>
  std::vector<double> quantiles{0.5, 0.9};
  std::map<std::string, double> predictor_values;  // sweep value -> measure value
  std::vector<std::string> measures;               // extra measures reported when n <= cap
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  double drift_threshold = kDefaultDriftThreshold;
  std::uint64_t seed = 1;
  unsigned threads = 0;

  void validate() const {
    if (trials < 1) throw ConfigError("trial count must be >= 1");
    if (sweep.empty()) throw ConfigError("sweep must be nonempty");
    if (sweep_param.empty()) throw ConfigError("sweep_param is required");
    if (drift_threshold < 1.0) throw ConfigError("drift threshold must be >= 1");
  }
};

inline std::string sweep_key(double v) {
  if (v == std::floor(v)) return std::to_string(static_cast<long long>(v));
  return io::fmt15(v);
}

inline ExperimentConfig experiment_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  try {
    c.name = j.value("name", c.name);
    c.base.family = j.at("family").get<std::string>();
    if (j.contains("params"))
      for (auto& [k, v] : j.at("params").items()) c.base.params[k] = v.get<double>();
    c.sweep_param = j.at("sweep_param").get<std::string>();
    c.sweep = j.at("sweep").get<std::vector<double>>();
    c.variant = parse_variant(j.value("protocol", std::string("pushpull")));
    c.seed_set = j.value("seed_set", c.seed_set);
    c.trials = j.value("trials", c.trials);
    c.max_rounds = j.value("max_rounds", c.max_rounds);
    c.max_rounds_per_node = j.value("max_rounds_per_node", c.max_rounds_per_node);
    c.model = parse_bound_model(j.value("bound_model", std::string("logn")));
    c.statistic = j.value("statistic", c.statistic);
    c.quantiles = j.value("quantiles", c.quantiles);
    if (j.contains("predictor_values"))
      for (auto& [k, v] : j.at("predictor_values").items()) c.predictor_values[k] = v.get<double>();
    c.measures = j.value("measures", c.measures);
    c.enumeration_cap = j.value("enumeration_cap", c.enumeration_cap);
    c.drift_threshold = j.value("drift_threshold", c.drift_threshold);
    c.seed = j.value("seed", c.seed);
    c.base.seed = c.seed;
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

struct SweepPoint {
  double param = 0.0;
  std::size_t n = 0;
  std::size_t max_degree = 0;
  std::size_t trials = 0;
  std::size_t completed = 0;
  double statistic = 0.0;
  std::map<std::string, double> quantiles;  // "q0.5" -> value
  double mean_t_all = 0.0;
  std::optional<double> measure;            // alpha / phi / xi used by the model
  std::map<std::string, double> extra_measures;
  double predictor = 0.0;
  double ratio = 0.0;
  MonteCarloSummary summary;
};

struct BoundFitReport {
  std::string name;
  BoundModel model = BoundModel::logn;
  std::string statistic;
  double drift_threshold = kDefaultDriftThreshold;
  std::vector<SweepPoint> points;
  double c_hat = 0.0;  // max ratio
  double drift = 0.0;  // max ratio / min ratio
  bool passed = false;
};

namespace detail {

inline double pick_statistic(const MonteCarloSummary& s, const std::string& stat) {
  if (stat == "median") return s.median();
  if (stat == "mean") return s.mean_t_all;
  if (stat.size() > 1 && stat.front() == 'q') return s.quantile(std::stod(stat.substr(1)));
  throw ConfigError("unknown statistic '" + stat + "'");
}

inline double measure_value(const Graph& g, const std::string& name, std::size_t cap) {
  EnumerationOptions opt{cap};
  if (name == "alpha") return vertex_expansion_graph(g, opt).value;
  if (name == "phi") return conductance_graph(g, opt).value;
  if (name == "xi") return xi_graph(g, opt).value;
  if (name == "rho") return rho_graph(g, opt).value;
  throw ConfigError("unknown measure '" + name + "'");
}

inline NodeSet choose_seed_set(const Graph& g, const std::string& rule, const CounterRng& rng) {
  const std::size_t n = g.num_nodes();
  if (rule == "random_node")
    return NodeSet(n, {static_cast<NodeId>(rng.uniform_below(n, 3))});
  if (rule == "dominating") return gen::greedy_dominating_set(g);
  if (rule.rfind("node:", 0) == 0) {
    const auto id = std::stoull(rule.substr(5));
    if (id >= n) throw ConfigError("seed node out of range");
    return NodeSet(n, {static_cast<NodeId>(id)});
  }
  throw ConfigError("unknown seed_set rule '" + rule + "'");
}

}  // namespace detail

inline double predictor_for(BoundModel model, std::size_t n, std::size_t max_degree,
                            std::optional<double> measure) {
  const double lg = std::log2(static_cast<double>(n));
  switch (model) {
    case BoundModel::logn: return lg;
    case BoundModel::linear_n: return static_cast<double>(n);
    case BoundModel::logn_logdelta_over_alpha:
      if (max_degree < 2) throw ConfigError("log Delta vanishes for max degree 1");
      return lg * std::log2(static_cast<double>(max_degree)) / measure.value();
    case BoundModel::logn_over_phi:
    case BoundModel::logn_over_xi: return lg / measure.value();
  }
  return 0.0;
}

inline BoundFitReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  BoundFitReport rep;
  rep.name = cfg.name;
  rep.model = cfg.model;
  rep.statistic = cfg.statistic;
  rep.drift_threshold = cfg.drift_threshold;
  const CounterRng master(cfg.seed);

  for (std::size_t idx = 0; idx < cfg.sweep.size(); ++idx) {
    const double value = cfg.sweep[idx];
    const CounterRng point_rng = master.derive(idx);
    FamilySpec spec = cfg.base;
    spec.params[cfg.sweep_param] = value;
    spec.seed = point_rng.bits(1);
    const Graph g = build(spec);

    SweepPoint pt;
    pt.param = value;
    pt.n = g.num_nodes();
    pt.max_degree = g.max_degree();

    if (auto m = model_measure(cfg.model)) {
      auto supplied = cfg.predictor_values.find(sweep_key(value));
      if (supplied != cfg.predictor_values.end())
        pt.measure = supplied->second;
      else if (g.num_nodes() <= cfg.enumeration_cap)
        pt.measure = detail::measure_value(g, *m, cfg.enumeration_cap);
      else
        throw ConfigError("no " + *m + " available for " + cfg.sweep_param + " = " +
                          sweep_key(value) + ": n exceeds the enumeration cap and no " +
                          "predictor value was supplied");
    }
    if (g.num_nodes() <= cfg.enumeration_cap)
      for (const auto& m : cfg.measures)
        pt.extra_measures[m] = detail::measure_value(g, m, cfg.enumeration_cap);

    ProtocolConfig pc;
    pc.variant = cfg.variant;
    pc.initial_informed = detail::choose_seed_set(g, cfg.seed_set, point_rng);
    pc.seed = point_rng.bits(2);
    pc.max_rounds = cfg.max_rounds;
    if (cfg.max_rounds_per_node > 0.0)
      pc.max_rounds = static_cast<std::size_t>(std::ceil(cfg.max_rounds_per_node * static_cast<double>(g.num_nodes())));
    MonteCarloOptions mo;
    mo.threads = cfg.threads;
    pt.summary = monte_carlo(g, pc, cfg.trials, mo);
    pt.trials = cfg.trials;
    pt.completed = pt.summary.completed;
    pt.mean_t_all = pt.summary.mean_t_all;
    for (double q : cfg.quantiles) pt.quantiles["q" + io::fmt15(q)] = pt.summary.quantile(q);
    pt.statistic = detail::pick_statistic(pt.summary, cfg.statistic);
    pt.predictor = predictor_for(cfg.model, pt.n, pt.max_degree, pt.measure);
    pt.ratio = pt.statistic / pt.predictor;
    rep.points.push_back(std::move(pt));
  }

  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& p : rep.points) {
    lo = std::min(lo, p.ratio);
    hi = std::max(hi, p.ratio);
  }
  rep.c_hat = hi;
  rep.drift = hi / lo;
  rep.passed = std::isfinite(rep.drift) && rep.drift <= rep.drift_threshold;
  return rep;
}

inline std::string drift_note(double threshold) {
  return "drift = max ratio / min ratio; pass threshold " + io::fmt15(threshold) +
         " is a convention, the constants in the bounds are unknown";
}

inline nlohmann::json to_json(const BoundFitReport& r) {
  nlohmann::json j;
  j["name"] = r.name;
  j["bound_model"] = to_string(r.model);
  j["statistic"] = r.statistic;
  j["log_base"] = 2;
  j["drift_threshold"] = r.drift_threshold;
  j["note"] = drift_note(r.drift_threshold);
  j["c_hat"] = r.c_hat;
  j["drift"] = r.drift;
  j["passed"] = r.passed;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json q;
    q["param"] = p.param;
    q["n"] = p.n;
    q["max_degree"] = p.max_degree;
    q["trials"] = p.trials;
    q["completed"] = p.completed;
    q["statistic"] = p.statistic;
    q["quantiles"] = p.quantiles;
    q["mean_t_all"] = p.mean_t_all;
    q["measure"] = p.measure ? nlohmann::json(*p.measure) : nlohmann::json(nullptr);
    q["measures"] = p.extra_measures;
    q["predictor"] = p.predictor;
    q["ratio"] = p.ratio;
    pts.push_back(q);
  }
  j["points"] = pts;
  return j;
}

inline constexpr const char* kFitHeader = "experiment,param,n,statistic,predictor,ratio";
inline constexpr const char* kSweepSummaryHeader = "param,n,trial,t_half,t_all,completed";

inline void write_fit_csv(std::ostream& out, const BoundFitReport& r) {
  out << "# " << drift_note(r.drift_threshold) << '\n';
  out << kFitHeader << '\n';
  for (const auto& p : r.points)
    out << r.name << ',' << io::fmt15(p.param) << ',' << p.n << ',' << io::fmt15(p.statistic) << ','
        << io::fmt15(p.predictor) << ',' << io::fmt15(p.ratio) << '\n';
}

inline void write_sweep_summary_csv(std::ostream& out, const BoundFitReport& r) {
  out << kSweepSummaryHeader << '\n';
  for (const auto& p : r.points)
    for (const auto& t : p.summary.trials) {
      out << io::fmt15(p.param) << ',' << p.n << ',' << t.trial << ',';
      if (t.t_half) out << *t.t_half;
      out << ',';
      if (t.t_all) out << *t.t_all;
      out << ',' << (t.completed ? 1 : 0) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Digest of previously written CSVs

struct ReportInput {
  std::string name;
  io::CsvTable table;
};

namespace detail {

inline double parse_cell(const io::CsvTable& t, std::size_t row, std::size_t col) {
  const std::string& s = t.rows[row][col];
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "' in column '" + t.header[col] + "'", t.lines[row]);
  }
}

}  // namespace detail

// Summary CSVs (a t_all column) become per-group quantile digests; fit CSVs (a
// ratio column) are merged into one drift table.
inline nlohmann::json build_report(const std::vector<ReportInput>& inputs,
                                   double drift_threshold = kDefaultDriftThreshold) {
  nlohmann::json out;
  out["summaries"] = nlohmann::json::array();
  out["drift_table"] = nlohmann::json::array();
  std::size_t rows = 0;
  std::vector<double> ratios;
  for (const auto& in : inputs) {
    const auto& t = in.table;
    rows += t.rows.size();
    if (t.has("ratio")) {
      const std::size_t rc = t.column("ratio");
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        nlohmann::json row;
        row["source"] = in.name;
        for (std::size_t c = 0; c < t.header.size(); ++c) row[t.header[c]] = t.rows[i][c];
        const double r = detail::parse_cell(t, i, rc);
        row["ratio"] = r;
        ratios.push_back(r);
        out["drift_table"].push_back(row);
      }
    } else if (t.has("t_all")) {
      const std::size_t tc = t.column("t_all");
      const std::optional<std::size_t> gc =
          t.has("param") ? std::optional<std::size_t>(t.column("param")) : std::nullopt;
      std::map<std::string, std::vector<double>> groups;
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const std::string key = gc ? t.rows[i][*gc] : std::string("all");
        const std::string& cell = t.rows[i][tc];
        groups[key].push_back(cell.empty() ? std::numeric_limits<double>::infinity()
                                           : detail::parse_cell(t, i, tc));
      }
      for (auto& [key, vals] : groups) {
        std::sort(vals.begin(), vals.end());
        nlohmann::json s;
        s["source"] = in.name;
        s["group"] = key;
        s["trials"] = vals.size();
        s["completed"] = std::count_if(vals.begin(), vals.end(), [](double v) { return std::isfinite(v); });
        s["median"] = quantile_sorted(vals, 0.5);
        s["q0.9"] = quantile_sorted(vals, 0.9);
        s["min"] = vals.front();
        s["max"] = vals.back();
        out["summaries"].push_back(s);
      }
    } else {
      throw InputError("CSV '" + in.name + "' has neither a t_all nor a ratio column");
    }
  }
  if (rows == 0) throw InputError("empty report: no data rows in the inputs");
  if (!ratios.empty()) {
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    out["combined_drift"] = *hi / *lo;
    out["drift_threshold"] = drift_threshold;
    out["drift_passed"] = *hi / *lo <= drift_threshold;
    out["note"] = drift_note(drift_threshold);
  }
  return out;
}

}  // namespace rumor
