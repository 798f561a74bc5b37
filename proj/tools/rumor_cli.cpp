// rumor: command-line front end.
//
//   rumor gen --family hypercube --d 3 -o q3.edges
//   rumor analyze q3.edges --measures alpha,phi
//   rumor analyze path.edges --set a --measures h,xi
//   rumor simulate q3.edges --protocol pushpull --seeds 0 --trials 200
//   rumor participating path.edges --set a --eps-p 0.15 --eps-h 0.5
//   rumor experiment configs/hypercube.json
//   rumor report out/hypercube_fit.csv out/two_cliques_fit.csv
//
// Any subcommand accepts --config file.json; its keys (or the keys of an object
// named after the subcommand) fill in options not given on the command line.
// Output directories default to $RUMOR_OUT_DIR, else the working directory.
//
// Exit codes: 0 ok, 1 internal error, 2 input or parse error, 3 capability
// error, 4 some simulated trial hit max_rounds, 5 config or construction error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rumor/expansion.hpp"
#include "rumor/experiment.hpp"
#include "rumor/family.hpp"
#include "rumor/io.hpp"
#include "rumor/participating.hpp"
#include "rumor/protocols.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rumor;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kInput = 2, kCapability = 3, kIncomplete = 4, kConfig = 5 };

std::string default_out_dir() {
  const char* env = std::getenv("RUMOR_OUT_DIR");
  return env && *env ? env : ".";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) out.push_back(tok);
  return out;
}

io::LoadedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  auto lg = io::read_edge_list(in);
  for (const auto& w : lg.warnings) std::cerr << "warning: " << path << ": " << w << '\n';
  return lg;
}

NodeSet load_set(const std::string& spec, const io::LoadedGraph& lg) {
  // A readable file holds one label per line; anything else is a comma list.
  if (fs::is_regular_file(spec)) {
    std::ifstream in(spec);
    return io::read_node_set(in, lg);
  }
  return io::parse_node_list(spec, lg);
}

json labels_of(const NodeSet& s, const io::LoadedGraph& lg) {
  json a = json::array();
  for (NodeId v : s) a.push_back(lg.labels[v]);
  return a;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw InputError("cannot write '" + p.string() + "'");
  return out;
}

// Turns config-file entries into command-line tokens placed before the user's
// own arguments, so explicit flags win (options keep their last value).
std::vector<std::string> config_tokens(const std::string& path, const std::string& sub) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  if (j.contains(sub) && j[sub].is_object()) j = j[sub];
  std::vector<std::string> toks;
  for (auto& [key, val] : j.items()) {
    if (key == "config" || val.is_object()) continue;
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (val.is_boolean()) {
      if (val.get<bool>()) toks.push_back(flag);
      continue;
    }
    std::string text;
    if (val.is_array()) {
      for (std::size_t i = 0; i < val.size(); ++i) {
        if (i) text += ',';
        text += val[i].is_string() ? val[i].get<std::string>() : val[i].dump();
      }
    } else {
      text = val.is_string() ? val.get<std::string>() : val.dump();
    }
    toks.push_back(flag);
    toks.push_back(text);
  }
  return toks;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  FamilySpec spec{a.family, a.params, a.seed};
  Graph g = build(spec);
  if (a.out.empty()) {
    io::write_edge_list(std::cout, g, spec.provenance());
  } else {
    auto out = open_out(a.out);
    io::write_edge_list(out, g, spec.provenance());
  }
  return kOk;
}

struct AnalyzeArgs {
  std::string graph;
  std::string measures = "alpha,phi";
  std::string set;
  bool decompose = false;
  double eps_h = 0.5;
  bool participating = false;
  double eps_p = 0.15;
  std::size_t cap = kDefaultEnumerationCap;
  std::size_t samples = 0;
  std::uint64_t seed = 1;
};

json decomposition_json(const DegreeClassDecomposition& d, const io::LoadedGraph& lg) {
  json j;
  j["eps_h"] = d.eps_h;
  j["c"] = d.c;
  j["low_threshold"] = d.low_threshold;
  j["high_threshold"] = d.high_threshold;
  j["t1"] = labels_of(d.t1, lg);
  j["t2"] = labels_of(d.t2, lg);
  j["t3"] = labels_of(d.t3, lg);
  j["h"] = d.h;
  j["h_t1"] = d.h_t1;
  j["h_t2"] = d.h_t2;
  j["h_t3"] = d.h_t3;
  j["dominant_class"] = d.dominant_class ? json(*d.dominant_class) : json(nullptr);
  j["case_b_log_factor"] = d.case_b_l;
  j["case_c_size"] = d.case_c_k;
  return j;
}

json active_fraction_json(const ActiveFractionReport& r) {
  json j;
  j["checked"] = r.checked;
  if (!r.checked) {
    j["skip_reason"] = r.skip_reason;
    j["h"] = r.h;
    return j;
  }
  j["h"] = r.h;
  j["boundary_size"] = r.boundary_size;
  j["boundary_participating"] = r.boundary_participating;
  j["required_fraction"] = r.required_fraction;
  j["fraction_holds"] = r.fraction_holds;
  j["phi0"] = r.phi0;
  j["phi0_bound"] = r.phi0_bound;
  j["phi0_holds"] = r.phi0_holds;
  j["potential_non_increasing"] = r.potential_non_increasing;
  j["active_drops_hold"] = r.active_drops_hold;
  j["min_active_drop"] = std::isfinite(r.min_active_drop) ? json(r.min_active_drop) : json(nullptr);
  j["passed"] = r.passed;
  return j;
}

json participating_json(const Graph& g, const NodeSet& s, const ParticipatingResult& r,
                        const ParticipatingConfig& cfg, const io::LoadedGraph& lg) {
  json j;
  j["eps_p"] = cfg.eps_p;
  j["eps_h"] = cfg.eps_h;
  j["hypothesis_holds"] = cfg.hypothesis_holds();
  j["participating"] = labels_of(r.participating, lg);
  j["active"] = labels_of(r.active, lg);
  j["passive"] = labels_of(r.passive, lg);
  j["removed"] = r.removal_log.size();
  j["active_fraction"] = active_fraction_json(active_fraction_check(g, s, cfg));
  return j;
}

int cmd_analyze(const AnalyzeArgs& a) {
  auto lg = load_graph(a.graph);
  const Graph& g = lg.graph;
  json out;
  out["graph"] = {{"source", a.graph}, {"nodes", g.num_nodes()}, {"edges", g.num_edges()},
                  {"min_degree", g.min_degree()}, {"max_degree", g.max_degree()},
                  {"diameter", diameter(g)}};
  json reports = json::array();
  EnumerationOptions opt{a.cap};

  if (a.set.empty()) {
    for (const auto& m : split_list(a.measures)) {
      ExpansionReport r;
      if (m == "alpha")
        r = vertex_expansion_graph(g, opt);
      else if (m == "phi")
        r = conductance_graph(g, opt);
      else if (m == "xi")
        r = xi_graph(g, opt);
      else if (m == "rho")
        r = rho_graph(g, opt);
      else if (m == "h")
        throw InputError("h is defined for a set; pass --set");
      else
        throw InputError("unknown measure '" + m + "'");
      reports.push_back(io::to_json(r, &lg));
    }
    if (a.decompose || a.participating) throw InputError("--decompose and --participating need --set");
  } else {
    const NodeSet s = load_set(a.set, lg);
    out["set"] = labels_of(s, lg);
    for (const auto& m : split_list(a.measures)) {
      if (m == "alpha") {
        reports.push_back(io::to_json(evaluated("alpha", vertex_expansion_set(g, s), s), &lg));
      } else if (m == "phi") {
        reports.push_back(io::to_json(evaluated("phi", conductance_set(g, s), s), &lg));
      } else if (m == "xi") {
        reports.push_back(io::to_json(evaluated("xi", xi_set(g, s), s), &lg));
      } else if (m == "rho") {
        reports.push_back(io::to_json(evaluated("rho", rho_set(g, s), s), &lg));
      } else if (m == "h") {
        reports.push_back(io::to_json(evaluated("h", boundary_expansion_exact(g, s), s), &lg));
        if (a.samples > 0) {
          auto est = boundary_expansion_mc(g, s, a.samples, a.seed);
          ExpansionReport r = evaluated("h", est.mean, s);
          r.method = Method::monte_carlo;
          r.samples = est.samples;
          r.stderr_estimate = est.stderr_estimate;
          reports.push_back(io::to_json(r, &lg));
        }
      } else {
        throw InputError("unknown measure '" + m + "'");
      }
    }
    if (a.decompose) out["decomposition"] = decomposition_json(degree_class_decompose(g, s, a.eps_h), lg);
    if (a.participating) {
      ParticipatingConfig cfg{a.eps_p, a.eps_h};
      out["participating"] = participating_json(g, s, compute_participating(g, s, cfg), cfg, lg);
    }
  }
  out["reports"] = reports;
  std::cout << out.dump(2) << '\n';
  return kOk;
}

struct SimulateArgs {
  std::string graph;
  std::string protocol = "pushpull";
  std::string seeds;
  std::string seed_set = "random_node";
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t max_rounds = 0;
  std::string out_dir;
  std::string prefix = "simulate";
  bool traces = false;
  unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  auto lg = load_graph(a.graph);
  const Graph& g = lg.graph;
  ProtocolConfig cfg;
  cfg.variant = parse_variant(a.protocol);
  cfg.seed = a.seed;
  cfg.max_rounds = a.max_rounds;
  if (!a.seeds.empty())
    cfg.initial_informed = load_set(a.seeds, lg);
  else if (a.seed_set == "dominating")
    cfg.initial_informed = gen::greedy_dominating_set(g);
  else if (a.seed_set == "random_node")
    cfg.initial_informed = NodeSet(g.num_nodes(), {static_cast<NodeId>(CounterRng(a.seed).uniform_below(g.num_nodes(), 3))});
  else
    throw InputError("unknown seed-set rule '" + a.seed_set + "'");

  MonteCarloOptions mo;
  mo.keep_traces = a.traces;
  mo.threads = a.threads;
  auto sum = monte_carlo(g, cfg, a.trials, mo);

  const fs::path dir = a.out_dir.empty() ? default_out_dir() : a.out_dir;
  const fs::path summary_path = dir / (a.prefix + "_summary.csv");
  {
    auto out = open_out(summary_path);
    io::write_summary(out, sum);
  }
  json j;
  j["protocol"] = to_string(cfg.variant);
  j["seeds"] = labels_of(cfg.initial_informed, lg);
  j["trials"] = a.trials;
  j["completed"] = sum.completed;
  j["median_t_all"] = sum.completed == a.trials ? json(sum.median()) : json(nullptr);
  j["mean_t_all_completed"] = sum.mean_t_all;
  j["summary_csv"] = summary_path.string();
  if (a.traces) {
    const fs::path trace_path = dir / (a.prefix + "_trace.csv");
    auto out = open_out(trace_path);
    out << io::kTraceHeader << '\n';
    for (std::size_t i = 0; i < sum.traces.size(); ++i) io::write_trace_rows(out, i, sum.traces[i]);
    j["trace_csv"] = trace_path.string();
  }
  std::cout << j.dump(2) << '\n';
  if (sum.completed < a.trials) {
    std::cerr << "incomplete: " << a.trials - sum.completed << " trial(s) hit max_rounds\n";
    return kIncomplete;
  }
  return kOk;
}

struct ParticipatingArgs {
  std::string graph;
  std::string set;
  double eps_p = 0.15;
  double eps_h = 0.5;
  bool modified = false;
  std::string order = "lowest";
  std::uint64_t order_seed = 0;
  std::string removal_csv;
};

int cmd_participating(const ParticipatingArgs& a) {
  auto lg = load_graph(a.graph);
  const Graph& g = lg.graph;
  const NodeSet s = load_set(a.set, lg);
  ParticipatingConfig cfg{a.eps_p, a.eps_h};
  ParticipatingOptions opt;
  if (a.order == "lowest")
    opt.order = RemovalOrder::lowest_id;
  else if (a.order == "batch")
    opt.order = RemovalOrder::batch;
  else if (a.order == "random")
    opt.order = RemovalOrder::random;
  else
    throw InputError("unknown removal order '" + a.order + "'");
  opt.seed = a.order_seed;
  auto r = a.modified ? compute_participating_modified(g, s, cfg, opt)
                      : compute_participating(g, s, cfg, opt);
  json j = participating_json(g, s, r, cfg, lg);
  j["start"] = a.modified ? "modified" : "all-nodes";
  if (!a.removal_csv.empty()) {
    auto out = open_out(a.removal_csv);
    out << "step,node,reason,phi1,phi2,phi\n";
    const auto& t0 = r.phi_trajectory.front();
    out << "0,,," << io::fmt15(t0.phi1) << ',' << io::fmt15(t0.phi2) << ',' << io::fmt15(t0.phi) << '\n';
    // Potentials are recorded per step; a batch step lists every node it removed.
    for (const auto& rm : r.removal_log) {
      const auto& t = r.phi_trajectory[rm.step];
      out << rm.step << ',' << lg.labels[rm.node] << ',' << to_string(rm.reason) << ','
          << io::fmt15(t.phi1) << ',' << io::fmt15(t.phi2) << ',' << io::fmt15(t.phi) << '\n';
    }
    j["removal_csv"] = a.removal_csv;
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

struct ExperimentArgs {
  std::string config;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_dir;
};

int cmd_experiment(const ExperimentArgs& a) {
  std::ifstream in(a.config);
  if (!in) throw ConfigError("cannot open experiment config '" + a.config + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  if (a.trials) j["trials"] = *a.trials;
  if (a.seed) j["seed"] = *a.seed;
  if (a.threads) j["threads"] = *a.threads;
  const ExperimentConfig cfg = experiment_from_json(j);
  const BoundFitReport rep = run_experiment(cfg);

  const fs::path dir = a.out_dir.empty() ? default_out_dir() : a.out_dir;
  {
    auto out = open_out(dir / (cfg.name + "_fit.csv"));
    write_fit_csv(out, rep);
  }
  {
    auto out = open_out(dir / (cfg.name + "_summary.csv"));
    write_sweep_summary_csv(out, rep);
  }
  const json report = to_json(rep);
  {
    auto out = open_out(dir / (cfg.name + "_report.json"));
    out << report.dump(2) << '\n';
  }
  std::cout << report.dump(2) << '\n';
  return kOk;
}

struct ReportArgs {
  std::vector<std::string> inputs;
  double drift_threshold = kDefaultDriftThreshold;
};

int cmd_report(const ReportArgs& a) {
  std::vector<ReportInput> inputs;
  for (const auto& path : a.inputs) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
      inputs.push_back({path, io::read_csv(in)});
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what(), e.line());
    }
  }
  std::cout << build_report(inputs, a.drift_threshold).dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rumor spreading simulation and expansion measures"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;

  GenArgs ga;
  auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph as an edge list");
  gen_cmd->add_option("--family", ga.family, "Graph family")->required();
  for (const char* key : {"n", "d", "m", "delta", "ell", "c", "p", "leaves"})
    gen_cmd->add_option_function<double>(std::string("--") + key, [&ga, key](double v) { ga.params[key] = v; },
                                         std::string("Family parameter ") + key);
  gen_cmd->add_option("--seed", ga.seed, "Seed for randomized families");
  gen_cmd->add_option("-o,--out", ga.out, "Output file (default stdout)");

  AnalyzeArgs aa;
  auto* analyze_cmd = app.add_subcommand("analyze", "Expansion measures of a graph or a set");
  analyze_cmd->add_option("graph,--graph", aa.graph, "Edge-list file")->required();
  analyze_cmd->add_option("--measures", aa.measures, "Comma list of alpha,phi,xi,rho,h");
  analyze_cmd->add_option("--set", aa.set, "Node labels (comma list) or a file with one per line");
  analyze_cmd->add_flag("--decompose", aa.decompose, "Degree-class decomposition of the set");
  analyze_cmd->add_option("--eps-h", aa.eps_h, "Boundary expansion parameter");
  analyze_cmd->add_flag("--participating", aa.participating, "Participating-set report for the set");
  analyze_cmd->add_option("--eps-p", aa.eps_p, "Participation threshold");
  analyze_cmd->add_option("--cap", aa.cap, "Node cap for exact enumeration");
  analyze_cmd->add_option("--samples", aa.samples, "Monte-Carlo samples for h (0 = exact only)");
  analyze_cmd->add_option("--seed", aa.seed, "Seed for Monte-Carlo sampling");

  SimulateArgs sa;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte-Carlo rumor spreading runs");
  sim_cmd->add_option("graph,--graph", sa.graph, "Edge-list file")->required();
  sim_cmd->add_option("--protocol", sa.protocol, "push, pull or pushpull");
  sim_cmd->add_option("--seeds", sa.seeds, "Initially informed labels or file");
  sim_cmd->add_option("--seed-set", sa.seed_set, "random_node or dominating, when --seeds is absent");
  sim_cmd->add_option("--trials", sa.trials, "Number of trials");
  sim_cmd->add_option("--seed", sa.seed, "Master seed");
  sim_cmd->add_option("--max-rounds", sa.max_rounds, "Round cap (0 = 64 ceil(log2 n))");
  sim_cmd->add_option("--out-dir", sa.out_dir, "Output directory");
  sim_cmd->add_option("--prefix", sa.prefix, "Output file prefix");
  sim_cmd->add_flag("--traces", sa.traces, "Also write per-round traces");
  sim_cmd->add_option("--threads", sa.threads, "Worker threads (0 = all cores)");

  ParticipatingArgs pa;
  auto* part_cmd = app.add_subcommand("participating", "Participating, active and passive sets");
  part_cmd->add_option("graph,--graph", pa.graph, "Edge-list file")->required();
  part_cmd->add_option("--set", pa.set, "Informed set S")->required();
  part_cmd->add_option("--eps-p", pa.eps_p, "Participation threshold");
  part_cmd->add_option("--eps-h", pa.eps_h, "Assumed bound on h(S)");
  part_cmd->add_flag("--modified", pa.modified, "Start from the modified start set");
  part_cmd->add_option("--order", pa.order, "lowest, batch or random");
  part_cmd->add_option("--order-seed", pa.order_seed, "Seed for random removal order");
  part_cmd->add_option("--removal-csv", pa.removal_csv, "Write the removal log and potential");

  ExperimentArgs ea;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a scaling sweep and fit a bound model");
  exp_cmd->add_option("experiment,--experiment", ea.config, "Experiment JSON")->required();
  exp_cmd->add_option("--trials", ea.trials, "Override the trial count");
  exp_cmd->add_option("--seed", ea.seed, "Override the master seed");
  exp_cmd->add_option("--threads", ea.threads, "Override the thread count");
  exp_cmd->add_option("--out-dir", ea.out_dir, "Output directory");

  ReportArgs ra;
  auto* rep_cmd = app.add_subcommand("report", "Digest summary and fit CSVs");
  rep_cmd->add_option("inputs,--inputs", ra.inputs, "CSV files")->required()->delimiter(',');
  rep_cmd->add_option("--drift-threshold", ra.drift_threshold, "Pass threshold for combined drift");

  for (auto* sub : {gen_cmd, analyze_cmd, sim_cmd, part_cmd, exp_cmd, rep_cmd})
    sub->add_option("--config", config_path, "JSON file with option defaults");
  rep_cmd->get_option("inputs")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    // Splice config-file tokens in right after the subcommand name.
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
      if (args[i] != "--config") continue;
      auto extra = config_tokens(args[i + 1], args[0]);
      args.insert(args.begin() + 1, extra.begin(), extra.end());
      break;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);

    if (*gen_cmd) return cmd_gen(ga);
    if (*analyze_cmd) return cmd_analyze(aa);
    if (*sim_cmd) return cmd_simulate(sa);
    if (*part_cmd) return cmd_participating(pa);
    if (*exp_cmd) return cmd_experiment(ea);
    if (*rep_cmd) return cmd_report(ra);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << '\n';
    return kCapability;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const ConstructionError& e) {
    std::cerr << "construction error: " << e.what() << '\n';
    return kConfig;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const StructuralError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
