#pragma once

// Edge-list and node-set files, CSV schemas for traces and summaries, and
// JSON expansion reports.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "rumor/errors.hpp"
#include "rumor/expansion.hpp"
#include "rumor/graph.hpp"
#include "rumor/protocols.hpp"

namespace rumor::io {

struct LoadedGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[id] is the label from the file
  std::vector<std::string> warnings;

  std::optional<NodeId> find(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) return std::nullopt;
    return static_cast<NodeId>(it - labels.begin());
  }
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

inline bool is_comment_or_blank(const std::vector<std::string>& toks) {
  return toks.empty() || toks.front().front() == '#';
}

inline std::optional<unsigned long long> as_integer(const std::string& s) {
  unsigned long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

// Labels are relabeled to dense ids: numerically ascending when every label is
// a nonnegative integer, lexicographically otherwise. Self-loops and repeated
// edges are dropped with a warning; the result must be connected.
inline LoadedGraph read_edge_list(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto toks = detail::tokens(line);
    if (detail::is_comment_or_blank(toks)) continue;
    if (toks.size() != 2) throw ParseError("expected two tokens per edge line", lineno);
    raw.emplace_back(toks[0], toks[1]);
  }
  if (raw.empty()) throw InputError("edge list contains no edges");

  std::set<std::string> names;
  for (const auto& [a, b] : raw) {
    names.insert(a);
    names.insert(b);
  }
  LoadedGraph out;
  out.labels.assign(names.begin(), names.end());
  const bool numeric = std::all_of(out.labels.begin(), out.labels.end(),
                                   [](const std::string& s) { return detail::as_integer(s).has_value(); });
  if (numeric)
    std::sort(out.labels.begin(), out.labels.end(), [](const std::string& a, const std::string& b) {
      return *detail::as_integer(a) < *detail::as_integer(b);
    });
  std::unordered_map<std::string, NodeId> id;
  for (std::size_t i = 0; i < out.labels.size(); ++i) id[out.labels[i]] = static_cast<NodeId>(i);

  std::set<Edge> seen;
  std::vector<Edge> edges;
  std::size_t loops = 0, dups = 0;
  for (const auto& [a, b] : raw) {
    NodeId u = id[a], v = id[b];
    if (u == v) {
      ++loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      ++dups;
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (loops) out.warnings.push_back("dropped " + std::to_string(loops) + " self-loop(s)");
  if (dups) out.warnings.push_back("dropped " + std::to_string(dups) + " duplicate edge(s)");
  out.graph = Graph::from_edges(out.labels.size(), edges);
  return out;
}

inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<std::string>& header = {}) {
  for (const auto& h : header) out << "# " << h << '\n';
  out << "# nodes: " << g.num_nodes() << '\n' << "# edges: " << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

// One node label per line; '#' comments.
inline NodeSet read_node_set(std::istream& in, const LoadedGraph& lg) {
  NodeSet s(lg.graph.num_nodes());
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto toks = detail::tokens(line);
    if (detail::is_comment_or_blank(toks)) continue;
    if (toks.size() != 1) throw ParseError("expected one node per line", lineno);
    auto v = lg.find(toks[0]);
    if (!v) throw ParseError("unknown node '" + toks[0] + "'", lineno);
    s.insert(*v);
  }
  return s;
}

// Comma-separated labels, e.g. "0,3,5".
inline NodeSet parse_node_list(const std::string& text, const LoadedGraph& lg) {
  NodeSet s(lg.graph.num_nodes());
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok.empty()) continue;
    auto v = lg.find(tok);
    if (!v) throw InputError("unknown node '" + tok + "'");
    s.insert(*v);
  }
  return s;
}

inline std::string fmt15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline nlohmann::json to_json(const ExpansionReport& r, const LoadedGraph* lg = nullptr) {
  nlohmann::json j;
  j["measure"] = r.measure;
  j["value"] = r.value;
  if (r.witness) {
    nlohmann::json w = nlohmann::json::array();
    for (NodeId v : *r.witness) {
      if (lg)
        w.push_back(lg->labels[v]);
      else
        w.push_back(v);
    }
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["method"] = to_string(r.method);
  j["samples"] = r.samples;
  j["stderr"] = r.stderr_estimate;
  return j;
}

inline constexpr const char* kTraceHeader = "trial,round,informed,boundary,closure,psi,harmonic_mass";
inline constexpr const char* kSummaryHeader = "trial,t_half,t_all,completed";

inline void write_trace_rows(std::ostream& out, std::size_t trial, const SpreadTrace& tr) {
  for (const auto& r : tr.rounds)
    out << trial << ',' << r.round << ',' << r.informed << ',' << r.boundary << ',' << r.closure
        << ',' << fmt15(r.psi) << ',' << fmt15(r.harmonic_mass) << '\n';
}

inline void write_summary(std::ostream& out, const MonteCarloSummary& s) {
  out << kSummaryHeader << '\n';
  for (const auto& t : s.trials) {
    out << t.trial << ',';
    if (t.t_half) out << *t.t_half;
    out << ',';
    if (t.t_all) out << *t.t_all;
    out << ',' << (t.completed ? 1 : 0) << '\n';
  }
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;  // source line of each row

  std::size_t column(const std::string& name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InputError("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
  bool has(const std::string& name) const {
    return std::find(header.begin(), header.end(), name) != header.end();
  }
};

// Plain CSV (no quoting). Rows must match the header width.
inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::stringstream ss(l);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (!l.empty() && l.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.header.size())
      throw ParseError("expected " + std::to_string(t.header.size()) + " fields, got " +
                           std::to_string(cells.size()),
                       lineno);
    t.rows.push_back(std::move(cells));
    t.lines.push_back(lineno);
  }
  return t;
}

}  // namespace rumor::io
