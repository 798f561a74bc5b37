#pragma once

// Named graph families with their parameters, for the CLI and experiments.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rumor/errors.hpp"
#include "rumor/generators.hpp"

namespace rumor {

struct FamilySpec {
  std::string family;
  std::map<std::string, double> params;  // n, d, m, delta, ell, c, p, leaves
  std::uint64_t seed = 0;

  double get(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end())
      throw InputError("family '" + family + "' requires parameter '" + key + "'");
    return it->second;
  }

  std::size_t count(const std::string& key) const {
    const double v = get(key);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
      throw InputError("parameter '" + key + "' must be a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

  bool randomized() const {
    return family == "random_regular" || family == "clustered_regular" || family == "erdos_renyi";
  }

  // '#'-comment header lines for the edge-list file.
  std::vector<std::string> provenance() const {
    std::vector<std::string> lines{"family: " + family};
    for (const auto& [k, v] : params) {
      std::string text = std::to_string(v);
      if (v == static_cast<double>(static_cast<long long>(v)))
        text = std::to_string(static_cast<long long>(v));
      lines.push_back(k + ": " + text);
    }
    if (randomized()) lines.push_back("seed: " + std::to_string(seed));
    if (family == "clustered_regular")
      lines.push_back("note: inter-component draws are deduplicated after drawing");
    return lines;
  }
};

inline const std::vector<std::string>& known_families() {
  static const std::vector<std::string> names{
      "complete", "hypercube", "path", "cycle", "star", "two_cliques", "dumbbell",
      "random_regular", "clustered_regular", "erdos_renyi"};
  return names;
}

inline Graph build(const FamilySpec& f) {
  if (f.family == "complete") return gen::complete(f.count("n"));
  if (f.family == "hypercube") return gen::hypercube(f.count("d"));
  if (f.family == "path") return gen::path(f.count("n"));
  if (f.family == "cycle") return gen::cycle(f.count("n"));
  if (f.family == "star") return gen::star(f.count("leaves"));
  if (f.family == "two_cliques") return gen::two_cliques_shared_vertex(f.count("m"));
  if (f.family == "dumbbell") return gen::dumbbell(f.count("m"));
  if (f.family == "random_regular") return gen::random_regular(f.count("n"), f.count("delta"), f.seed);
  if (f.family == "clustered_regular")
    return gen::clustered_regular(f.count("ell"), f.count("delta"), f.count("c"), f.seed);
  if (f.family == "erdos_renyi") return gen::erdos_renyi(f.count("n"), f.get("p"), f.seed);
  throw InputError("unknown graph family '" + f.family + "'");
}

}  // namespace rumor
