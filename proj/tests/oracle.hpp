#pragma once

// Test-only reference implementations written straight from the definitions:
// adjacency matrix, plain binary subset order, explicit member lists. Shares no
// code with the library's incremental Gray-code enumeration.

#include <cstdint>
#include <numeric>
#include <vector>

#include "rumor/graph.hpp"

namespace oracle {

struct Frac {
  long long num = 0;
  long long den = 1;

  static Frac make(long long n, long long d) {
    const long long g = std::gcd(n, d);
    return {n / g, d / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator<(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(const Frac& a, const Frac& b) { return a.num == b.num && a.den == b.den; }
};

struct Minimum {
  Frac value;
  std::vector<rumor::NodeId> witness;
};

class Naive {
 public:
  explicit Naive(const rumor::Graph& g) : n_(g.num_nodes()), adj_(n_, std::vector<int>(n_, 0)) {
    for (auto [u, v] : g.edges()) adj_[u][v] = adj_[v][u] = 1;
  }

  std::vector<int> bdry(const std::vector<int>& in) const {
    std::vector<int> out(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
      if (in[v]) continue;
      for (std::size_t u = 0; u < n_; ++u)
        if (in[u] && adj_[u][v]) out[v] = 1;
    }
    return out;
  }

  long long deg(std::size_t v) const { return std::accumulate(adj_[v].begin(), adj_[v].end(), 0LL); }

  long long vol(const std::vector<int>& in) const {
    long long s = 0;
    for (std::size_t v = 0; v < n_; ++v)
      if (in[v]) s += deg(v);
    return s;
  }

  long long cut(const std::vector<int>& in) const {
    long long c = 0;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = 0; v < n_; ++v)
        if (in[u] && !in[v] && adj_[u][v]) ++c;
    return c;
  }

  static long long count(const std::vector<int>& in) {
    return std::accumulate(in.begin(), in.end(), 0LL);
  }

  template <typename Eval, typename Allowed>
  Minimum minimize(Eval eval, Allowed allowed) const {
    Minimum best;
    bool found = false;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n_); ++mask) {
      std::vector<int> in(n_, 0);
      std::vector<rumor::NodeId> members;
      for (std::size_t v = 0; v < n_; ++v)
        if (mask >> v & 1U) {
          in[v] = 1;
          members.push_back(static_cast<rumor::NodeId>(v));
        }
      if (!allowed(in)) continue;
      Frac f = eval(in);
      if (!found || f < best.value || (f == best.value && members < best.witness)) {
        best = {f, members};
        found = true;
      }
    }
    return best;
  }

  Minimum alpha() const {
    return minimize([&](const std::vector<int>& in) { return Frac::make(count(bdry(in)), count(in)); },
                    [&](const std::vector<int>& in) { return 2 * count(in) <= static_cast<long long>(n_); });
  }

  Minimum phi() const {
    std::vector<int> all(n_, 1);
    const long long total = vol(all);
    return minimize([&](const std::vector<int>& in) { return Frac::make(cut(in), vol(in)); },
                    [&](const std::vector<int>& in) { return 2 * vol(in) <= total; });
  }

  Minimum xi() const {
    return minimize(
        [&](const std::vector<int>& in) {
          auto b = bdry(in);
          return Frac::make(count(b) * cut(b), count(in) * vol(b));
        },
        [&](const std::vector<int>& in) { return 2 * count(in) <= static_cast<long long>(n_); });
  }

 private:
  std::size_t n_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace oracle
