#pragma once

// Brute-force packing oracles.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "mtr/hypergraph.hpp"
#include "mtr/packing.hpp"

namespace mtr::test {

// Best total over all edge subsets with pairwise disjoint trips.
inline int subset_optimum(const MatchHypergraph& h) {
  const std::size_t n = h.edge_count();
  std::set<TripId> used;
  int best = 0;
  std::function<void(std::size_t, int)> go = [&](std::size_t e, int value) {
    best = std::max(best, value);
    for (std::size_t x = e; x < n; ++x) {
      const auto& m = h.edge(x);
      if (used.count(m.driver)) continue;
      bool free = true;
      for (auto r : m.riders) free = free && !used.count(r);
      if (!free) continue;
      used.insert(m.driver);
      for (auto r : m.riders) used.insert(r);
      go(x + 1, value + m.size());
      used.erase(m.driver);
      for (auto r : m.riders) used.erase(r);
    }
  };
  go(0, 0);
  return best;
}

// Size of the largest independent set inside N(v), by plain enumeration.
inline int neighbourhood_independence(const ConflictGraph& g, int v) {
  const auto& nb = g.adjacency[v];
  int best = 0;
  std::vector<int> cur;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    best = std::max(best, static_cast<int>(cur.size()));
    for (std::size_t x = i; x < nb.size(); ++x) {
      bool ok = true;
      for (int c : cur) {
        const auto& a = g.adjacency[c];
        ok = ok && !std::binary_search(a.begin(), a.end(), nb[x]);
      }
      if (!ok) continue;
      cur.push_back(nb[x]);
      go(x + 1);
      cur.pop_back();
    }
  };
  go(0);
  return best;
}

}  // namespace mtr::test
