#include "mtr/packing.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "json.hpp"

namespace mtr {

Solution make_solution(const MatchHypergraph& h, std::vector<std::size_t> edges, std::string solver) {
  std::sort(edges.begin(), edges.end());
  Solution s;
  s.solver = std::move(solver);
  std::vector<TripId> trips;
  for (auto e : edges) {
    if (e >= h.edge_count()) throw ConsistencyError("edge index out of range");
    const auto& m = h.edge(e);
    s.chosen.push_back(m);
    trips.push_back(m.driver);
    for (auto r : m.riders) {
      trips.push_back(r);
      s.covered.push_back(r);
    }
    s.objective += m.size();
  }
  std::sort(trips.begin(), trips.end());
  if (std::adjacent_find(trips.begin(), trips.end()) != trips.end()) {
    throw ConsistencyError("chosen matches share a trip");
  }
  std::sort(s.covered.begin(), s.covered.end());
  s.edges = std::move(edges);
  return s;
}

Solution imp_greedy(const MatchHypergraph& h) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> order(h.edge_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h.edge(a).size() > h.edge(b).size(); });
  std::vector<char> removed(h.edge_count(), 0);
  std::vector<std::size_t> picked;
  const std::size_t driver_count = h.drivers().size();
  for (auto e : order) {
    if (picked.size() == driver_count) break;
    if (removed[e]) continue;
    picked.push_back(e);
    const auto& m = h.edge(e);
    for (auto x : h.incident(m.driver)) removed[x] = 1;
    for (auto r : m.riders) {
      for (auto x : h.incident(r)) removed[x] = 1;
    }
  }
  auto s = make_solution(h, std::move(picked), "impgreedy");
  s.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return s;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const MatchHypergraph& h, const ExactOptions& options) : h_(h), options_(options) {
    for (std::size_t k = 0; k < h.riders().size(); ++k) rider_slot_[h.riders()[k]] = static_cast<int>(k);
    for (auto d : h.drivers()) {
      Group g;
      for (auto e : h.incident(d)) g.edges.push_back(e);
      std::stable_sort(g.edges.begin(), g.edges.end(),
                       [&](std::size_t a, std::size_t b) { return h.edge(a).size() > h.edge(b).size(); });
      g.best = h.edge(g.edges.front()).size();
      groups_.push_back(std::move(g));
    }
    std::stable_sort(groups_.begin(), groups_.end(), [](const Group& a, const Group& b) { return a.best > b.best; });
    suffix_.assign(groups_.size() + 1, 0);
    for (std::size_t k = groups_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + groups_[k].best;
    used_.assign(h.riders().size(), 0);
    uncovered_ = static_cast<int>(h.riders().size());
    if (options_.time_budget) deadline_ = std::chrono::steady_clock::now() + *options_.time_budget;
  }

  bool run() {
    search(0, 0);
    return !aborted_;
  }
  const std::vector<std::size_t>& best() const { return best_edges_; }

 private:
  struct Group {
    std::vector<std::size_t> edges;
    int best = 0;
  };

  bool out_of_budget() {
    if (++nodes_ > options_.node_budget) return true;
    if (deadline_ && (nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_) return true;
    return false;
  }

  void search(std::size_t k, int value) {
    if (aborted_) return;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    if (value > best_value_) {
      best_value_ = value;
      best_edges_ = current_;
    }
    if (k == groups_.size()) return;
    if (value + std::min(suffix_[k], uncovered_) <= best_value_) return;
    for (auto e : groups_[k].edges) {
      const auto& m = h_.edge(e);
      bool free = true;
      for (auto r : m.riders) {
        if (used_[rider_slot_.at(r)]) {
          free = false;
          break;
        }
      }
      if (!free) continue;
      for (auto r : m.riders) used_[rider_slot_.at(r)] = 1;
      uncovered_ -= m.size();
      current_.push_back(e);
      search(k + 1, value + m.size());
      current_.pop_back();
      uncovered_ += m.size();
      for (auto r : m.riders) used_[rider_slot_.at(r)] = 0;
      if (aborted_) return;
    }
    search(k + 1, value);
  }

  const MatchHypergraph& h_;
  ExactOptions options_;
  std::unordered_map<TripId, int> rider_slot_;
  std::vector<Group> groups_;
  std::vector<int> suffix_;
  std::vector<char> used_;
  int uncovered_ = 0;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_edges_;
  int best_value_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

}  // namespace

Solution exact_solve(const MatchHypergraph& h, const ExactOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  BranchAndBound bb(h, options);
  const bool complete = bb.run();
  auto s = make_solution(h, bb.best(), "exact");
  s.optimal = complete;
  s.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return s;
}

bool ConflictGraph::adjacent(int u, int v) const {
  const auto& a = adjacency[u];
  return std::binary_search(a.begin(), a.end(), v);
}

bool ConflictGraph::independent(std::span<const int> set) const {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b] || adjacent(set[a], set[b])) return false;
    }
  }
  return true;
}

ConflictGraph to_conflict_graph(const MatchHypergraph& h, std::size_t budget) {
  ConflictGraph g;
  const std::size_t n = h.edge_count();
  g.weight.resize(n);
  g.adjacency.resize(n);
  std::size_t entries = 0;
  std::vector<int> mark(n, -1);
  for (std::size_t e = 0; e < n; ++e) {
    const auto& m = h.edge(e);
    g.weight[e] = m.size();
    g.k = std::max(g.k, m.size() + 1);
    auto& adj = g.adjacency[e];
    auto add_all = [&](TripId t) {
      for (auto x : h.incident(t)) {
        if (x == e || mark[x] == static_cast<int>(e)) continue;
        mark[x] = static_cast<int>(e);
        adj.push_back(static_cast<int>(x));
      }
    };
    add_all(m.driver);
    for (auto r : m.riders) add_all(r);
    std::sort(adj.begin(), adj.end());
    entries += adj.size();
    if (entries > budget) {
      throw ConflictGraphTooLarge("conflict graph exceeds " + std::to_string(budget) + " adjacency entries");
    }
  }
  return g;
}

std::vector<int> greedy_mis(const ConflictGraph& g) {
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.weight[a] > g.weight[b]; });
  std::vector<char> gone(g.size(), 0);
  std::vector<int> out;
  for (int v : order) {
    if (gone[v]) continue;
    out.push_back(v);
    gone[v] = 1;
    for (int u : g.adjacency[v]) gone[u] = 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Solution solution_from_vertices(const ConflictGraph& g, const MatchHypergraph& h, std::span<const int> vertices,
                                std::string solver) {
  if (g.size() != h.edge_count()) throw ConsistencyError("conflict graph does not belong to hypergraph");
  if (!g.independent(vertices)) throw ConsistencyError("vertex set is not independent");
  std::vector<std::size_t> edges(vertices.begin(), vertices.end());
  return make_solution(h, std::move(edges), std::move(solver));
}

std::string solution_to_json(const Solution& s, bool include_elapsed) {
  nlohmann::json j;
  j["solver"] = s.solver;
  j["objective"] = s.objective;
  auto matches = nlohmann::json::array();
  for (const auto& m : s.chosen) matches.push_back(nlohmann::json::parse(match_to_json_line(m)));
  j["matches"] = std::move(matches);
  if (include_elapsed) j["elapsed_ms"] = s.elapsed_ms;
  return j.dump();
}

}  // namespace mtr
