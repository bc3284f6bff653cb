#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "mtr/packing.hpp"

namespace mtr {

const char* to_string(ImprovementRule rule) { return rule == ImprovementRule::kAnyImp ? "anyimp" : "bestimp"; }

const char* to_string(ImprovementMetric metric) {
  return metric == ImprovementMetric::kWeight ? "weight" : "weight-squared";
}

namespace {

using Clock = std::chrono::steady_clock;

class ClawSearch {
 public:
  ClawSearch(const ConflictGraph& g, const LocalSearchOptions& options, const std::vector<char>& in_set)
      : g_(g), options_(options), in_(in_set), cover_(g.size(), 0) {}

  // Finds one improving talon set; empty when none exists. Sets timed_out
  // when the round limit passes first.
  std::vector<int> find(Clock::time_point deadline, bool limited) {
    deadline_ = deadline;
    limited_ = limited;
    best_.clear();
    best_gain_ = 0;
    stop_ = false;
    timed_out = false;
    for (int c = 0; c < static_cast<int>(g_.size()) && !stop_; ++c) {
      if (!in_[c]) {
        talons_.assign(1, c);
        add(c);
        consider();
        remove(c);
        talons_.clear();
        if (stop_) break;
      }
      cand_.clear();
      for (int v : g_.adjacency[c]) {
        if (!in_[v]) cand_.push_back(v);
      }
      suffix_max_.assign(cand_.size() + 1, 0);
      for (std::size_t x = cand_.size(); x-- > 0;) suffix_max_[x] = std::max(suffix_max_[x + 1], g_.weight[cand_[x]]);
      dfs(0);
    }
    return best_;
  }

  bool timed_out = false;

 private:
  static long long sq(long long w) { return w * w; }

  void add(int v) {
    w_ += g_.weight[v];
    w2_ += sq(g_.weight[v]);
    for (int u : g_.adjacency[v]) {
      if (in_[u] && cover_[u]++ == 0) {
        r_ += g_.weight[u];
        r2_ += sq(g_.weight[u]);
      }
    }
  }

  void remove(int v) {
    w_ -= g_.weight[v];
    w2_ -= sq(g_.weight[v]);
    for (int u : g_.adjacency[v]) {
      if (in_[u] && --cover_[u] == 0) {
        r_ -= g_.weight[u];
        r2_ -= sq(g_.weight[u]);
      }
    }
  }

  void consider() {
    long long gain = 0;
    if (options_.metric == ImprovementMetric::kWeightSquared) {
      // The linear guard keeps the rider count from ever dropping.
      if (w2_ <= r2_ || w_ < r_) return;
      gain = w2_ - r2_;
    } else {
      if (w_ <= r_) return;
      gain = w_ - r_;
    }
    if (options_.rule == ImprovementRule::kAnyImp) {
      best_ = talons_;
      stop_ = true;
    } else if (gain > best_gain_) {
      best_gain_ = gain;
      best_ = talons_;
    }
  }

  bool expired() {
    if (!limited_) return false;
    if ((++ticks_ & 1023) != 0) return false;
    if (Clock::now() > deadline_) {
      timed_out = true;
      stop_ = true;
      best_.clear();
    }
    return timed_out;
  }

  void dfs(std::size_t from) {
    if (static_cast<int>(talons_.size()) >= g_.k) return;
    for (std::size_t x = from; x < cand_.size() && !stop_; ++x) {
      if (expired()) return;
      const long long room = g_.k - static_cast<long long>(talons_.size());
      if (options_.metric == ImprovementMetric::kWeightSquared) {
        if (w2_ + room * sq(suffix_max_[x]) <= r2_) return;
      } else if (w_ + room * suffix_max_[x] <= r_) {
        return;
      }
      const int v = cand_[x];
      bool ok = true;
      for (int t : talons_) {
        if (g_.adjacent(t, v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      talons_.push_back(v);
      add(v);
      consider();
      dfs(x + 1);
      remove(v);
      talons_.pop_back();
    }
  }

  const ConflictGraph& g_;
  const LocalSearchOptions& options_;
  const std::vector<char>& in_;
  std::vector<int> cover_;
  std::vector<int> cand_;
  std::vector<int> suffix_max_;
  std::vector<int> talons_;
  std::vector<int> best_;
  long long best_gain_ = 0;
  long long w_ = 0, w2_ = 0, r_ = 0, r2_ = 0;
  bool stop_ = false;
  bool limited_ = false;
  unsigned long long ticks_ = 0;
  Clock::time_point deadline_;
};

}  // namespace

LocalSearchResult local_search(const ConflictGraph& g, std::vector<int> start, const LocalSearchOptions& options) {
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  for (int v : start) {
    if (v < 0 || v >= static_cast<int>(g.size())) throw std::invalid_argument("vertex out of range");
  }
  if (!g.independent(start)) throw std::invalid_argument("local search start set is not independent");

  std::vector<char> in(g.size(), 0);
  for (int v : start) in[v] = 1;
  LocalSearchResult result;
  ClawSearch search(g, options, in);
  for (;;) {
    const auto now = Clock::now();
    const bool limited = options.round_limit.has_value();
    const auto deadline = limited ? now + *options.round_limit : now;
    auto talons = search.find(deadline, limited);
    if (search.timed_out) {
      result.timed_out = true;
      break;
    }
    if (talons.empty()) break;
    for (int t : talons) {
      for (int u : g.adjacency[t]) in[u] = 0;
    }
    for (int t : talons) in[t] = 1;
    ++result.improvements;
  }
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    if (in[v]) result.vertices.push_back(v);
  }
  return result;
}

}  // namespace mtr
