#include "mtr/network.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <queue>
#include <sstream>

namespace mtr {

const char* to_string(TransitMode mode) {
  switch (mode) {
    case TransitMode::kTrain: return "train";
    case TransitMode::kBus: return "bus";
  }
  return "?";
}

const char* to_string(AreaKind kind) {
  switch (kind) {
    case AreaKind::kCommunity: return "community";
    case AreaKind::kDowntown: return "downtown";
    case AreaKind::kAirport: return "airport";
  }
  return "?";
}

namespace {

using Adjacency = std::vector<std::vector<std::pair<std::int32_t, Seconds>>>;

std::vector<Seconds> dijkstra(const Adjacency& adj, std::int32_t source) {
  std::vector<Seconds> dist(adj.size(), kUnreachable);
  using Item = std::pair<Seconds, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

std::size_t reachable_count(const std::vector<std::vector<std::int32_t>>& adj) {
  if (adj.empty()) return 0;
  std::vector<char> seen(adj.size(), 0);
  std::vector<std::int32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count;
}

std::string format_issue(const SpecIssue& issue) {
  std::ostringstream os;
  os << issue.section;
  if (issue.index != SpecIssue::npos) os << "[" << issue.index << "]";
  os << ": " << issue.message;
  return os.str();
}

}  // namespace

std::vector<SpecIssue> validate_network_spec(const NetworkSpec& spec) {
  std::vector<SpecIssue> issues;
  auto add = [&](std::string section, std::size_t index, std::string message) {
    issues.push_back({std::move(section), index, std::move(message)});
  };

  const auto n = static_cast<std::int64_t>(spec.locations.size());
  const auto n_areas = static_cast<std::int64_t>(spec.areas.size());
  const auto n_stations = static_cast<std::int64_t>(spec.stations.size());

  if (!(spec.multipliers.train >= 1.0)) {
    add("multipliers", SpecIssue::npos, "train factor must be >= 1");
  }
  if (!(spec.multipliers.bus >= spec.multipliers.train)) {
    add("multipliers", SpecIssue::npos, "bus factor must be >= train factor");
  }
  for (std::size_t i = 0; i < spec.areas.size(); ++i) {
    if (spec.areas[i].id != static_cast<int>(i)) add("areas", i, "area ids must be 0..n-1 in order");
  }
  if (n == 0) add("locations", SpecIssue::npos, "network has no locations");
  for (std::size_t i = 0; i < spec.locations.size(); ++i) {
    const auto& loc = spec.locations[i];
    if (loc.id.value != static_cast<std::int32_t>(i)) {
      add("locations", i, "location ids must be 0..n-1 in order");
    }
    if (!std::isfinite(loc.coords.x) || !std::isfinite(loc.coords.y)) {
      add("locations", i, "coordinates must be finite");
    }
    if (loc.area < -1 || loc.area >= n_areas) add("locations", i, "unknown area");
  }
  if (spec.stations.empty()) add("stations", SpecIssue::npos, "network has no stations");
  for (std::size_t i = 0; i < spec.stations.size(); ++i) {
    const auto& st = spec.stations[i];
    if (st.id.value != static_cast<std::int32_t>(i)) add("stations", i, "station ids must be 0..n-1 in order");
    if (st.location.value < 0 || st.location.value >= n) add("stations", i, "station location not in network");
  }
  for (std::size_t i = 0; i < spec.road_edges.size(); ++i) {
    const auto& e = spec.road_edges[i];
    if (e.from.value < 0 || e.from.value >= n || e.to.value < 0 || e.to.value >= n) {
      add("road_edges", i, "endpoint not in network");
    }
    if (e.seconds <= 0) add("road_edges", i, "edge weight must be > 0");
  }
  for (std::size_t i = 0; i < spec.transit_lines.size(); ++i) {
    const auto& line = spec.transit_lines[i];
    if (line.stations.size() < 2) add("transit_lines", i, "a line needs at least two stations");
    for (auto s : line.stations) {
      if (s.value < 0 || s.value >= n_stations) {
        add("transit_lines", i, "line references unknown station");
        break;
      }
    }
  }
  if (!issues.empty()) return issues;

  std::vector<std::vector<std::int32_t>> fwd(spec.locations.size()), bwd(spec.locations.size());
  for (const auto& e : spec.road_edges) {
    fwd[e.from.value].push_back(e.to.value);
    bwd[e.to.value].push_back(e.from.value);
  }
  if (reachable_count(fwd) != spec.locations.size() || reachable_count(bwd) != spec.locations.size()) {
    add("road_edges", SpecIssue::npos, "road graph is not strongly connected");
  }
  return issues;
}

struct TransitNetwork::Cache {
  explicit Cache(std::size_t n)
      : tree_flags(new std::once_flag[n]), trees(n), reach_flags(new std::once_flag[n]), reach(n) {}
  std::unique_ptr<std::once_flag[]> tree_flags;
  std::vector<std::vector<Seconds>> trees;
  std::unique_ptr<std::once_flag[]> reach_flags;
  std::vector<std::vector<Seconds>> reach;
};

TransitNetwork::TransitNetwork(NetworkSpec spec) : spec_(std::move(spec)) {
  auto issues = validate_network_spec(spec_);
  if (!issues.empty()) throw NetworkError("invalid network: " + format_issue(issues.front()));

  const std::size_t n = spec_.locations.size();
  out_edges_.assign(n, {});
  for (const auto& e : spec_.road_edges) out_edges_[e.from.value].emplace_back(e.to.value, e.seconds);
  cache_ = std::make_unique<Cache>(n);

  area_members_.assign(spec_.areas.size(), {});
  for (const auto& loc : spec_.locations) {
    if (loc.area >= 0) area_members_[loc.area].push_back(loc.id);
  }
  area_centers_.assign(spec_.areas.size(), LocationId{});
  for (std::size_t a = 0; a < area_members_.size(); ++a) {
    const auto& members = area_members_[a];
    if (members.empty()) continue;
    double cx = 0, cy = 0;
    for (auto id : members) {
      cx += spec_.locations[id.value].coords.x;
      cy += spec_.locations[id.value].coords.y;
    }
    cx /= static_cast<double>(members.size());
    cy /= static_cast<double>(members.size());
    double best = std::numeric_limits<double>::infinity();
    for (auto id : members) {
      const auto& p = spec_.locations[id.value].coords;
      double d = (p.x - cx) * (p.x - cx) + (p.y - cy) * (p.y - cy);
      if (d < best) {
        best = d;
        area_centers_[a] = id;
      }
    }
  }

  // Station graph: line hops both ways plus free transfers between
  // stations sharing a location.
  const std::size_t s_count = spec_.stations.size();
  Adjacency station_adj(s_count);
  for (const auto& line : spec_.transit_lines) {
    for (std::size_t k = 0; k + 1 < line.stations.size(); ++k) {
      auto a = line.stations[k];
      auto b = line.stations[k + 1];
      auto la = spec_.stations[a.value].location;
      auto lb = spec_.stations[b.value].location;
      station_adj[a.value].emplace_back(b.value, hop_cost(line.mode, car_time(la, lb)));
      station_adj[b.value].emplace_back(a.value, hop_cost(line.mode, car_time(lb, la)));
    }
  }
  for (std::size_t a = 0; a < s_count; ++a) {
    for (std::size_t b = 0; b < s_count; ++b) {
      if (a != b && spec_.stations[a].location == spec_.stations[b].location) {
        station_adj[a].emplace_back(static_cast<std::int32_t>(b), 0);
      }
    }
  }
  transit_matrix_.assign(s_count * s_count, kUnreachable);
  for (std::size_t a = 0; a < s_count; ++a) {
    auto dist = dijkstra(station_adj, static_cast<std::int32_t>(a));
    std::copy(dist.begin(), dist.end(), transit_matrix_.begin() + static_cast<std::ptrdiff_t>(a * s_count));
  }
}

TransitNetwork::~TransitNetwork() = default;
TransitNetwork::TransitNetwork(TransitNetwork&&) noexcept = default;
TransitNetwork& TransitNetwork::operator=(TransitNetwork&&) noexcept = default;

void TransitNetwork::check_location(LocationId id, const char* what) const {
  if (!contains(id)) {
    std::ostringstream os;
    os << "unknown location " << id.value << " (" << what << ")";
    throw NetworkError(os.str());
  }
}

void TransitNetwork::check_station(StationId id, const char* what) const {
  if (!contains(id)) {
    std::ostringstream os;
    os << "unknown station " << id.value << " (" << what << ")";
    throw NetworkError(os.str());
  }
}

bool TransitNetwork::contains(LocationId id) const {
  return id.value >= 0 && static_cast<std::size_t>(id.value) < spec_.locations.size();
}

bool TransitNetwork::contains(StationId id) const {
  return id.value >= 0 && static_cast<std::size_t>(id.value) < spec_.stations.size();
}

const Station& TransitNetwork::station(StationId id) const {
  check_station(id, "station");
  return spec_.stations[id.value];
}

const Location& TransitNetwork::location(LocationId id) const {
  check_location(id, "location");
  return spec_.locations[id.value];
}

const Area& TransitNetwork::area(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= spec_.areas.size()) throw NetworkError("unknown area");
  return spec_.areas[id];
}

std::span<const LocationId> TransitNetwork::area_locations(int area) const {
  if (area < 0 || static_cast<std::size_t>(area) >= area_members_.size()) throw NetworkError("unknown area");
  return area_members_[area];
}

LocationId TransitNetwork::area_center(int area) const {
  if (area < 0 || static_cast<std::size_t>(area) >= area_centers_.size()) throw NetworkError("unknown area");
  return area_centers_[area];
}

const std::vector<Seconds>& TransitNetwork::forward_tree(LocationId source) const {
  const auto idx = static_cast<std::size_t>(source.value);
  std::call_once(cache_->tree_flags[idx], [&] { cache_->trees[idx] = dijkstra(out_edges_, source.value); });
  return cache_->trees[idx];
}

const std::vector<Seconds>& TransitNetwork::transit_reach(LocationId origin) const {
  const auto idx = static_cast<std::size_t>(origin.value);
  std::call_once(cache_->reach_flags[idx], [&] {
    const auto& tree = forward_tree(origin);
    const std::size_t s_count = spec_.stations.size();
    std::vector<Seconds> reach(s_count, kUnreachable);
    for (std::size_t s = 0; s < s_count; ++s) {
      const Seconds access = hop_cost(TransitMode::kBus, tree[spec_.stations[s].location.value]);
      const Seconds* row = &transit_matrix_[s * s_count];
      for (std::size_t t = 0; t < s_count; ++t) {
        if (row[t] >= kUnreachable) continue;
        reach[t] = std::min(reach[t], access + row[t]);
      }
    }
    cache_->reach[idx] = std::move(reach);
  });
  return cache_->reach[idx];
}

Seconds TransitNetwork::hop_cost(TransitMode mode, Seconds car_seconds) const {
  const double factor = mode == TransitMode::kTrain ? spec_.multipliers.train : spec_.multipliers.bus;
  return static_cast<Seconds>(std::llround(factor * static_cast<double>(car_seconds)));
}

Seconds TransitNetwork::car_time(LocationId u, LocationId v) const {
  check_location(u, "car_time source");
  check_location(v, "car_time target");
  if (u == v) return 0;
  return forward_tree(u)[v.value];
}

Seconds TransitNetwork::path_car_time(std::span<const LocationId> path) const {
  Seconds total = 0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) total += car_time(path[k], path[k + 1]);
  if (path.size() == 1) check_location(path[0], "path");
  return total;
}

Seconds TransitNetwork::transit_time(StationId s1, StationId s2) const {
  check_station(s1, "transit_time source");
  check_station(s2, "transit_time target");
  const Seconds t = transit_matrix_[static_cast<std::size_t>(s1.value) * spec_.stations.size() + s2.value];
  if (t >= kUnreachable) {
    std::ostringstream os;
    os << "station " << s2.value << " unreachable from station " << s1.value << " by transit";
    throw NetworkError(os.str());
  }
  return t;
}

Seconds TransitNetwork::best_transit_route_time(LocationId o, LocationId d) const {
  check_location(o, "transit route origin");
  check_location(d, "transit route destination");
  if (o == d) return 0;
  const auto& reach = transit_reach(o);
  Seconds best = kUnreachable;
  for (std::size_t s = 0; s < reach.size(); ++s) {
    if (reach[s] >= kUnreachable) continue;
    const Seconds egress = hop_cost(TransitMode::kBus, forward_tree(spec_.stations[s].location)[d.value]);
    best = std::min(best, reach[s] + egress);
  }
  return best;
}

}  // namespace mtr
