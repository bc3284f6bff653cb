#include "mtr/hypergraph.hpp"

#include <algorithm>
#include <ostream>

#include "json.hpp"

namespace mtr {

bool match_order(const Match& a, const Match& b) {
  if (a.driver != b.driver) return a.driver < b.driver;
  if (a.riders != b.riders) {
    return std::lexicographical_compare(a.riders.begin(), a.riders.end(), b.riders.begin(), b.riders.end());
  }
  return a.type < b.type;
}

MatchHypergraph::MatchHypergraph(std::vector<Match> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end(), match_order);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& m = edges_[e];
    if (m.riders.empty()) throw std::invalid_argument("match without riders");
    max_size_ = std::max(max_size_, m.size());
    auto& di = incidence_[m.driver];
    if (di.empty()) drivers_.push_back(m.driver);
    di.push_back(e);
    for (auto r : m.riders) {
      auto& ri = incidence_[r];
      if (ri.empty()) riders_.push_back(r);
      ri.push_back(e);
    }
  }
  std::sort(riders_.begin(), riders_.end());
}

std::span<const std::size_t> MatchHypergraph::incident(TripId trip) const {
  auto it = incidence_.find(trip);
  if (it == incidence_.end()) return {};
  return it->second;
}

std::string match_to_json_line(const Match& m) {
  nlohmann::json j;
  j["driver"] = m.driver.value;
  std::vector<std::int64_t> riders;
  for (auto r : m.riders) riders.push_back(r.value);
  j["riders"] = riders;
  j["type"] = to_string(m.type);
  j["station"] = m.station.value;
  std::vector<std::int32_t> route;
  for (auto l : m.route) route.push_back(l.value);
  j["route"] = route;
  j["departure"] = m.departure;
  j["times"] = {{"driver", m.driver_time}, {"riders", m.rider_times}};
  j["time_saved"] = m.time_saved;
  return j.dump();
}

void write_hypergraph(std::ostream& out, const MatchHypergraph& h) {
  for (const auto& m : h.edges()) out << match_to_json_line(m) << '\n';
}

}  // namespace mtr
