#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mtr/network_io.hpp"
#include "support.hpp"

using namespace mtr;
using mtr::test::city;

TEST(Network, LineDistances) {
  TransitNetwork net(test::line_spec());
  EXPECT_EQ(net.car_time(LocationId{0}, LocationId{3}), 300);
  EXPECT_EQ(net.car_time(LocationId{2}, LocationId{2}), 0);
  EXPECT_EQ(net.path_car_time(std::vector<LocationId>{LocationId{0}, LocationId{2}, LocationId{1}}), 300);
  EXPECT_EQ(net.transit_time(StationId{0}, StationId{1}), 345);
  EXPECT_EQ(net.best_transit_route_time(LocationId{0}, LocationId{3}), 345);
  // Bus-factor access and egress both ways round beat riding the train.
  EXPECT_EQ(net.best_transit_route_time(LocationId{1}, LocationId{2}), 600);
  EXPECT_EQ(net.hop_cost(TransitMode::kBus, 151), 302);
}

TEST(Network, RejectsBadSpecs) {
  auto s = test::line_spec();
  s.road_edges.push_back({LocationId{0}, LocationId{9}, 10});
  EXPECT_FALSE(validate_network_spec(s).empty());
  EXPECT_THROW(TransitNetwork{s}, NetworkError);

  s = test::line_spec();
  s.road_edges.pop_back();  // 1 -> 0 removed; 0 is unreachable from the rest
  s.road_edges.erase(s.road_edges.begin() + 1);
  EXPECT_THROW(TransitNetwork{s}, NetworkError);

  s = test::line_spec();
  s.road_edges[0].seconds = 0;
  EXPECT_THROW(TransitNetwork{s}, NetworkError);

  s = test::line_spec();
  s.transit_lines[0].stations.pop_back();
  EXPECT_THROW(TransitNetwork{s}, NetworkError);
}

TEST(Network, UnknownIdsThrow) {
  TransitNetwork net(test::line_spec());
  EXPECT_THROW(net.car_time(LocationId{0}, LocationId{4}), NetworkError);
  EXPECT_THROW(net.transit_time(StationId{0}, StationId{2}), NetworkError);
  EXPECT_FALSE(net.contains(LocationId{-1}));
}

TEST(Network, UnreachableStationThrows) {
  auto s = test::line_spec();
  s.stations.push_back({StationId{2}, LocationId{1}, TransitMode::kBus, "lonely"});
  s.stations.push_back({StationId{3}, LocationId{2}, TransitMode::kBus, "lonely too"});
  s.transit_lines.push_back({"bus", TransitMode::kBus, {StationId{2}, StationId{3}}});
  TransitNetwork net(std::move(s));
  EXPECT_THROW(net.transit_time(StationId{0}, StationId{2}), NetworkError);
  EXPECT_EQ(net.transit_time(StationId{2}, StationId{3}), 200);
}

// Car times on the synthetic city agree with Floyd-Warshall over the raw edges.
TEST(Network, CarTimesMatchFloydWarshall) {
  const auto& net = city();
  std::vector<std::tuple<int, int, Seconds>> edges;
  for (const auto& e : net.spec().road_edges) edges.emplace_back(e.from.value, e.to.value, e.seconds);
  const auto d = test::floyd(net.location_count(), edges);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(net.location_count()) - 1);
  for (int k = 0; k < 4000; ++k) {
    const int u = pick(rng), v = pick(rng);
    ASSERT_EQ(net.car_time(LocationId{u}, LocationId{v}), d[u][v]) << u << " -> " << v;
  }
}

// Transit times agree with Floyd-Warshall over line hops; route times agree
// with a scan over every boarding and alighting station pair.
TEST(Network, TransitTimesMatchOracle) {
  const auto& net = city();
  const auto& spec = net.spec();
  auto car = [&](LocationId a, LocationId b) { return net.car_time(a, b); };
  auto factor = [&](TransitMode m) { return m == TransitMode::kTrain ? spec.multipliers.train : spec.multipliers.bus; };
  std::vector<std::tuple<int, int, Seconds>> hops;
  for (const auto& line : spec.transit_lines) {
    for (std::size_t k = 0; k + 1 < line.stations.size(); ++k) {
      const auto a = line.stations[k], b = line.stations[k + 1];
      const auto la = spec.stations[a.value].location, lb = spec.stations[b.value].location;
      hops.emplace_back(a.value, b.value, std::llround(factor(line.mode) * car(la, lb)));
      hops.emplace_back(b.value, a.value, std::llround(factor(line.mode) * car(lb, la)));
    }
  }
  for (const auto& a : spec.stations) {
    for (const auto& b : spec.stations) {
      if (a.id != b.id && a.location == b.location) hops.emplace_back(a.id.value, b.id.value, 0);
    }
  }
  const auto t = test::floyd(spec.stations.size(), hops);
  for (const auto& a : spec.stations) {
    for (const auto& b : spec.stations) {
      ASSERT_EQ(net.transit_time(a.id, b.id), t[a.id.value][b.id.value]);
    }
  }

  auto bus = [&](Seconds s) { return static_cast<Seconds>(std::llround(spec.multipliers.bus * s)); };
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(net.location_count()) - 1);
  for (int k = 0; k < 300; ++k) {
    const LocationId o{pick(rng)}, d{pick(rng)};
    Seconds best = o == d ? 0 : kUnreachable;
    for (const auto& a : spec.stations) {
      for (const auto& b : spec.stations) {
        best = std::min(best, bus(car(o, a.location)) + t[a.id.value][b.id.value] + bus(car(b.location, d)));
      }
    }
    ASSERT_EQ(net.best_transit_route_time(o, d), best);
  }
}

TEST(Network, JsonRoundTrip) {
  const auto spec = generate_network_spec({});
  const auto text = dump_network_json(spec);
  const auto back = parse_network_json(text);
  EXPECT_EQ(dump_network_json(back), text);
  TransitNetwork a(spec), b(back);
  EXPECT_EQ(a.car_time(LocationId{3}, LocationId{250}), b.car_time(LocationId{3}, LocationId{250}));
  EXPECT_THROW(parse_network_json("{\"version\": 1}"), std::exception);
  EXPECT_THROW(parse_network_json("not json"), std::exception);
}

TEST(NetworkGen, DeterministicAndComplete) {
  const auto a = generate_network_spec({});
  EXPECT_EQ(dump_network_json(a), dump_network_json(generate_network_spec({})));
  NetworkGenConfig other;
  other.seed = 2;
  EXPECT_NE(dump_network_json(a), dump_network_json(generate_network_spec(other)));
  EXPECT_TRUE(validate_network_spec(a).empty());
  EXPECT_EQ(a.areas.size(), 16u);
  int downtown = 0, airports = 0;
  for (const auto& ar : a.areas) {
    downtown += ar.kind == AreaKind::kDowntown;
    airports += ar.kind == AreaKind::kAirport;
  }
  EXPECT_EQ(downtown, 1);
  EXPECT_EQ(airports, 2);
  TransitNetwork net(a);
  for (std::size_t ar = 0; ar < net.area_count(); ++ar) {
    EXPECT_EQ(net.area_locations(static_cast<int>(ar)).size(), 25u);
    bool has_station = false;
    for (const auto& st : a.stations) has_station |= net.location(st.location).area == static_cast<int>(ar);
    EXPECT_TRUE(has_station) << "area " << ar;
  }
  // Every station can reach every other.
  for (const auto& s : a.stations) {
    for (const auto& t : a.stations) EXPECT_NO_THROW(net.transit_time(s.id, t.id));
  }
}
