#include <gtest/gtest.h>

#include <sstream>

#include "mtr/trip.hpp"
#include "mtr/trip_io.hpp"
#include "support.hpp"

using namespace mtr;

namespace {

DriverTrip driver(const TransitNetwork& net) {
  DriverTrip d;
  d.id = TripId{1};
  d.origin = LocationId{0};
  d.destination = LocationId{3};
  d.capacity = 2;
  d.stop_limit = 2;
  d.detour_limit = 120;
  d.earliest_departure = 1000;
  d.latest_arrival = 2000;
  d.match_type = MatchType::kType1;
  complete_driver(d, net);
  return d;
}

RiderTrip rider(const TransitNetwork& net) {
  RiderTrip r;
  r.id = TripId{7};
  r.origin = LocationId{1};
  r.destination = LocationId{3};
  r.earliest_departure = 1000;
  r.latest_arrival = 3000;
  complete_rider(r, net);
  return r;
}

}  // namespace

TEST(Trip, MatchTypeNames) {
  for (auto t : {MatchType::kType1, MatchType::kType2, MatchType::kEither}) {
    EXPECT_EQ(parse_match_type(to_string(t)), t);
  }
  EXPECT_FALSE(parse_match_type("type3").has_value());
  EXPECT_TRUE(accepts(MatchType::kEither, MatchType::kType2));
  EXPECT_FALSE(accepts(MatchType::kType1, MatchType::kType2));
}

TEST(Trip, AcceptanceThreshold) {
  EXPECT_EQ(acceptance_threshold(0.8, 4500), 3600);
  EXPECT_EQ(acceptance_threshold(0.8, 1001), 800);
  EXPECT_EQ(acceptance_threshold(1.0, 1001), 1001);
  EXPECT_EQ(acceptance_threshold(0.8, 0), 0);
}

TEST(Trip, DerivedFields) {
  TransitNetwork net(test::line_spec());
  auto d = driver(net);
  EXPECT_EQ(d.max_trip_time, 300 + 120);
  d.preferred_path = {LocationId{0}, LocationId{1}, LocationId{0}, LocationId{3}};
  EXPECT_EQ(driver_max_trip_time(d, net), 500 + 120);
  auto r = rider(net);
  EXPECT_EQ(r.baseline_transit_time, net.best_transit_route_time(LocationId{1}, LocationId{3}));
  EXPECT_EQ(r.max_trip_time, r.baseline_transit_time);
  EXPECT_DOUBLE_EQ(r.acceptance_rate, 0.8);
}

TEST(Trip, Validation) {
  TransitNetwork net(test::line_spec());
  TripSet ok{{driver(net)}, {rider(net)}};
  EXPECT_NO_THROW(validate_trip_set(ok, net));

  auto bad = ok;
  bad.drivers[0].capacity = 0;
  EXPECT_THROW(validate_trip_set(bad, net), TripError);
  bad = ok;
  bad.drivers[0].latest_arrival = bad.drivers[0].earliest_departure;
  EXPECT_THROW(validate_trip_set(bad, net), TripError);
  bad = ok;
  bad.drivers[0].max_trip_time += 1;
  EXPECT_THROW(validate_trip_set(bad, net), TripError);
  bad = ok;
  bad.riders[0].acceptance_rate = 1.5;
  EXPECT_THROW(validate_trip_set(bad, net), TripError);
  bad = ok;
  bad.riders[0].baseline_transit_time -= 1;
  EXPECT_THROW(validate_trip_set(bad, net), TripError);
  bad = ok;
  bad.riders[0].id = bad.drivers[0].id;
  EXPECT_THROW(validate_trip_set(bad, net), TripError);
  bad = ok;
  bad.riders[0].destination = LocationId{40};
  EXPECT_THROW(validate_trip_set(bad, net), TripError);
}

TEST(Trip, RouteValidation) {
  TransitNetwork net(test::line_spec());
  auto r = rider(net);
  RideshareRoute route{r.id, TripId{1}, StationId{1}, 0, {100, 50}};
  route.total_time = 150;
  EXPECT_NO_THROW(validate_route(route, r));
  route.total_time = 151;
  EXPECT_THROW(validate_route(route, r), TripError);
  route.leg_times = {acceptance_threshold(r), 1};
  route.total_time = acceptance_threshold(r) + 1;
  EXPECT_THROW(validate_route(route, r), TripError);
}

TEST(Trip, SymbolTableCoversAnnouncement) {
  EXPECT_EQ(kTripSymbols.size(), 14u);
  for (const auto& s : kTripSymbols) {
    EXPECT_FALSE(s.symbol.empty());
    EXPECT_TRUE(s.owner == "DriverTrip" || s.owner == "RiderTrip") << s.owner;
  }
}

TEST(TripIo, RoundTrip) {
  TransitNetwork net(test::line_spec());
  TripSet trips{{driver(net)}, {rider(net)}};
  trips.riders[0].match_type = MatchType::kType2;
  std::stringstream ss;
  write_trips(ss, trips);
  const auto back = parse_trips(ss, net);
  ASSERT_EQ(back.drivers.size(), 1u);
  ASSERT_EQ(back.riders.size(), 1u);
  std::stringstream again;
  write_trips(again, back);
  std::stringstream first;
  write_trips(first, trips);
  EXPECT_EQ(again.str(), first.str());
  EXPECT_EQ(back.riders[0].match_type, MatchType::kType2);
}

TEST(TripIo, DerivedFieldsMayBeOmitted) {
  TransitNetwork net(test::line_spec());
  std::stringstream in(
      "{\"kind\":\"rider\",\"type\":\"either\",\"id\":5,\"o\":1,\"d\":3,\"alpha\":100,\"beta\":5000}\n"
      "\n"
      "{\"kind\":\"driver\",\"type\":\"type2\",\"id\":6,\"o\":0,\"d\":3,\"n\":3,\"z\":60,\"delta\":2,\"alpha\":100,\"beta\":900}\n");
  const auto trips = parse_trips(in, net);
  ASSERT_EQ(trips.riders.size(), 1u);
  EXPECT_EQ(trips.riders[0].baseline_transit_time, net.best_transit_route_time(LocationId{1}, LocationId{3}));
  EXPECT_EQ(trips.riders[0].match_type, MatchType::kEither);
  EXPECT_EQ(trips.drivers[0].max_trip_time, 360);
}

TEST(TripIo, ErrorsNameTheLine) {
  TransitNetwork net(test::line_spec());
  std::stringstream in(
      "{\"kind\":\"rider\",\"type\":\"either\",\"id\":5,\"o\":1,\"d\":3,\"alpha\":100,\"beta\":5000}\n"
      "{\"kind\":\"rider\",\"type\":\"type1\",\"id\":6,\"o\":1,\"d\":99,\"alpha\":100,\"beta\":5000}\n");
  try {
    parse_trips(in, net);
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::stringstream junk("{\"kind\":\"bus\"}\n");
  EXPECT_THROW(parse_trips(junk, net), std::exception);
}
