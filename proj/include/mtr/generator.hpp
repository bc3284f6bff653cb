#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mtr/network.hpp"
#include "mtr/trip.hpp"

namespace mtr {

inline constexpr int kIntervalsPerDay = 72;
inline constexpr Seconds kIntervalSeconds = 900;
inline constexpr Seconds kDayStart = 6 * 3600;  // first interval starts 06:00

enum class TimePeriod { kMorningRush, kMorningNormal, kNoon, kAfternoonNormal, kAfternoonRush, kEvening };

const char* to_string(TimePeriod period);
TimePeriod period_of(int interval);
// First and last interval (inclusive) of a period.
std::pair<int, int> period_range(TimePeriod period);
bool is_peak(TimePeriod period);
inline int hour_of(int interval) { return 6 + interval / 4; }
inline Seconds interval_start(int interval) { return kDayStart + interval * kIntervalSeconds; }

struct CapacityMix {
  double low = 0.8;
  double mid = 0.1;
  double high = 0.1;
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  // Total trips (riders + drivers) per interval as (hour of day, trips)
  // control points, linearly interpolated at each interval midpoint.
  std::vector<std::pair<double, double>> trip_curve{
      {6.0, 520},   {7.0, 950},   {7.75, 1150}, {8.75, 1100}, {9.5, 700},   {11.0, 620},  {12.5, 700},
      {14.5, 650},  {16.0, 950},  {17.25, 1150}, {18.5, 1050}, {19.5, 750}, {21.0, 550},  {23.75, 350}};
  double scale = 1.0;                // multiplies the curve
  double adjacency_threshold = 740;  // centre-to-centre car seconds below which areas are adjacent
  double theta = 0.8;
  double peak_type1_fraction = 0.5;  // peak trips are type1 with this probability, else type2
  CapacityMix peak_mix{0.95, 0.05, 0.0};
  CapacityMix offpeak_mix{0.8, 0.1, 0.1};
  Seconds detour_min = 300;
  Seconds detour_max = 1200;
  Seconds departure_slack = 2 * kIntervalSeconds;  // alpha is up to this long after announcement
  double driver_beta_factor = 1.5;
  double rider_beta_factor = 1.5;
  double airport_share = 0.05;
  double heatmap_smoothing = 0.1;  // pull toward the row mean
  double heatmap_noise = 0.15;     // relative jitter of heatmap cells
};

// Interval trip counts, the area adjacency relation and the driver heatmap.
struct DemandProfile {
  std::vector<int> riders;  // a_t
  std::vector<int> total;   // a_t + a_t/3, rounded
  std::vector<std::vector<char>> adjacent;  // same or adjacent areas
  // heat[h - 6][c][r]: driver flow from area c to area r during hour h.
  std::vector<std::vector<std::vector<double>>> heat;

  double flow(int c, int r, int hour) const { return heat[hour - 6][c][r]; }
  double outflow(int c, int hour) const;  // P(c, h)
  std::vector<double> destination_distribution(int c, int hour) const;
  bool close(int a, int b) const { return adjacent[a][b] != 0; }
};

DemandProfile build_demand_profile(const TransitNetwork& net, const GeneratorConfig& cfg);

// Riders of interval t; fills per-area pickup counts c_t when requested.
std::vector<RiderTrip> generate_riders(int t, const TransitNetwork& net, const DemandProfile& profile,
                                       const GeneratorConfig& cfg, std::vector<int>* area_counts = nullptr);
// c_t / 3 drivers from each area, apportioned by largest remainder.
std::vector<DriverTrip> generate_drivers(int t, const TransitNetwork& net, const DemandProfile& profile,
                                         const GeneratorConfig& cfg, std::span<const int> area_counts);
// Largest-remainder split of round(sum/3) drivers over areas.
std::vector<int> driver_quota(std::span<const int> area_counts);

TripSet generate_interval(int t, const TransitNetwork& net, const DemandProfile& profile, const GeneratorConfig& cfg);

// Stable hash of every generator setting.
std::uint64_t config_hash(const GeneratorConfig& cfg);
std::string config_to_json(const GeneratorConfig& cfg);

// One JSON-lines file per interval plus manifest.json.
void write_workload(const std::filesystem::path& dir, const TransitNetwork& net, const GeneratorConfig& cfg);
std::vector<TripSet> load_workload(const std::filesystem::path& dir, const TransitNetwork& net);

}  // namespace mtr
