#include "mtr/network_io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace mtr {

using nlohmann::json;

namespace {

// Line number (1-based) where each element of every top-level array starts.
std::map<std::string, std::vector<int>> element_lines(std::string_view text) {
  std::map<std::string, std::vector<int>> lines;
  int line = 1;
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  std::string current;  // text of the string being scanned
  std::string last_key_depth1;
  std::string active_section;
  bool expecting_element = false;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) {
        escaped = false;
        current.push_back(c);
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
        if (depth == 1) last_key_depth1 = current;
      } else {
        current.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_string = true;
        current.clear();
        if (depth == 2 && expecting_element) {
          lines[active_section].push_back(line);
          expecting_element = false;
        }
        break;
      case '{':
      case '[':
        if (depth == 1 && c == '[') {
          active_section = last_key_depth1;
          expecting_element = true;
        } else if (depth == 2 && expecting_element) {
          lines[active_section].push_back(line);
          expecting_element = false;
        }
        ++depth;
        break;
      case '}':
      case ']':
        --depth;
        break;
      case ',':
        if (depth == 2) expecting_element = true;
        break;
      default:
        if (depth == 2 && expecting_element && !std::isspace(static_cast<unsigned char>(c))) {
          lines[active_section].push_back(line);
          expecting_element = false;
        }
        break;
    }
  }
  return lines;
}

class Locator {
 public:
  explicit Locator(std::string_view text) : lines_(element_lines(text)) {}

  [[noreturn]] void fail(const std::string& section, std::size_t index, const std::string& message) const {
    std::ostringstream os;
    auto it = lines_.find(section);
    if (index != SpecIssue::npos && it != lines_.end() && index < it->second.size()) {
      os << "line " << it->second[index] << ": ";
    }
    os << section;
    if (index != SpecIssue::npos) os << "[" << index << "]";
    os << ": " << message;
    throw NetworkError(os.str());
  }

 private:
  std::map<std::string, std::vector<int>> lines_;
};

template <typename T>
T field(const json& obj, const char* key, const Locator& loc, const std::string& section, std::size_t index) {
  auto it = obj.find(key);
  if (it == obj.end()) loc.fail(section, index, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    loc.fail(section, index, std::string("field '") + key + "' has the wrong type");
  }
}

TransitMode parse_mode(const std::string& s, const Locator& loc, const std::string& section, std::size_t index) {
  if (s == "train") return TransitMode::kTrain;
  if (s == "bus") return TransitMode::kBus;
  loc.fail(section, index, "mode must be \"train\" or \"bus\"");
}

AreaKind parse_area_kind(const std::string& s, const Locator& loc, std::size_t index) {
  if (s == "community") return AreaKind::kCommunity;
  if (s == "downtown") return AreaKind::kDowntown;
  if (s == "airport") return AreaKind::kAirport;
  loc.fail("areas", index, "kind must be community, downtown or airport");
}

const json& array_section(const json& doc, const char* key, const Locator& loc, bool required) {
  static const json empty = json::array();
  auto it = doc.find(key);
  if (it == doc.end()) {
    if (required) loc.fail(key, SpecIssue::npos, "missing section");
    return empty;
  }
  if (!it->is_array()) loc.fail(key, SpecIssue::npos, "section must be an array");
  return *it;
}

}  // namespace

std::string dump_network_json(const NetworkSpec& spec) {
  std::ostringstream os;
  auto emit_array = [&](const char* key, const std::vector<json>& items, bool last) {
    os << "  \"" << key << "\": [";
    for (std::size_t i = 0; i < items.size(); ++i) {
      os << (i == 0 ? "\n    " : ",\n    ") << items[i].dump();
    }
    os << (items.empty() ? "]" : "\n  ]") << (last ? "\n" : ",\n");
  };

  os << "{\n  \"version\": " << kNetworkFormatVersion << ",\n";
  os << "  \"multipliers\": " << json{{"train", spec.multipliers.train}, {"bus", spec.multipliers.bus}}.dump()
     << ",\n";

  std::vector<json> areas, locations, stations, edges, lines;
  for (const auto& a : spec.areas) areas.push_back({{"id", a.id}, {"name", a.name}, {"kind", to_string(a.kind)}});
  for (const auto& l : spec.locations) {
    locations.push_back({{"id", l.id.value}, {"x", l.coords.x}, {"y", l.coords.y}, {"area", l.area}});
  }
  for (const auto& s : spec.stations) {
    stations.push_back(
        {{"id", s.id.value}, {"location", s.location.value}, {"mode", to_string(s.mode)}, {"name", s.name}});
  }
  for (const auto& e : spec.road_edges) {
    edges.push_back({{"from", e.from.value}, {"to", e.to.value}, {"seconds", e.seconds}});
  }
  for (const auto& line : spec.transit_lines) {
    std::vector<int> ids;
    for (auto s : line.stations) ids.push_back(s.value);
    lines.push_back({{"name", line.name}, {"mode", to_string(line.mode)}, {"stations", ids}});
  }
  emit_array("areas", areas, false);
  emit_array("locations", locations, false);
  emit_array("stations", stations, false);
  emit_array("road_edges", edges, false);
  emit_array("transit_lines", lines, true);
  os << "}\n";
  return os.str();
}

NetworkSpec parse_network_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw NetworkError(std::string("malformed network JSON: ") + e.what());
  }
  Locator loc(text);
  if (!doc.is_object()) loc.fail("document", SpecIssue::npos, "top level must be an object");
  auto version = doc.find("version");
  if (version == doc.end() || !version->is_number_integer() || version->get<int>() != kNetworkFormatVersion) {
    loc.fail("version", SpecIssue::npos, "unsupported or missing version (expected 1)");
  }

  NetworkSpec spec;
  if (auto m = doc.find("multipliers"); m != doc.end()) {
    if (!m->is_object()) loc.fail("multipliers", SpecIssue::npos, "must be an object");
    spec.multipliers.train = m->value("train", spec.multipliers.train);
    spec.multipliers.bus = m->value("bus", spec.multipliers.bus);
  }

  const auto& areas = array_section(doc, "areas", loc, false);
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const auto& a = areas[i];
    if (!a.is_object()) loc.fail("areas", i, "element must be an object");
    Area area;
    area.id = field<int>(a, "id", loc, "areas", i);
    area.name = a.value("name", std::string{});
    area.kind = parse_area_kind(a.value("kind", std::string("community")), loc, i);
    spec.areas.push_back(std::move(area));
  }

  const auto& locations = array_section(doc, "locations", loc, true);
  for (std::size_t i = 0; i < locations.size(); ++i) {
    const auto& l = locations[i];
    if (!l.is_object()) loc.fail("locations", i, "element must be an object");
    Location location;
    location.id = LocationId{field<std::int32_t>(l, "id", loc, "locations", i)};
    location.coords = {field<double>(l, "x", loc, "locations", i), field<double>(l, "y", loc, "locations", i)};
    location.area = l.value("area", -1);
    spec.locations.push_back(location);
  }

  const auto& stations = array_section(doc, "stations", loc, true);
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const auto& s = stations[i];
    if (!s.is_object()) loc.fail("stations", i, "element must be an object");
    Station station;
    station.id = StationId{field<std::int32_t>(s, "id", loc, "stations", i)};
    station.location = LocationId{field<std::int32_t>(s, "location", loc, "stations", i)};
    station.mode = parse_mode(field<std::string>(s, "mode", loc, "stations", i), loc, "stations", i);
    station.name = s.value("name", std::string{});
    spec.stations.push_back(std::move(station));
  }

  const auto& edges = array_section(doc, "road_edges", loc, true);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (!e.is_object()) loc.fail("road_edges", i, "element must be an object");
    spec.road_edges.push_back({LocationId{field<std::int32_t>(e, "from", loc, "road_edges", i)},
                               LocationId{field<std::int32_t>(e, "to", loc, "road_edges", i)},
                               field<Seconds>(e, "seconds", loc, "road_edges", i)});
  }

  const auto& lines = array_section(doc, "transit_lines", loc, true);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (!l.is_object()) loc.fail("transit_lines", i, "element must be an object");
    TransitLine line;
    line.name = l.value("name", std::string{});
    line.mode = parse_mode(field<std::string>(l, "mode", loc, "transit_lines", i), loc, "transit_lines", i);
    for (auto id : field<std::vector<std::int32_t>>(l, "stations", loc, "transit_lines", i)) {
      line.stations.push_back(StationId{id});
    }
    spec.transit_lines.push_back(std::move(line));
  }

  auto issues = validate_network_spec(spec);
  if (!issues.empty()) loc.fail(issues.front().section, issues.front().index, issues.front().message);
  return spec;
}

TransitNetwork load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open network file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return TransitNetwork(parse_network_json(buffer.str()));
  } catch (const NetworkError& e) {
    throw NetworkError(path.string() + ": " + e.what());
  }
}

void save_network(const NetworkSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw NetworkError("cannot write network file " + path.string());
  out << dump_network_json(spec);
}

}  // namespace mtr
