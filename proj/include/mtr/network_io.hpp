#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mtr/network.hpp"

namespace mtr {

inline constexpr int kNetworkFormatVersion = 1;

// Serializes a spec as a versioned JSON document with one array element
// per line, so loader diagnostics can point at a line.
std::string dump_network_json(const NetworkSpec& spec);

// Parses and validates a network document. Every failure is reported as a
// NetworkError whose message starts with "line N:" when the offending
// element can be located.
NetworkSpec parse_network_json(std::string_view text);

TransitNetwork load_network(const std::filesystem::path& path);
void save_network(const NetworkSpec& spec, const std::filesystem::path& path);

}  // namespace mtr
