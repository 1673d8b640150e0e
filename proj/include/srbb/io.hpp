#pragma once

#include "srbb/gamma.hpp"
#include "srbb/greenlab.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace srbb::io {

inline constexpr const char* kCodeVersion = "srbb 0.1.0";

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);
double parse_double(const std::string& s);

std::uint64_t fnv1a(std::string_view s);

// Comment-prefixed key = value block; stripping '#' lines leaves pure CSV.
std::string header_block(const std::vector<std::pair<std::string, std::string>>& kv);

// Line-delimited gamma table with header, data rows and a checksum over the
// rows. Round-trips bit-exactly.
std::string serialize_gamma_table(const gamma::GammaTable& table);
gamma::GammaTable parse_gamma_table(const std::string& text); // throws config_error on damage

std::string serialize_grid_fn(const greenlab::GridFn& f);
greenlab::GridFn parse_grid_fn(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);

} // namespace srbb::io
