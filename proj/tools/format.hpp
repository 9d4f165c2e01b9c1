#pragma once

#include <initializer_list>
#include <ostream>
#include <string>

#include "config.hpp"
#include "json.hpp"

namespace scalerel::cli {

using Json = nlohmann::ordered_json;

/// Shortest representation that round-trips to the same double.
std::string format_double(double v);

void write_csv_row(std::ostream& out, std::initializer_list<double> values);

Json to_json(const Value& v);
Json to_json(const Vec3& v);

/// Every resolved key of the run, typed, in schema order.
Json config_json(const RunConfig& cfg);

}  // namespace scalerel::cli
