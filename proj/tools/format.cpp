#include "format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace scalerel::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_csv_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_double(v);
    first = false;
  }
  out << '\n';
}

Json to_json(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Vec3>) {
          return to_json(x);
        } else {
          return Json(x);
        }
      },
      v);
}

Json config_json(const RunConfig& cfg) {
  Json j;
  j["command"] = cfg.command;
  for (const auto& k : schema_for(cfg.command).keys) j[k.key] = to_json(cfg.values.at(k.key));
  j["format"] = cfg.format == Format::csv ? "csv" : "json";
  j["out"] = cfg.out;
  return j;
}

}  // namespace scalerel::cli
