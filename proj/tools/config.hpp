#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scalerel/quaternion.hpp"

namespace scalerel::cli {

enum class ValueType { real, integer, seed, vec3, int_list, real_list, choice };

enum class Constraint { none, positive, non_negative, at_least_one };

struct KeySpec {
  std::string key;
  ValueType type = ValueType::real;
  std::string default_value;
  std::string help;
  Constraint constraint = Constraint::none;
  std::vector<std::string> choices;  // ValueType::choice only
};

using Value = std::variant<double, long long, std::uint64_t, Vec3, std::vector<int>,
                           std::vector<double>, std::string>;

/// Key schema of one subcommand.
struct Schema {
  std::string command;
  std::string description;
  std::vector<KeySpec> keys;

  const KeySpec* find(const std::string& key) const;
};

const std::vector<Schema>& schemas();
const Schema& schema_for(const std::string& command);

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::map<std::string, Value> values;
  std::map<std::string, std::string> text;  // resolved values as written
  std::string out;                          // empty: stdout
  Format format = Format::csv;

  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  std::uint64_t seed(const std::string& key) const;
  Vec3 vec3(const std::string& key) const;
  const std::vector<int>& int_list(const std::string& key) const;
  const std::vector<double>& real_list(const std::string& key) const;
  const std::string& choice(const std::string& key) const;
};

/// Parses and validates one value; throws ConfigError naming the key.
Value parse_value(const KeySpec& spec, const std::string& text);

/// Reads `key = value` lines; `#` starts a comment. Throws ConfigError on
/// malformed lines (key "<file>:<line>") and on keys outside the schema.
std::map<std::string, std::string> read_config_file(const std::string& path, const Schema& schema);

/// Defaults, then file values, then flag values. Keys `out` and `format` are
/// accepted in the file as well.
RunConfig resolve_config(const Schema& schema, const std::map<std::string, std::string>& file,
                         const std::map<std::string, std::string>& flags);

/// Output path after applying SCALEREL_OUTPUT_DIR: with no --out the file is
/// <dir>/<command>.<ext>; a relative --out is placed under <dir>.
std::string output_path(const RunConfig& cfg);

}  // namespace scalerel::cli
