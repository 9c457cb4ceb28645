#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

// Minimal TOML reader covering what experiment configs need: [table] headers,
// bare/dotted keys, strings, integers, floats (inf/nan included), booleans,
// and single-level arrays of those scalars (line breaks inside arrays are
// fine). Dates, inline tables, arrays of tables and multi-line strings are
// out of scope and rejected with an error.
namespace chanpred::toml {

struct Value {
  enum class Kind { String, Integer, Float, Boolean, Array };

  Kind kind = Kind::String;
  std::string str;
  std::int64_t integer = 0;
  double real = 0.0;
  bool boolean = false;
  std::vector<Value> array;
  int line = 0;  // source line, for error messages

  std::string as_string() const;
  std::int64_t as_integer() const;
  double as_double() const;  // accepts Integer or Float
  bool as_boolean() const;
  std::vector<double> as_double_array() const;
  std::vector<std::int64_t> as_integer_array() const;
  std::vector<std::string> as_string_array() const;
};

// Keys are flattened with dots: [channel.scm] paths = 3 -> "channel.scm.paths".
using Table = std::map<std::string, Value>;

Table parse_string(const std::string& text);
Table parse_file(const std::filesystem::path& path);

}  // namespace chanpred::toml
