#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrk::cli {

/// Configuration file error (bad syntax, missing key, wrong type).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Minimal TOML reader covering the configuration schema this tool ships:
/// `[table]` headers, `key = value` pairs with strings, integers, floats,
/// booleans, and flat arrays of those, plus `#` comments. Values are stored
/// under "table.key".
class TomlTable {
 public:
  struct Value {
    enum class Kind { string, integer, floating, boolean, array };
    Kind kind = Kind::string;
    std::string str;
    std::int64_t integer = 0;
    double floating = 0.0;
    bool boolean = false;
    std::vector<Value> array;
  };

  static TomlTable parse_file(const std::string& path);
  static TomlTable parse_string(const std::string& text, const std::string& origin = "<string>");

  bool contains(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key) const;
  std::int64_t get_integer(const std::string& key) const;
  double get_double(const std::string& key) const;  // accepts integer values too
  bool get_bool(const std::string& key) const;
  std::vector<double> get_double_array(const std::string& key) const;

  std::string get_string_or(const std::string& key, const std::string& fallback) const;
  std::int64_t get_integer_or(const std::string& key, std::int64_t fallback) const;
  double get_double_or(const std::string& key, double fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;

  const std::map<std::string, Value>& values() const { return values_; }

 private:
  const Value& at(const std::string& key) const;
  std::map<std::string, Value> values_;
};

}  // namespace qrk::cli
