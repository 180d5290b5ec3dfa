#include "toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace qrk::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

/// Strips a trailing comment, honoring quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return line.substr(0, i);
    }
  }
  return line;
}

[[noreturn]] void fail(const std::string& origin, std::size_t line_no, const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + what);
}

bool looks_like_integer(const std::string& s) {
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

TomlTable::Value parse_scalar(const std::string& raw, const std::string& origin,
                              std::size_t line_no) {
  TomlTable::Value value;
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    value.kind = TomlTable::Value::Kind::string;
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
      if (raw[i] == '\\' && i + 2 < raw.size() && (raw[i + 1] == '"' || raw[i + 1] == '\\')) {
        out.push_back(raw[i + 1]);
        ++i;
      } else {
        out.push_back(raw[i]);
      }
    }
    value.str = out;
    return value;
  }
  if (raw == "true" || raw == "false") {
    value.kind = TomlTable::Value::Kind::boolean;
    value.boolean = raw == "true";
    return value;
  }
  if (looks_like_integer(raw)) {
    value.kind = TomlTable::Value::Kind::integer;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value.integer);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
      fail(origin, line_no, "bad integer '" + raw + "'");
    }
    return value;
  }
  try {
    std::size_t consumed = 0;
    value.floating = std::stod(raw, &consumed);
    if (consumed != raw.size()) {
      fail(origin, line_no, "bad value '" + raw + "'");
    }
    value.kind = TomlTable::Value::Kind::floating;
    return value;
  } catch (const std::invalid_argument&) {
    fail(origin, line_no, "bad value '" + raw + "'");
  } catch (const std::out_of_range&) {
    fail(origin, line_no, "value out of range '" + raw + "'");
  }
}

std::vector<std::string> split_array_items(const std::string& inner, const std::string& origin,
                                           std::size_t line_no) {
  std::vector<std::string> items;
  std::string current;
  bool in_string = false;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    const char c = inner[i];
    if (c == '"' && (i == 0 || inner[i - 1] != '\\')) {
      in_string = !in_string;
      current.push_back(c);
    } else if (c == ',' && !in_string) {
      items.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (in_string) {
    fail(origin, line_no, "unterminated string in array");
  }
  const std::string last = trim(current);
  if (!last.empty()) {
    items.push_back(last);
  }
  return items;
}

}  // namespace

TomlTable TomlTable::parse_string(const std::string& text, const std::string& origin) {
  TomlTable table;
  std::istringstream stream(text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    line = trim(strip_comment(line));
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(origin, line_no, "malformed table header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        fail(origin, line_no, "empty table name");
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(origin, line_no, "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (key.empty() || raw.empty()) {
      fail(origin, line_no, "expected key = value");
    }
    Value value;
    if (raw.front() == '[') {
      if (raw.back() != ']') {
        fail(origin, line_no, "arrays must close on the same line");
      }
      value.kind = Value::Kind::array;
      for (const std::string& item : split_array_items(raw.substr(1, raw.size() - 2), origin, line_no)) {
        value.array.push_back(parse_scalar(item, origin, line_no));
      }
    } else {
      value = parse_scalar(raw, origin, line_no);
    }
    const std::string full_key = section.empty() ? key : section + "." + key;
    if (!table.values_.emplace(full_key, std::move(value)).second) {
      fail(origin, line_no, "duplicate key '" + full_key + "'");
    }
  }
  return table;
}

TomlTable TomlTable::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse_string(buffer.str(), path);
}

const TomlTable::Value& TomlTable::at(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("missing config key '" + key + "'");
  }
  return it->second;
}

std::string TomlTable::get_string(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::string) {
    throw ConfigError("config key '" + key + "' must be a string");
  }
  return v.str;
}

std::int64_t TomlTable::get_integer(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::integer) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return v.integer;
}

double TomlTable::get_double(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind == Value::Kind::floating) return v.floating;
  if (v.kind == Value::Kind::integer) return static_cast<double>(v.integer);
  throw ConfigError("config key '" + key + "' must be a number");
}

bool TomlTable::get_bool(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::boolean) {
    throw ConfigError("config key '" + key + "' must be a boolean");
  }
  return v.boolean;
}

std::vector<double> TomlTable::get_double_array(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::array) {
    throw ConfigError("config key '" + key + "' must be an array");
  }
  std::vector<double> out;
  for (const Value& item : v.array) {
    if (item.kind == Value::Kind::floating) {
      out.push_back(item.floating);
    } else if (item.kind == Value::Kind::integer) {
      out.push_back(static_cast<double>(item.integer));
    } else {
      throw ConfigError("config key '" + key + "' must be an array of numbers");
    }
  }
  return out;
}

std::string TomlTable::get_string_or(const std::string& key, const std::string& fallback) const {
  return contains(key) ? get_string(key) : fallback;
}

std::int64_t TomlTable::get_integer_or(const std::string& key, std::int64_t fallback) const {
  return contains(key) ? get_integer(key) : fallback;
}

double TomlTable::get_double_or(const std::string& key, double fallback) const {
  return contains(key) ? get_double(key) : fallback;
}

bool TomlTable::get_bool_or(const std::string& key, bool fallback) const {
  return contains(key) ? get_bool(key) : fallback;
}

}  // namespace qrk::cli
