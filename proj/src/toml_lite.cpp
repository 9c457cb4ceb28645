#include "chanpred/toml_lite.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chanpred::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("toml: line " + std::to_string(line) + ": " + what);
}

bool is_bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  int line = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    const char c = text[pos++];
    if (c == '\n') {
      ++line;
    }
    return c;
  }

  void skip_ws(bool cross_lines) {
    while (!done()) {
      const char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') {
          take();
        }
      } else if (c == ' ' || c == '\t' || c == '\r' ||
                 (cross_lines && c == '\n')) {
        take();
      } else {
        break;
      }
    }
  }
};

std::string parse_basic_string(Cursor& cur) {
  const int line = cur.line;
  cur.take();  // opening quote
  std::string out;
  while (true) {
    if (cur.done() || cur.peek() == '\n') {
      fail(line, "unterminated string");
    }
    char c = cur.take();
    if (c == '"') {
      return out;
    }
    if (c == '\\') {
      if (cur.done()) {
        fail(line, "dangling escape");
      }
      const char esc = cur.take();
      switch (esc) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        default: fail(line, std::string("unsupported escape \\") + esc);
      }
    } else {
      out += c;
    }
  }
}

Value parse_scalar_token(const std::string& token, int line) {
  Value v;
  v.line = line;
  if (token == "true" || token == "false") {
    v.kind = Value::Kind::Boolean;
    v.boolean = token == "true";
    return v;
  }

  std::string digits;
  digits.reserve(token.size());
  for (char c : token) {
    if (c != '_') {
      digits += c;
    }
  }
  const bool has_float_marks =
      digits.find_first_of(".eE") != std::string::npos ||
      digits.find("inf") != std::string::npos ||
      digits.find("nan") != std::string::npos;

  if (!has_float_marks) {
    std::int64_t i = 0;
    const auto [p, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), i);
    if (ec == std::errc() && p == digits.data() + digits.size()) {
      v.kind = Value::Kind::Integer;
      v.integer = i;
      return v;
    }
  }

  try {
    std::size_t used = 0;
    const double d = std::stod(digits, &used);
    if (used == digits.size()) {
      v.kind = Value::Kind::Float;
      v.real = d;
      return v;
    }
  } catch (const std::exception&) {
  }
  fail(line, "cannot parse value '" + token + "'");
}

Value parse_value(Cursor& cur);

Value parse_array(Cursor& cur) {
  Value v;
  v.kind = Value::Kind::Array;
  v.line = cur.line;
  cur.take();  // '['
  while (true) {
    cur.skip_ws(true);
    if (cur.done()) {
      fail(v.line, "unterminated array");
    }
    if (cur.peek() == ']') {
      cur.take();
      return v;
    }
    v.array.push_back(parse_value(cur));
    cur.skip_ws(true);
    if (cur.done()) {
      fail(v.line, "unterminated array");
    }
    if (cur.peek() == ',') {
      cur.take();
    } else if (cur.peek() != ']') {
      fail(cur.line, "expected ',' or ']' in array");
    }
  }
}

Value parse_value(Cursor& cur) {
  cur.skip_ws(false);
  if (cur.done()) {
    fail(cur.line, "missing value");
  }
  const char c = cur.peek();
  if (c == '"') {
    Value v;
    v.kind = Value::Kind::String;
    v.line = cur.line;
    v.str = parse_basic_string(cur);
    return v;
  }
  if (c == '[') {
    return parse_array(cur);
  }
  if (c == '{') {
    fail(cur.line, "inline tables are not supported");
  }
  std::string token;
  const int line = cur.line;
  while (!cur.done()) {
    const char t = cur.peek();
    if (t == '\n' || t == '#' || t == ',' || t == ']' || t == ' ' || t == '\t' ||
        t == '\r') {
      break;
    }
    token += cur.take();
  }
  if (token.empty()) {
    fail(line, "missing value");
  }
  return parse_scalar_token(token, line);
}

std::string parse_key(Cursor& cur) {
  std::string key;
  while (!cur.done()) {
    const char c = cur.peek();
    if (is_bare_key_char(c) || c == '.') {
      key += cur.take();
    } else {
      break;
    }
  }
  if (key.empty() || key.front() == '.' || key.back() == '.') {
    fail(cur.line, "malformed key");
  }
  return key;
}

}  // namespace

std::string Value::as_string() const {
  if (kind != Kind::String) {
    throw std::runtime_error("toml: line " + std::to_string(line) +
                             ": expected a string");
  }
  return str;
}

std::int64_t Value::as_integer() const {
  if (kind != Kind::Integer) {
    throw std::runtime_error("toml: line " + std::to_string(line) +
                             ": expected an integer");
  }
  return integer;
}

double Value::as_double() const {
  if (kind == Kind::Integer) {
    return static_cast<double>(integer);
  }
  if (kind == Kind::Float) {
    return real;
  }
  throw std::runtime_error("toml: line " + std::to_string(line) +
                           ": expected a number");
}

bool Value::as_boolean() const {
  if (kind != Kind::Boolean) {
    throw std::runtime_error("toml: line " + std::to_string(line) +
                             ": expected a boolean");
  }
  return boolean;
}

std::vector<double> Value::as_double_array() const {
  if (kind != Kind::Array) {
    return {as_double()};
  }
  std::vector<double> out;
  out.reserve(array.size());
  for (const auto& v : array) {
    out.push_back(v.as_double());
  }
  return out;
}

std::vector<std::int64_t> Value::as_integer_array() const {
  if (kind != Kind::Array) {
    return {as_integer()};
  }
  std::vector<std::int64_t> out;
  out.reserve(array.size());
  for (const auto& v : array) {
    out.push_back(v.as_integer());
  }
  return out;
}

std::vector<std::string> Value::as_string_array() const {
  if (kind != Kind::Array) {
    return {as_string()};
  }
  std::vector<std::string> out;
  out.reserve(array.size());
  for (const auto& v : array) {
    out.push_back(v.as_string());
  }
  return out;
}

Table parse_string(const std::string& text) {
  Table table;
  Cursor cur{text};
  std::string prefix;

  while (true) {
    cur.skip_ws(true);
    if (cur.done()) {
      return table;
    }
    if (cur.peek() == '[') {
      const int line = cur.line;
      cur.take();
      if (!cur.done() && cur.peek() == '[') {
        fail(line, "arrays of tables are not supported");
      }
      prefix = parse_key(cur);
      cur.skip_ws(false);
      if (cur.done() || cur.take() != ']') {
        fail(line, "unterminated table header");
      }
      continue;
    }
    const int line = cur.line;
    const std::string key = parse_key(cur);
    cur.skip_ws(false);
    if (cur.done() || cur.take() != '=') {
      fail(line, "expected '=' after key '" + key + "'");
    }
    Value value = parse_value(cur);
    cur.skip_ws(false);
    if (!cur.done() && cur.peek() != '\n') {
      fail(line, "trailing characters after value for '" + key + "'");
    }
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (table.count(full) != 0) {
      fail(line, "duplicate key '" + full + "'");
    }
    table.emplace(full, std::move(value));
  }
}

Table parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("toml: cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

}  // namespace chanpred::toml
