#include "chanpred/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chanpred {

std::string format_csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) {
    return field;
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') {
      quoted += '"';
    }
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string format_csv_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_metrics_csv(const std::vector<MetricRecord>& records,
                       const std::filesystem::path& path) {
  if (records.empty()) {
    throw std::invalid_argument("write_metrics_csv: no records");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_metrics_csv: cannot open " + path.string());
  }
  out << "scheme,sweep,seed,mse,runtime_ms\n";
  for (const auto& r : records) {
    out << format_csv_field(r.scheme) << ',' << format_csv_double(r.sweep) << ','
        << r.seed << ',' << format_csv_double(r.mse) << ','
        << format_csv_double(r.runtime_ms) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, int lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_quotes) {
    throw std::runtime_error("parse_metrics_csv: unterminated quote on line " +
                             std::to_string(lineno));
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<MetricRecord> parse_metrics_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("parse_metrics_csv: cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line) || line != "scheme,sweep,seed,mse,runtime_ms") {
    throw std::runtime_error("parse_metrics_csv: unexpected header in " +
                             path.string());
  }
  std::vector<MetricRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    const auto fields = split_csv_line(line, lineno);
    if (fields.size() != 5) {
      throw std::runtime_error("parse_metrics_csv: line " + std::to_string(lineno) +
                               " has " + std::to_string(fields.size()) + " fields");
    }
    MetricRecord r;
    r.scheme = fields[0];
    r.sweep = std::stod(fields[1]);
    r.seed = std::stoull(fields[2]);
    r.mse = std::stod(fields[3]);
    r.runtime_ms = std::stod(fields[4]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace chanpred
