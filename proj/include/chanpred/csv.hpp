#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace chanpred {

// One measurement cell of an experiment.
struct MetricRecord {
  std::string scheme;
  double sweep = 0.0;      // L_new, frame index, or memory size
  std::uint64_t seed = 0;  // replicate seed
  double mse = 0.0;
  double runtime_ms = 0.0;
};

// RFC-4180 field quoting; LF line endings; floats with 17 significant digits.
std::string format_csv_field(const std::string& field);
std::string format_csv_double(double value);

// Header: scheme,sweep,seed,mse,runtime_ms. Errors on empty input without
// creating the file.
void write_metrics_csv(const std::vector<MetricRecord>& records,
                       const std::filesystem::path& path);

std::vector<MetricRecord> parse_metrics_csv(const std::filesystem::path& path);

}  // namespace chanpred
