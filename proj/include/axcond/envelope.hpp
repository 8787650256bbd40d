#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "axcond/config.hpp"

namespace axcond {

inline constexpr const char* kToolVersion = "axcond 0.1.0";

// Provenance block embedded in every output file: config hash and canonical
// text, tool version, per-realization seeds, kernel implementation, worker
// count, warnings. Wall-clock time goes to the console, never into files,
// so reruns with the same config are byte-identical.
nlohmann::json make_envelope(const ExperimentConfig& cfg,
                             const std::vector<std::uint64_t>& seeds,
                             const std::vector<std::string>& warnings);

// Short comment header carrying the envelope identifiers for CSV files.
std::string csv_envelope_header(const ExperimentConfig& cfg);

// CSV cell formatting: shortest round-trip doubles, NaN as an empty field.
std::string csv_cell(double x);

void write_text_file(const std::string& path, const std::string& content);

// Per-realization scalar partials keyed by realization index; merge pools
// partials with equal config hash (sorted by index before reduction, so the
// result is independent of input order).
struct Partial {
  std::uint64_t config_hash = 0;
  std::int64_t index = 0;
  double value = 0.0;
};
struct Merged {
  double mean = 0.0;
  double stderr_ = 0.0;  // NaN when a single partial
  std::int64_t n = 0;
};
Merged merge_partials(std::vector<Partial> parts);

}  // namespace axcond
