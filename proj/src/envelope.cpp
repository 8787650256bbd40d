#include "axcond/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "axcond/binned_measure.hpp"
#include "axcond/kernels.hpp"

namespace axcond {

nlohmann::json make_envelope(const ExperimentConfig& cfg,
                             const std::vector<std::uint64_t>& seeds,
                             const std::vector<std::string>& warnings) {
  nlohmann::json env;
  env["config_hash"] = cfg.hash_hex();
  env["tool_version"] = kToolVersion;
  env["canonical_config"] = cfg.canonical();
  env["kernels"] = kernels::active().name;
  env["workers"] = cfg.workers;
  env["master_seed"] = cfg.seed;
  env["seeds"] = seeds;
  env["warnings"] = warnings;
  return env;
}

std::string csv_envelope_header(const ExperimentConfig& cfg) {
  std::string h;
  h += "# config_hash=" + cfg.hash_hex() + "\n";
  h += "# tool_version=" + std::string(kToolVersion) + "\n";
  h += "# master_seed=" + std::to_string(cfg.seed) + "\n";
  h += "# n_real=" + std::to_string(cfg.n_real) + "\n";
  return h;
}

std::string csv_cell(double x) { return std::isnan(x) ? std::string() : format_double(x); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("short write: " + path);
}

Merged merge_partials(std::vector<Partial> parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to merge");
  const std::uint64_t h = parts.front().config_hash;
  for (const Partial& p : parts)
    if (p.config_hash != h)
      throw std::invalid_argument("refusing to merge partials with different config hashes");
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Partial& a, const Partial& b) { return a.index < b.index; });
  std::vector<double> values(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) values[i] = parts[i].value;
  const ScalarStats s = reduce_scalar(values);
  return Merged{s.mean, s.stderr_, s.n};
}

}  // namespace axcond
