#pragma once
#include <cstdint>
#include <vector>

namespace axcond {

// Finite measure on a bin grid, bin k = (edges[k], edges[k+1]], with
// per-bin disorder means and standard errors. An even-extended measure
// stores only its positive half (edges starting at 0); mass(-B) = mass(B)
// holds by construction and consumers enumerate the mirrored bins
// explicitly.
enum class Extension { none, even };

struct BinnedMeasure {
  std::vector<double> edges;
  std::vector<double> mass_mean;
  std::vector<double> mass_stderr;  // NaN when n_real < 2 (written as null)
  std::int64_t n_real = 0;
  double total_mass = 0.0;  // sum of stored bin means
  Extension extension = Extension::none;

  std::int64_t bins() const { return static_cast<std::int64_t>(mass_mean.size()); }
  double center(std::int64_t k) const { return 0.5 * (edges[k] + edges[k + 1]); }

  // index of the bin containing x, or -1 if outside the grid
  std::int64_t bin_of(double x) const;
};

std::vector<double> linspace_edges(double lo, double hi, std::int64_t nbins);
void validate_edges(const std::vector<double>& edges);

// Collects one mass vector per realization slot; finalize reduces in slot
// order (two passes) so results do not depend on completion order.
struct MeasureAccumulator {
  std::vector<double> edges;
  std::vector<std::vector<double>> rows;

  MeasureAccumulator(std::vector<double> edges_, std::int64_t n_slots);
  void set(std::int64_t slot, std::vector<double> masses);
  BinnedMeasure finalize(Extension ext) const;
};

// Scalar analogue for per-realization scalar observables.
struct ScalarStats {
  double mean = 0.0;
  double stderr_ = 0.0;  // NaN when n < 2
  std::int64_t n = 0;
};
ScalarStats reduce_scalar(const std::vector<double>& values);

}  // namespace axcond
