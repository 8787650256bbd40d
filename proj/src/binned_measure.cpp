#include "axcond/binned_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace axcond {

std::int64_t BinnedMeasure::bin_of(double x) const {
  const auto it = std::lower_bound(edges.begin(), edges.end(), x);
  if (it == edges.begin() || it == edges.end()) return -1;
  return static_cast<std::int64_t>(it - edges.begin()) - 1;
}

std::vector<double> linspace_edges(double lo, double hi, std::int64_t nbins) {
  if (nbins < 1) throw std::invalid_argument("bin count must be >= 1");
  if (!(lo < hi)) throw std::invalid_argument("bin range must have lo < hi");
  std::vector<double> e(static_cast<std::size_t>(nbins) + 1);
  for (std::int64_t k = 0; k <= nbins; ++k)
    e[static_cast<std::size_t>(k)] =
        lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(nbins);
  e.front() = lo;
  e.back() = hi;
  return e;
}

void validate_edges(const std::vector<double>& edges) {
  if (edges.size() < 2) throw std::invalid_argument("bin grid needs at least two edges");
  for (std::size_t k = 1; k < edges.size(); ++k)
    if (!(edges[k] > edges[k - 1]))
      throw std::invalid_argument("bin edges must be strictly ascending");
}

MeasureAccumulator::MeasureAccumulator(std::vector<double> edges_, std::int64_t n_slots)
    : edges(std::move(edges_)), rows(static_cast<std::size_t>(n_slots)) {
  validate_edges(edges);
  if (n_slots < 1) throw std::invalid_argument("need at least one realization slot");
}

void MeasureAccumulator::set(std::int64_t slot, std::vector<double> masses) {
  if (masses.size() != edges.size() - 1)
    throw std::invalid_argument("mass vector does not match bin count");
  rows[static_cast<std::size_t>(slot)] = std::move(masses);
}

BinnedMeasure MeasureAccumulator::finalize(Extension ext) const {
  const std::size_t nb = edges.size() - 1;
  const std::size_t nr = rows.size();
  for (const auto& r : rows)
    if (r.size() != nb)
      throw std::runtime_error("realization slot left unfilled before finalize");

  BinnedMeasure m;
  m.edges = edges;
  m.extension = ext;
  m.n_real = static_cast<std::int64_t>(nr);
  m.mass_mean.assign(nb, 0.0);
  m.mass_stderr.assign(nb, std::numeric_limits<double>::quiet_NaN());

  for (std::size_t k = 0; k < nb; ++k) {
    double s = 0.0;
    for (const auto& r : rows) s += r[k];
    m.mass_mean[k] = s / static_cast<double>(nr);
  }
  if (nr >= 2) {
    for (std::size_t k = 0; k < nb; ++k) {
      double ss = 0.0;
      for (const auto& r : rows) {
        const double d = r[k] - m.mass_mean[k];
        ss += d * d;
      }
      m.mass_stderr[k] =
          std::sqrt(ss / static_cast<double>(nr - 1)) / std::sqrt(static_cast<double>(nr));
    }
  }
  double tot = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    if (!(m.mass_mean[k] >= 0.0))
      throw std::runtime_error("negative bin mass at bin " + std::to_string(k));
    tot += m.mass_mean[k];
  }
  m.total_mass = tot;
  if (ext == Extension::even && edges.front() != 0.0)
    throw std::invalid_argument("an even-extended measure must store the grid from 0");
  return m;
}

ScalarStats reduce_scalar(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("cannot reduce zero observations");
  ScalarStats s;
  s.n = static_cast<std::int64_t>(values.size());
  bool constant = true;
  for (double v : values) constant = constant && v == values.front();
  if (constant) {
    // a constant sample has exactly zero spread; skipping the summation keeps
    // the mean free of rounding residue as well
    s.mean = values.front();
    s.stderr_ = values.size() >= 2 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) {
      const double d = v - s.mean;
      ss += d * d;
    }
    s.stderr_ = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                std::sqrt(static_cast<double>(values.size()));
  } else {
    s.stderr_ = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

}  // namespace axcond
