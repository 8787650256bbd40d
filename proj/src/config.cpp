#include "axcond/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "axcond/kernels.hpp"

namespace axcond {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string ExperimentConfig::canonical() const {
  auto join_intervals = [this] {
    std::string s;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      if (i) s += ",";
      s += format_double(intervals[i].lo) + ":" + format_double(intervals[i].hi);
    }
    return s;
  };
  auto join_grid = [this] {
    std::string s;
    for (std::size_t i = 0; i < nu_grid.size(); ++i) {
      if (i) s += ",";
      s += format_double(nu_grid[i]);
    }
    return s;
  };
  // keys sorted; kernels folded in so an env override changes the hash
  std::string text;
  text += "bins.e_hi=" + format_double(e_hi) + "\n";
  text += "bins.e_lo=" + format_double(e_lo) + "\n";
  text += "bins.e_n=" + std::to_string(e_bins) + "\n";
  text += "bins.nu_max=" + format_double(nu_max) + "\n";
  text += "bins.nu_n=" + std::to_string(nu_bins) + "\n";
  text += "disorder.family=" + family + "\n";
  text += "disorder.w=" + format_double(w) + "\n";
  text += "fermi.p=" + format_double(p) + "\n";
  text += "fit.floor=" + format_double(mean_floor) + "\n";
  text += "fit.min_dist=" + std::to_string(fit_min_dist) + "\n";
  text += "green.e=" + format_double(green_e) + "\n";
  text += "green.eta=" + format_double(eta) + "\n";
  text += "green.s=" + format_double(s) + "\n";
  text += "intervals=" + join_intervals() + "\n";
  text += "kernels=" + std::string(kernels::active().name) + "\n";
  text += "lattice.d=" + std::to_string(d) + "\n";
  text += "lattice.l=" + std::to_string(l) + "\n";
  text += "mott.cap=" + std::to_string(cap) + "\n";
  text += "mott.cap_mode=" + cap_mode + "\n";
  text += "mott.ell=" + format_double(ell) + "\n";
  text += "mott.factor=" + format_double(factor) + "\n";
  text += "mott.nu_grid=" + join_grid() + "\n";
  text += "mott.observable=" + observable + "\n";
  text += "run.n_real=" + std::to_string(n_real) + "\n";
  text += "seed=" + std::to_string(seed) + "\n";
  text += "spacings.hi=" + format_double(spacing_hi) + "\n";
  text += "spacings.lo=" + format_double(spacing_lo) + "\n";
  text += "velocity.variant=" + variant + "\n";
  text += "windows.e_f=" + format_double(e_f) + "\n";
  text += "windows.nu=" + format_double(nu) + "\n";
  text += "windows.rect=" + windows + "\n";
  return text;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical()); }

std::string ExperimentConfig::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash()));
  return std::string(buf);
}

}  // namespace axcond
