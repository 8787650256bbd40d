#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "axcond/spectral.hpp"

namespace axcond {

// Everything that determines the numbers. The canonical text lists every key
// in sorted order with round-trip double formatting; its hash identifies the
// run. Worker count and output directory deliberately stay outside: they may
// not change any output byte.
struct ExperimentConfig {
  // lattice
  int d = 1;
  std::int64_t l = 64;
  // disorder
  std::string family = "uniform";
  double w = 4.0;
  std::uint64_t seed = 1;
  // windows / physics
  double e_f = 0.0;
  double nu = 0.1;
  std::string variant = "commutator";
  std::string windows = "I";  // rectangle choice for psi: I or J
  // energy grid (dos)
  double e_lo = -5.0, e_hi = 5.0;
  std::int64_t e_bins = 100;
  // frequency grid (sigma)
  double nu_max = 0.5;
  std::int64_t nu_bins = 50;
  // intervals for the eigenvalue-statistics checks, encoded lo:hi
  std::vector<Interval> intervals;
  // resolvent / fractional moments
  double green_e = 0.0;
  double eta = 1e-3;
  double s = 0.2;
  // decay fits
  std::int64_t fit_min_dist = 2;
  double mean_floor = 0.0;
  double p = 1.0;
  // spacing statistics
  double spacing_lo = -1.0, spacing_hi = 1.0;
  // scaling sweep
  std::vector<double> nu_grid;
  double factor = 205.0;
  std::int64_t cap = 1024;
  std::string cap_mode = "drop";  // or "clamp"
  double ell = 0.0;               // 0 = estimate internally
  std::string observable = "psi";
  // monte carlo
  std::int64_t n_real = 100;

  // not hashed
  int workers = 1;
  std::string outdir = ".";

  std::string canonical() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

std::string format_double(double x);  // shortest round-trip
std::uint64_t fnv1a64(const std::string& text);

}  // namespace axcond
