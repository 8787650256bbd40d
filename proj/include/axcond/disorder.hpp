#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "axcond/lattice.hpp"

namespace axcond {

// Stateless bijective (per master seed) mix of master seed and realization
// index. Distinct indices give distinct seeds, so streams never collide.
std::uint64_t realization_seed(std::uint64_t master, std::int64_t index);

// Single-site potential distribution: density rho with sup norm rho_sup and
// compact support [v_min, v_max]. Uniform on [-W/2, W/2] has rho_sup = 1/W.
struct DisorderModel {
  std::string family = "uniform";
  double width = 0.0;
  double rho_sup = 0.0;
  double v_min = 0.0, v_max = 0.0;
  std::uint64_t master_seed = 0;

  static DisorderModel uniform(double w, std::uint64_t master_seed);
};

struct Realization {
  std::int64_t index = 0;
  std::uint64_t seed = 0;
  std::vector<double> potential;
};

Realization sample_potential(const DisorderModel& model, const TorusLattice& lat,
                             std::int64_t index);

}  // namespace axcond
