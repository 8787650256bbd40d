#include "axcond/disorder.hpp"

#include <random>
#include <stdexcept>

namespace axcond {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t realization_seed(std::uint64_t master, std::int64_t index) {
  // odd multiplier and the splitmix finalizer are both bijections on u64
  const std::uint64_t mixed_index =
      0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1ull);
  return splitmix64(splitmix64(master) ^ mixed_index);
}

DisorderModel DisorderModel::uniform(double w, std::uint64_t master_seed) {
  if (!(w > 0.0))
    throw std::invalid_argument("disorder width must be positive, got " + std::to_string(w));
  DisorderModel m;
  m.family = "uniform";
  m.width = w;
  m.rho_sup = 1.0 / w;
  m.v_min = -w / 2.0;
  m.v_max = w / 2.0;
  m.master_seed = master_seed;
  return m;
}

Realization sample_potential(const DisorderModel& model, const TorusLattice& lat,
                             std::int64_t index) {
  if (model.family != "uniform")
    throw std::invalid_argument("unknown disorder family: " + model.family);
  if (index < 0) throw std::invalid_argument("realization index must be >= 0");
  Realization r;
  r.index = index;
  r.seed = realization_seed(model.master_seed, index);
  r.potential.resize(static_cast<std::size_t>(lat.n_sites));
  std::mt19937_64 gen(r.seed);
  // explicit 53-bit mapping: uniform_real_distribution is implementation-defined
  for (double& v : r.potential) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    v = model.v_min + model.width * u;
  }
  return r;
}

}  // namespace axcond
