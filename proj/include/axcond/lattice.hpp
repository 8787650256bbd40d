#pragma once
#include <cstdint>
#include <vector>

namespace axcond {

// Discrete d-dimensional torus of side L >= 3, sites indexed row-major with
// the first coordinate slowest. Coordinates are centered for position
// observables: c1(x) = x1 - (L-1)/2, half-integers when L is even, so the
// position operator norm is at most L/2.
struct TorusLattice {
  int dim = 0;
  std::int64_t side = 0;
  std::int64_t n_sites = 0;

  static TorusLattice build(int d, std::int64_t l);

  std::int64_t stride(int axis) const;
  std::int64_t coord(std::int64_t site, int axis) const;

  // k in [0, 2*dim): axis k/2, direction +1 for even k, -1 for odd k
  std::int64_t neighbor(std::int64_t site, int k) const;

  double centered(std::int64_t site) const {
    return static_cast<double>(coord(site, 0)) -
           static_cast<double>(side - 1) / 2.0;
  }

  // l1 graph distance with wrap-around, minimized over windings per axis
  std::int64_t graph_distance(std::int64_t a, std::int64_t b) const;

  std::vector<double> centered_positions() const;
};

}  // namespace axcond
