#include "axcond/lattice.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace axcond {

TorusLattice TorusLattice::build(int d, std::int64_t l) {
  if (d < 1) throw std::invalid_argument("lattice dimension must be >= 1, got " + std::to_string(d));
  if (l < 3) throw std::invalid_argument("lattice side must be >= 3, got " + std::to_string(l));
  std::int64_t n = 1;
  for (int a = 0; a < d; ++a) {
    if (n > std::numeric_limits<std::int64_t>::max() / l)
      throw std::invalid_argument("site count overflows: L=" + std::to_string(l) +
                                  " d=" + std::to_string(d));
    n *= l;
  }
  TorusLattice t;
  t.dim = d;
  t.side = l;
  t.n_sites = n;
  return t;
}

std::int64_t TorusLattice::stride(int axis) const {
  std::int64_t s = 1;
  for (int a = axis + 1; a < dim; ++a) s *= side;
  return s;
}

std::int64_t TorusLattice::coord(std::int64_t site, int axis) const {
  return (site / stride(axis)) % side;
}

std::int64_t TorusLattice::neighbor(std::int64_t site, int k) const {
  const int axis = k / 2;
  const std::int64_t s = stride(axis);
  const std::int64_t x = (site / s) % side;
  const std::int64_t base = site - x * s;
  const std::int64_t xn = (k % 2 == 0) ? (x + 1) % side : (x + side - 1) % side;
  return base + xn * s;
}

std::int64_t TorusLattice::graph_distance(std::int64_t a, std::int64_t b) const {
  std::int64_t dist = 0;
  for (int axis = 0; axis < dim; ++axis) {
    const std::int64_t da = coord(a, axis), db = coord(b, axis);
    const std::int64_t diff = da > db ? da - db : db - da;
    dist += diff < side - diff ? diff : side - diff;
  }
  return dist;
}

std::vector<double> TorusLattice::centered_positions() const {
  std::vector<double> c(static_cast<std::size_t>(n_sites));
  const std::int64_t s = stride(0);
  const double shift = static_cast<double>(side - 1) / 2.0;
  for (std::int64_t i = 0; i < n_sites; ++i)
    c[static_cast<std::size_t>(i)] = static_cast<double>((i / s) % side) - shift;
  return c;
}

}  // namespace axcond
