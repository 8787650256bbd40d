#include "axcond/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace axcond {
namespace {

using cd = std::complex<double>;

// signed bins of an even-extended measure: f(center, mass), positive half
// first, then the mirror
template <class F>
void for_each_signed_bin(const BinnedMeasure& m, F&& f) {
  for (std::int64_t k = 0; k < m.bins(); ++k)
    f(m.center(k), m.mass_mean[static_cast<std::size_t>(k)]);
  for (std::int64_t k = 0; k < m.bins(); ++k)
    f(-m.center(k), m.mass_mean[static_cast<std::size_t>(k)]);
}

void require_even(const BinnedMeasure& m, const char* what) {
  if (m.extension != Extension::even)
    throw std::invalid_argument(std::string(what) + " needs an even-extended measure");
}

void require_coverage(const BinnedMeasure& m, const FieldProfile& f) {
  for (std::int64_t k = 0; k < m.bins(); ++k) {
    if (m.mass_mean[static_cast<std::size_t>(k)] == 0.0) continue;
    const double c = m.center(k);
    if (c > f.grid_max() || -c < f.grid_min())
      throw std::invalid_argument("field grid [" + std::to_string(f.grid_min()) + ", " +
                                  std::to_string(f.grid_max()) +
                                  "] does not cover the measure bin center at +-" +
                                  std::to_string(c));
  }
}

std::vector<double> realize(std::vector<cd> values, const char* what) {
  double abs_max = 0.0, imag_max = 0.0;
  for (const cd& v : values) {
    abs_max = std::max(abs_max, std::abs(v));
    imag_max = std::max(imag_max, std::abs(v.imag()));
  }
  if (imag_max > 1e-9 * std::max(1.0, abs_max))
    throw std::runtime_error(std::string(what) + " has a non-real residue: max |Im| = " +
                             std::to_string(imag_max));
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

// displace an atom off a grid node: outward by half the adjacent panel,
// inward at the outermost node
double displace_off_nodes(const FieldProfile& f, double lambda) {
  const auto it = std::lower_bound(f.nu.begin(), f.nu.end(), lambda);
  if (it == f.nu.end() || *it != lambda) return lambda;
  const std::size_t j = static_cast<std::size_t>(it - f.nu.begin());
  const std::size_t last = f.nu.size() - 1;
  const bool outward_right = lambda >= 0.0;
  if (outward_right)
    return j < last ? lambda + 0.5 * (f.nu[j + 1] - f.nu[j])
                    : lambda - 0.5 * (f.nu[j] - f.nu[j - 1]);
  return j > 0 ? lambda - 0.5 * (f.nu[j] - f.nu[j - 1])
               : lambda + 0.5 * (f.nu[j + 1] - f.nu[j]);
}

// difference quotient of g = exp(i nu t) E(nu) against the atom value. The
// raw quotient amplifies rounding by 1/(nu - lambda) once the atom sits a few
// ulps from a node, so inside a narrow neighbourhood it switches to the
// one-sided derivative of g into the panel, which is the exact limit.
cd node_quotient(const FieldProfile& f, const std::vector<cd>& g_nodes, double t,
                 const cd& gl, double lam, std::size_t node, std::size_t ja,
                 std::size_t jb) {
  const double width = f.nu[jb] - f.nu[ja];
  const double dist = f.nu[node] - lam;
  if (std::abs(dist) >= 1e-6 * width) return (g_nodes[node] - gl) / dist;
  const cd slope = (f.amp[jb] - f.amp[ja]) / width;
  return cd(0.0, t) * g_nodes[node] + std::exp(cd(0.0, f.nu[node] * t)) * slope;
}

// PV integral of g(nu)/(nu - lambda) over the field support, where
// g(nu) = exp(i nu t) E(nu) is tabulated at the nodes. Panel-wise trapezoid
// of (g(nu) - g(lambda))/(nu - lambda) plus the exact log moment.
cd pv_integral(const FieldProfile& f, const std::vector<cd>& g_nodes, double t,
               double lambda) {
  const double lam = displace_off_nodes(f, lambda);
  const cd gl = std::exp(cd(0.0, lam * t)) * f.eval(lam);
  cd acc(0.0, 0.0);
  for (std::size_t j = 0; j + 1 < f.nu.size(); ++j) {
    const double a = f.nu[j], b = f.nu[j + 1];
    const cd phi_a = node_quotient(f, g_nodes, t, gl, lam, j, j, j + 1);
    const cd phi_b = node_quotient(f, g_nodes, t, gl, lam, j + 1, j, j + 1);
    acc += 0.5 * (b - a) * (phi_a + phi_b);
    acc += gl * std::log(std::abs((b - lam) / (a - lam)));
  }
  return acc;
}

}  // namespace

FieldProfile FieldProfile::make(std::vector<double> nu, std::vector<cd> amp) {
  if (nu.size() != amp.size()) throw std::invalid_argument("field grid/amplitude size mismatch");
  if (nu.size() < 2) throw std::invalid_argument("field grid needs at least two nodes");
  for (std::size_t i = 1; i < nu.size(); ++i)
    if (!(nu[i] > nu[i - 1]))
      throw std::invalid_argument("field grid must be strictly ascending");
  const std::size_t n = nu.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    if (nu[i] != -nu[j] || amp[i] != std::conj(amp[j]))
      throw std::invalid_argument(
          "field profile must satisfy E(-nu) = conj(E(nu)) exactly on the grid (node " +
          std::to_string(i) + ")");
  }
  FieldProfile f;
  f.nu = std::move(nu);
  f.amp = std::move(amp);
  return f;
}

cd FieldProfile::eval(double x) const {
  if (x < nu.front() || x > nu.back()) return {0.0, 0.0};
  const auto it = std::upper_bound(nu.begin(), nu.end(), x);
  if (it == nu.begin()) return amp.front();
  if (it == nu.end()) return amp.back();
  const std::size_t j = static_cast<std::size_t>(it - nu.begin()) - 1;
  const double w = (x - nu[j]) / (nu[j + 1] - nu[j]);
  return amp[j] + w * (amp[j + 1] - amp[j]);
}

std::vector<double> in_phase_current(const BinnedMeasure& measure, const FieldProfile& field,
                                     const std::vector<double>& t_grid) {
  require_even(measure, "in_phase_current");
  require_coverage(measure, field);
  std::vector<cd> j(t_grid.size(), cd(0.0, 0.0));
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    cd acc(0.0, 0.0);
    for_each_signed_bin(measure, [&](double c, double mass) {
      acc += mass * std::exp(cd(0.0, c * t)) * field.eval(c);
    });
    j[i] = acc;
  }
  return realize(std::move(j), "in_phase_current");
}

std::vector<double> out_phase_current(const BinnedMeasure& measure, const FieldProfile& field,
                                      const std::vector<double>& t_grid) {
  require_even(measure, "out_phase_current");
  require_coverage(measure, field);
  double max_panel = 0.0;
  for (std::size_t j = 0; j + 1 < field.nu.size(); ++j)
    max_panel = std::max(max_panel, field.nu[j + 1] - field.nu[j]);
  double min_bin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < measure.edges.size(); ++k)
    min_bin = std::min(min_bin, measure.edges[k + 1] - measure.edges[k]);
  if (max_panel > min_bin)
    throw std::invalid_argument("field grid too coarse for this measure: panel " +
                                std::to_string(max_panel) + " > bin width " +
                                std::to_string(min_bin));

  const cd prefactor = cd(0.0, -1.0) / std::numbers::pi;  // 1/(i pi)
  std::vector<cd> j(t_grid.size(), cd(0.0, 0.0));
  std::vector<cd> g_nodes(field.nu.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    const double t = t_grid[i];
    for (std::size_t m = 0; m < field.nu.size(); ++m)
      g_nodes[m] = std::exp(cd(0.0, field.nu[m] * t)) * field.amp[m];
    cd acc(0.0, 0.0);
    for_each_signed_bin(measure, [&](double c, double mass) {
      if (mass == 0.0) return;
      acc += mass * pv_integral(field, g_nodes, t, c);
    });
    j[i] = prefactor * acc;
  }
  return realize(std::move(j), "out_phase_current");
}

}  // namespace axcond
