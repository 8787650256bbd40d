#pragma once
#include <complex>
#include <vector>

#include "axcond/binned_measure.hpp"

namespace axcond {

// Driving field in the frequency domain: complex amplitudes on a compactly
// supported symmetric grid with E(-nu) = conj(E(nu)) holding exactly on the
// stored nodes (so time-domain fields are real). Evaluation between nodes is
// linear interpolation; zero outside the grid.
struct FieldProfile {
  std::vector<double> nu;
  std::vector<std::complex<double>> amp;

  static FieldProfile make(std::vector<double> nu, std::vector<std::complex<double>> amp);

  std::complex<double> eval(double x) const;
  double grid_min() const { return nu.front(); }
  double grid_max() const { return nu.back(); }
};

// In-phase current J_in(t) = integral of exp(i nu t) E(nu) against the
// even-extended measure, quadrature at bin centers. Real up to rounding
// (asserted at 1e-9 relative); the field grid must cover every bin center
// carrying mass.
std::vector<double> in_phase_current(const BinnedMeasure& measure, const FieldProfile& field,
                                     const std::vector<double>& t_grid);

// Out-of-phase current
//   J_out(t) = (1/(i pi)) * integral over Sigma(d lambda) of
//              PV integral d nu exp(i nu t) E(nu) / (nu - lambda).
// The principal value is evaluated panel-wise on the field grid by
// singularity subtraction; an atom landing exactly on a grid node is
// displaced outward by half the adjacent panel (inward at the last node).
// The field grid must resolve the measure: max panel width <= min bin width.
std::vector<double> out_phase_current(const BinnedMeasure& measure, const FieldProfile& field,
                                      const std::vector<double>& t_grid);

}  // namespace axcond
