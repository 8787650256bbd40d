#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "axcond/operators.hpp"

namespace axcond {

// Half-open energy interval (lo, hi].
struct Interval {
  double lo = 0.0, hi = 0.0;
  bool contains(double x) const { return x > lo && x <= hi; }
  double width() const { return hi - lo; }
};

// Full spectral decomposition, energies ascending, eigenvectors as columns.
struct EigenSystem {
  Eigen::VectorXd energies;
  Eigen::MatrixXd vectors;
  double residual_bound = 0.0;
  std::int64_t n() const { return energies.size(); }
};

// Dense full decomposition; verifies the per-state residual
// ||H psi - E psi|| <= tol * (1 + |E|) and the trace identity. tol = 0 picks
// the default 1e-9 * max(1, ||H||_inf).
EigenSystem diagonalize(const LatticeOperator& h, double residual_tol = 0.0);

// Contiguous index range [lo, hi) into the sorted energies.
struct IdxRange {
  std::int64_t lo = 0, hi = 0;
  std::int64_t count() const { return hi - lo; }
  bool empty() const { return hi <= lo; }
};

// Indices n with energies[n] in (window.lo, window.hi].
IdxRange window_indices(const EigenSystem& eig, Interval window);

// <psi_r, Op psi_c> for r in rows, c in cols.
Eigen::MatrixXcd matrix_elements(const EigenSystem& eig, const LatticeOperator& op,
                                 IdxRange rows, IdxRange cols);

// Fast real paths used by the estimators.
Eigen::MatrixXd elements_real(const EigenSystem& eig, const Eigen::MatrixXd& core,
                              IdxRange rows, IdxRange cols);
Eigen::MatrixXd position_elements(const EigenSystem& eig, const std::vector<double>& c1,
                                  IdxRange rows, IdxRange cols);

// Windows around the Fermi energy at frequency scale nu:
//   I- = (E_F - nu, E_F],        I+ = (E_F, E_F + nu]
//   J- = (E_F - nu/2, E_F - nu/4], J+ = (E_F + nu/4, E_F + nu/2]
// Every pair from J+ x J- has energy difference in (nu/2, nu].
struct EnergyWindows {
  double e_f = 0.0, nu = 0.0;
  Interval i_minus, i_plus, j_minus, j_plus;

  static EnergyWindows at(double e_f, double nu);

  // Shrunken outer windows with margin nu^4, used by the finite-volume
  // lower-bound construction.
  Interval shrunk_minus() const;
  Interval shrunk_plus() const;
};

}  // namespace axcond
