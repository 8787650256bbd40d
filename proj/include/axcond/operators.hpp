#pragma once
#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "axcond/disorder.hpp"
#include "axcond/lattice.hpp"

namespace axcond {

// Sparse Hermitian operator on the lattice: off-diagonal entries stored as
// directed triples (both orientations present), real diagonal stored densely.
struct LatticeOperator {
  std::int64_t n = 0;
  bool real_symmetric = true;
  std::vector<double> diag;
  std::vector<std::int64_t> row, col;
  std::vector<std::complex<double>> val;

  Eigen::MatrixXd dense_real() const;     // requires real_symmetric
  Eigen::MatrixXcd dense_complex() const;
  double inf_norm() const;                // max absolute row sum

  // Y = op * X for real X; requires real_symmetric
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
};

// H = -Laplacian + V with the hopping sign convention
// (-Lap phi)(x) = sum over |x-y|=1 of phi(y): off-diagonal entries +1.
LatticeOperator build_hamiltonian(const TorusLattice& lat, const Realization& real);

enum class VelocityVariant { commutator, current };
VelocityVariant parse_velocity_variant(const std::string& s);

// Velocity along the first axis. Both variants are i*A with A real
// antisymmetric:
//   commutator: A(x,y) = H(x,y) * (c1(y) - c1(x)), the literal i[H, X1];
//               wrap bonds carry +-(L-1)
//   current:    A(x,y) = H(x,y) * delta1(x,y) with delta1 the wrap-aware
//               signed unit displacement along axis 1
LatticeOperator velocity_operator(const TorusLattice& lat, const LatticeOperator& h,
                                  VelocityVariant variant);

// The real antisymmetric core A of the chosen variant, densely materialized
// (velocity = i*A). This is the fast path the estimators consume.
Eigen::MatrixXd velocity_core(const TorusLattice& lat, const LatticeOperator& h,
                              VelocityVariant variant);

// Diagonal multiplication operator by the centered first coordinate.
LatticeOperator position_operator(const TorusLattice& lat);

}  // namespace axcond
