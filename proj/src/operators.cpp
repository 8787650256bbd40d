#include "axcond/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace axcond {

Eigen::MatrixXd LatticeOperator::dense_real() const {
  if (!real_symmetric)
    throw std::invalid_argument("dense_real requires a real-symmetric operator");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::int64_t i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < row.size(); ++k) m(row[k], col[k]) += val[k].real();
  return m;
}

Eigen::MatrixXcd LatticeOperator::dense_complex() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::int64_t i = 0; i < n; ++i) m(i, i) = diag[static_cast<std::size_t>(i)];
  for (std::size_t k = 0; k < row.size(); ++k) m(row[k], col[k]) += val[k];
  return m;
}

double LatticeOperator::inf_norm() const {
  std::vector<double> rowsum(static_cast<std::size_t>(n), 0.0);
  for (std::int64_t i = 0; i < n; ++i)
    rowsum[static_cast<std::size_t>(i)] = std::abs(diag[static_cast<std::size_t>(i)]);
  for (std::size_t k = 0; k < row.size(); ++k)
    rowsum[static_cast<std::size_t>(row[k])] += std::abs(val[k]);
  double m = 0.0;
  for (double s : rowsum) m = std::max(m, s);
  return m;
}

Eigen::MatrixXd LatticeOperator::apply(const Eigen::MatrixXd& x) const {
  if (!real_symmetric)
    throw std::invalid_argument("apply requires a real-symmetric operator");
  if (x.rows() != n) throw std::invalid_argument("operator/vector dimension mismatch");
  Eigen::MatrixXd y(n, x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (std::int64_t i = 0; i < n; ++i)
      y(i, j) = diag[static_cast<std::size_t>(i)] * x(i, j);
    for (std::size_t k = 0; k < row.size(); ++k)
      y(row[k], j) += val[k].real() * x(col[k], j);
  }
  return y;
}

LatticeOperator build_hamiltonian(const TorusLattice& lat, const Realization& real) {
  if (static_cast<std::int64_t>(real.potential.size()) != lat.n_sites)
    throw std::invalid_argument("potential size does not match lattice site count");
  LatticeOperator h;
  h.n = lat.n_sites;
  h.real_symmetric = true;
  h.diag = real.potential;
  const std::size_t nnz = static_cast<std::size_t>(lat.n_sites) * 2 * lat.dim;
  h.row.reserve(nnz);
  h.col.reserve(nnz);
  h.val.reserve(nnz);
  for (std::int64_t x = 0; x < lat.n_sites; ++x)
    for (int k = 0; k < 2 * lat.dim; ++k) {
      h.row.push_back(x);
      h.col.push_back(lat.neighbor(x, k));
      h.val.emplace_back(1.0, 0.0);
    }
  return h;
}

VelocityVariant parse_velocity_variant(const std::string& s) {
  if (s == "commutator") return VelocityVariant::commutator;
  if (s == "current") return VelocityVariant::current;
  throw std::invalid_argument("unknown velocity variant: " + s +
                              " (expected commutator or current)");
}

namespace {

// coefficient multiplying H(x,y): displacement weight along the first axis
double axis0_weight(const TorusLattice& lat, std::int64_t x, std::int64_t y,
                    VelocityVariant variant) {
  if (variant == VelocityVariant::commutator)
    return lat.centered(y) - lat.centered(x);
  const std::int64_t cx = lat.coord(x, 0), cy = lat.coord(y, 0);
  if (cy == (cx + 1) % lat.side) return 1.0;
  if (cy == (cx + lat.side - 1) % lat.side) return -1.0;
  return 0.0;
}

}  // namespace

LatticeOperator velocity_operator(const TorusLattice& lat, const LatticeOperator& h,
                                  VelocityVariant variant) {
  if (h.n != lat.n_sites)
    throw std::invalid_argument("operator/lattice dimension mismatch");
  LatticeOperator v;
  v.n = h.n;
  v.real_symmetric = false;
  v.diag.assign(static_cast<std::size_t>(h.n), 0.0);
  for (std::size_t k = 0; k < h.row.size(); ++k) {
    const double w = axis0_weight(lat, h.row[k], h.col[k], variant);
    if (w == 0.0) continue;
    v.row.push_back(h.row[k]);
    v.col.push_back(h.col[k]);
    v.val.push_back(std::complex<double>(0.0, 1.0) * h.val[k] * w);
  }
  return v;
}

Eigen::MatrixXd velocity_core(const TorusLattice& lat, const LatticeOperator& h,
                              VelocityVariant variant) {
  if (!h.real_symmetric)
    throw std::invalid_argument("velocity core requires a real-symmetric Hamiltonian");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(h.n, h.n);
  for (std::size_t k = 0; k < h.row.size(); ++k)
    a(h.row[k], h.col[k]) +=
        h.val[k].real() * axis0_weight(lat, h.row[k], h.col[k], variant);
  return a;
}

LatticeOperator position_operator(const TorusLattice& lat) {
  LatticeOperator x;
  x.n = lat.n_sites;
  x.real_symmetric = true;
  x.diag = lat.centered_positions();
  return x;
}

}  // namespace axcond
