#include "axcond/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

#ifdef AXCOND_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace axcond {
namespace {

void pin_blas_threads() {
  // Thread-count-dependent BLAS reductions would break bit-reproducibility.
  static std::once_flag once;
  std::call_once(once, [] {
    setenv("OPENBLAS_NUM_THREADS", "1", 0);
    setenv("OMP_NUM_THREADS", "1", 0);
  });
}

}  // namespace

EigenSystem diagonalize(const LatticeOperator& h, double residual_tol) {
  if (h.n < 1) throw std::invalid_argument("cannot diagonalize an empty operator");
  if (!h.real_symmetric)
    throw std::invalid_argument("diagonalize expects a real-symmetric operator");
  pin_blas_threads();

  const double tol =
      residual_tol > 0.0 ? residual_tol : 1e-9 * std::max(1.0, h.inf_norm());

  EigenSystem eig;
  eig.residual_bound = tol;
  Eigen::MatrixXd m = h.dense_real();
  const double trace_in = m.trace();

#ifdef AXCOND_HAVE_LAPACKE
  eig.energies.resize(h.n);
  const lapack_int info = LAPACKE_dsyevd(
      LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(h.n), m.data(),
      static_cast<lapack_int>(h.n), eig.energies.data());
  if (info != 0)
    throw std::runtime_error("eigensolver failed to converge (dsyevd info=" +
                             std::to_string(info) + ", n=" + std::to_string(h.n) + ")");
  eig.vectors = std::move(m);
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed to converge (n=" + std::to_string(h.n) + ")");
  eig.energies = solver.eigenvalues();
  eig.vectors = solver.eigenvectors();
#endif

  for (std::int64_t i = 1; i < h.n; ++i)
    if (eig.energies(i) < eig.energies(i - 1))
      throw std::runtime_error("eigensolver returned unsorted energies");

  // residuals via the sparse form: O(nnz * N), cheap next to the solve
  const Eigen::MatrixXd resid =
      h.apply(eig.vectors) - eig.vectors * eig.energies.asDiagonal();
  for (std::int64_t i = 0; i < h.n; ++i) {
    const double r = resid.col(i).norm();
    if (!(r <= tol * (1.0 + std::abs(eig.energies(i)))))
      throw std::runtime_error(
          "eigenpair residual out of tolerance: state " + std::to_string(i) +
          " E=" + std::to_string(eig.energies(i)) + " residual=" + std::to_string(r));
  }

  const double trace_out = eig.energies.sum();
  const double scale = std::max(1.0, h.inf_norm());
  if (!(std::abs(trace_out - trace_in) <=
        1e-8 * static_cast<double>(h.n) * scale))
    throw std::runtime_error("trace mismatch after diagonalization");

  return eig;
}

IdxRange window_indices(const EigenSystem& eig, Interval window) {
  if (window.lo > window.hi)
    throw std::invalid_argument("reversed interval bounds: (" + std::to_string(window.lo) +
                                ", " + std::to_string(window.hi) + "]");
  const double* b = eig.energies.data();
  const double* e = b + eig.energies.size();
  IdxRange r;
  r.lo = std::upper_bound(b, e, window.lo) - b;
  r.hi = std::upper_bound(b, e, window.hi) - b;
  return r;
}

Eigen::MatrixXcd matrix_elements(const EigenSystem& eig, const LatticeOperator& op,
                                 IdxRange rows, IdxRange cols) {
  if (op.n != eig.n()) throw std::invalid_argument("operator/eigensystem dimension mismatch");
  if (rows.lo < 0 || rows.hi > eig.n() || cols.lo < 0 || cols.hi > eig.n())
    throw std::invalid_argument("index range out of bounds");
  const Eigen::MatrixXcd vc =
      eig.vectors.middleCols(cols.lo, cols.count()).cast<std::complex<double>>();
  Eigen::MatrixXcd w(op.n, cols.count());
  for (Eigen::Index j = 0; j < vc.cols(); ++j) {
    for (std::int64_t i = 0; i < op.n; ++i)
      w(i, j) = op.diag[static_cast<std::size_t>(i)] * vc(i, j);
    for (std::size_t k = 0; k < op.row.size(); ++k)
      w(op.row[k], j) += op.val[k] * vc(op.col[k], j);
  }
  return eig.vectors.middleCols(rows.lo, rows.count())
             .cast<std::complex<double>>()
             .adjoint() *
         w;
}

Eigen::MatrixXd elements_real(const EigenSystem& eig, const Eigen::MatrixXd& core,
                              IdxRange rows, IdxRange cols) {
  if (core.rows() != eig.n()) throw std::invalid_argument("core/eigensystem dimension mismatch");
  return eig.vectors.middleCols(rows.lo, rows.count()).transpose() *
         (core * eig.vectors.middleCols(cols.lo, cols.count()));
}

Eigen::MatrixXd position_elements(const EigenSystem& eig, const std::vector<double>& c1,
                                  IdxRange rows, IdxRange cols) {
  if (static_cast<std::int64_t>(c1.size()) != eig.n())
    throw std::invalid_argument("position/eigensystem dimension mismatch");
  Eigen::MatrixXd scaled = eig.vectors.middleCols(cols.lo, cols.count());
  for (std::int64_t i = 0; i < eig.n(); ++i)
    scaled.row(i) *= c1[static_cast<std::size_t>(i)];
  return eig.vectors.middleCols(rows.lo, rows.count()).transpose() * scaled;
}

EnergyWindows EnergyWindows::at(double e_f, double nu) {
  if (!(nu > 0.0))
    throw std::invalid_argument("window scale nu must be positive, got " + std::to_string(nu));
  EnergyWindows w;
  w.e_f = e_f;
  w.nu = nu;
  w.i_minus = {e_f - nu, e_f};
  w.i_plus = {e_f, e_f + nu};
  w.j_minus = {e_f - nu / 2.0, e_f - nu / 4.0};
  w.j_plus = {e_f + nu / 4.0, e_f + nu / 2.0};
  return w;
}

Interval EnergyWindows::shrunk_minus() const {
  const double m = nu * nu * nu * nu;
  return {e_f - nu + m, e_f - m};
}

Interval EnergyWindows::shrunk_plus() const {
  const double m = nu * nu * nu * nu;
  return {e_f + m, e_f + nu - m};
}

}  // namespace axcond
