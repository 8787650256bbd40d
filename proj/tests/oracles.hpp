// Brute-force reference implementations for cross-checking the estimators.
// Everything here is built from first principles: dense matrices assembled
// with independent index arithmetic, Eigen's own eigensolver, and plain
// double loops over all eigenpairs. Slow on purpose.
#pragma once
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// Row-major site indexing with the first coordinate slowest, matching the
// production lattice but derived here from scratch.
inline std::vector<std::int64_t> coords_of(std::int64_t site, int d, std::int64_t l) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(d));
  for (int a = d - 1; a >= 0; --a) {
    c[static_cast<std::size_t>(a)] = site % l;
    site /= l;
  }
  return c;
}

inline std::int64_t site_of(const std::vector<std::int64_t>& c, std::int64_t l) {
  std::int64_t s = 0;
  for (std::int64_t x : c) s = s * l + ((x % l) + l) % l;
  return s;
}

// H = -Lap + V, hopping entries +1, periodic.
inline Eigen::MatrixXd hamiltonian(int d, std::int64_t l, const std::vector<double>& v) {
  const std::int64_t n = static_cast<std::int64_t>(v.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (std::int64_t x = 0; x < n; ++x) {
    h(x, x) = v[static_cast<std::size_t>(x)];
    auto c = coords_of(x, d, l);
    for (int a = 0; a < d; ++a) {
      for (int dir : {-1, 1}) {
        auto cy = c;
        cy[static_cast<std::size_t>(a)] += dir;
        h(x, site_of(cy, l)) += 1.0;
      }
    }
  }
  return h;
}

inline double centered1(std::int64_t site, int d, std::int64_t l) {
  return static_cast<double>(coords_of(site, d, l)[0]) -
         static_cast<double>(l - 1) / 2.0;
}

// i[H, X1] assembled entrywise: (i A)(x,y) with A(x,y) = H(x,y)(c1(y)-c1(x)).
inline Eigen::MatrixXcd velocity_commutator(const Eigen::MatrixXd& h, int d,
                                            std::int64_t l) {
  const std::int64_t n = h.rows();
  Eigen::MatrixXcd vel = Eigen::MatrixXcd::Zero(n, n);
  const std::complex<double> im(0.0, 1.0);
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      if (x != y && h(x, y) != 0.0)
        vel(x, y) = im * h(x, y) * (centered1(y, d, l) - centered1(x, d, l));
  return vel;
}

struct Spectrum {
  Eigen::VectorXd e;
  Eigen::MatrixXd u;  // columns
};

inline Spectrum diagonalize(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

// Conductivity measure masses on (edges[k], edges[k+1]]: every eigenpair with
// E_m <= e_f < E_n deposits pi |<u_n, vel u_m>|^2 / (N dE) into the bin
// holding dE = E_n - E_m. Pairs with dE < guard are skipped (counted by the
// caller through the return in `degenerate`).
inline std::vector<double> sigma_masses(const Spectrum& sp, const Eigen::MatrixXcd& vel,
                                        double e_f, const std::vector<double>& edges,
                                        std::int64_t* degenerate = nullptr) {
  const std::int64_t n = sp.e.size();
  std::vector<double> masses(edges.size() - 1, 0.0);
  if (degenerate) *degenerate = 0;
  for (std::int64_t a = 0; a < n; ++a) {
    if (!(sp.e(a) > e_f)) continue;
    for (std::int64_t b = 0; b < n; ++b) {
      if (!(sp.e(b) <= e_f)) continue;
      const double de = sp.e(a) - sp.e(b);
      if (de < 1e-12) {
        if (degenerate) ++*degenerate;
        continue;
      }
      std::complex<double> me(0.0, 0.0);
      for (std::int64_t x = 0; x < n; ++x)
        for (std::int64_t y = 0; y < n; ++y)
          me += sp.u(x, a) * vel(x, y) * sp.u(y, b);
      // locate the half-open bin by scan
      for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        if (de > edges[k] && de <= edges[k + 1]) {
          masses[k] += M_PI * std::norm(me) /
                       (static_cast<double>(n) * de);
          break;
        }
    }
  }
  return masses;
}

// (1/N) sum over pairs (E_n in plus, E_m in minus) of |<u_n, X1 u_m>|^2,
// windows half-open (lo, hi].
inline double psi_rectangle(const Spectrum& sp, int d, std::int64_t l, double plus_lo,
                            double plus_hi, double minus_lo, double minus_hi) {
  const std::int64_t n = sp.e.size();
  double total = 0.0;
  for (std::int64_t a = 0; a < n; ++a) {
    if (!(sp.e(a) > plus_lo && sp.e(a) <= plus_hi)) continue;
    for (std::int64_t b = 0; b < n; ++b) {
      if (!(sp.e(b) > minus_lo && sp.e(b) <= minus_hi)) continue;
      double me = 0.0;
      for (std::int64_t x = 0; x < n; ++x)
        me += sp.u(x, a) * centered1(x, d, l) * sp.u(x, b);
      total += me * me;
    }
  }
  return total / static_cast<double>(n);
}

// Free-lattice spectrum on the torus: sums of 2 cos(2 pi k / L) per axis.
inline std::vector<double> free_spectrum(int d, std::int64_t l) {
  std::vector<double> e{0.0};
  for (int a = 0; a < d; ++a) {
    std::vector<double> next;
    next.reserve(e.size() * static_cast<std::size_t>(l));
    for (double base : e)
      for (std::int64_t k = 0; k < l; ++k)
        next.push_back(base + 2.0 * std::cos(2.0 * M_PI * static_cast<double>(k) /
                                             static_cast<double>(l)));
    e = std::move(next);
  }
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace oracle
