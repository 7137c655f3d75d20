#include "dsea/spinors.hpp"

#include <cmath>

namespace dsea {

namespace {
void fix_phase(Eigen::MatrixXcd& m) {
  for (int c = 0; c < m.cols(); ++c) {
    int imax = 0;
    double best = -1;
    for (int r = 0; r < m.rows(); ++r) {
      double a = std::abs(m(r, c));
      if (a > best + 1e-12) {
        best = a;
        imax = r;
      }
    }
    cplx z = m(imax, c);
    if (std::abs(z) > 0) m.col(c) *= std::conj(z) / std::abs(z);
  }
}
} // namespace

BandSpinors dirac_spinors(double mass, const Eigen::Vector3d& p, const DiracAlgebra& algebra) {
  if (mass < 0) throw std::invalid_argument("negative mass");
  const int sd = algebra.spinor_dim();
  const int nh = algebra.helicities();
  const double energy = std::sqrt(p.squaredNorm() + mass * mass);

  BandSpinors out;
  out.energy = energy;

  if (energy < 1e-14) {
    // massless zero mode: bands degenerate, fall back to the beta eigenbasis
    out.u = Eigen::MatrixXcd::Zero(sd, nh);
    out.v = Eigen::MatrixXcd::Zero(sd, nh);
    for (int s = 0; s < nh; ++s) {
      out.u(s, s) = 1.0;
      out.v(nh + s, s) = 1.0;
    }
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      algebra.one_particle_hamiltonian(p, mass));
  // eigenvalues ascending: first nh columns span -E, last nh span +E
  out.v = es.eigenvectors().leftCols(nh);
  out.u = es.eigenvectors().rightCols(nh);
  fix_phase(out.u);
  fix_phase(out.v);
  return out;
}

} // namespace dsea
