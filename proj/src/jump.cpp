#include "dsea/jump.hpp"

#include <cmath>
#include <stdexcept>

namespace dsea {

JumpProcess::JumpProcess(const StateSpace& space, OperatorMatrix hamiltonian, int grid_n)
    : space_(&space), h_(std::move(hamiltonian)), grid_n_(grid_n) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  if (lattice.dim() != 1 || space.sector.fermion_number() != 1)
    throw std::invalid_argument("jump process implemented for n=1, d=1");
  if (grid_n < 2) throw std::invalid_argument("need at least 2 grid cells");
  width_ = lattice.length() / grid_n;
  projectors_.reserve(static_cast<size_t>(grid_n));
  for (int g = 0; g < grid_n; ++g)
    projectors_.push_back(
        build_one_body_operator(space, grid_cell_weights(space.sector.modes(), grid_n, g)).mat);
}

int JumpProcess::cell_of(double x) const {
  const double L = space_->sector.modes().lattice().length();
  double w = std::fmod(x, L);
  if (w < 0) w += L;
  int g = static_cast<int>(w / width_);
  return std::min(g, grid_n_ - 1);
}

Eigen::VectorXd JumpProcess::cell_probabilities(const QuantumState& psi) const {
  Eigen::VectorXd p(grid_n_);
  for (int g = 0; g < grid_n_; ++g)
    p(g) = psi.amplitudes.dot(projectors_[static_cast<size_t>(g)] * psi.amplitudes).real();
  return p;
}

Eigen::VectorXd JumpProcess::rates_from(const QuantumState& psi, int y) const {
  const Eigen::VectorXcd py = projectors_[static_cast<size_t>(y)] * psi.amplitudes;
  const double prob_y = psi.amplitudes.dot(py).real();
  Eigen::VectorXd r = Eigen::VectorXd::Zero(grid_n_);
  if (prob_y <= 0) return r;
  const Eigen::VectorXcd hpy = h_.mat * py;
  for (int x = 0; x < grid_n_; ++x) {
    if (x == y) continue;
    const cplx amp = psi.amplitudes.dot(projectors_[static_cast<size_t>(x)] * hpy);
    r(x) = std::max(0.0, 2.0 * amp.imag()) / prob_y;
  }
  return r;
}

Eigen::MatrixXd JumpProcess::rate_matrix(const QuantumState& psi) const {
  Eigen::MatrixXd r(grid_n_, grid_n_);
  for (int y = 0; y < grid_n_; ++y) r.col(y) = rates_from(psi, y);
  return r;
}

int JumpProcess::step(const QuantumState& psi, int cell, double dt, std::mt19937_64& rng) const {
  const Eigen::VectorXd r = rates_from(psi, cell);
  const double total = r.sum();
  if (total * dt > 0.1)
    throw std::invalid_argument("jump step too large: total_rate * dt > 0.1");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (unif(rng) >= total * dt) return cell;
  double u = unif(rng) * total;
  for (int x = 0; x < grid_n_; ++x) {
    u -= r(x);
    if (u <= 0) return x;
  }
  return grid_n_ - 1;
}

} // namespace dsea
