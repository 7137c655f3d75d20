#pragma once

#include <random>

#include "dsea/dynamics.hpp"

namespace dsea {

/// Minimal jump process on a spatial grid (n=1, d=1): cell beable with
/// rates T(x <- y) = max(0, 2 Im<psi|P_x H P_y|psi>) / <psi|P_y|psi>.
class JumpProcess {
public:
  JumpProcess(const StateSpace& space, OperatorMatrix hamiltonian, int grid_n);

  int grid_n() const { return grid_n_; }
  double cell_width() const { return width_; }
  double cell_center(int g) const { return (g + 0.5) * width_; }
  int cell_of(double x) const;

  /// Column y of the rate matrix for the given state.
  Eigen::VectorXd rates_from(const QuantumState& psi, int y) const;
  /// Full rate matrix R(x, y).
  Eigen::MatrixXd rate_matrix(const QuantumState& psi) const;
  /// Cell occupation probabilities <psi|P_g|psi>.
  Eigen::VectorXd cell_probabilities(const QuantumState& psi) const;

  /// One Euler step of the pure jump process: with probability
  /// total_rate * dt jump to a rate-weighted cell, else stay. Throws when
  /// total_rate * dt > 0.1.
  int step(const QuantumState& psi, int cell, double dt, std::mt19937_64& rng) const;

private:
  const StateSpace* space_;
  OperatorMatrix h_;
  int grid_n_;
  double width_;
  std::vector<SparseC> projectors_;
};

} // namespace dsea
