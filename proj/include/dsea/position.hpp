#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dsea/fock.hpp"

namespace dsea {

/// Beable configuration: one position per fermion in the sector.
struct Configuration {
  std::vector<Eigen::Vector3d> positions;
  double time = 0;

  int n() const { return static_cast<int>(positions.size()); }
};

/// Position-space wavefunction values at a fixed configuration, indexed
/// by one composite (species, spinor component) label per particle and
/// the boson index: flat = ((iota_1 * C + iota_2) * C + ...) * N_b + xi
/// with C = n_species * spinor_dim.
class AmplitudeTensor {
public:
  AmplitudeTensor(int particles, int comp, int boson_dim);

  int particles() const { return n_; }
  int comp() const { return comp_; }
  int boson_dim() const { return nb_; }
  long size() const { return static_cast<long>(values_.size()); }
  Eigen::VectorXcd& values() { return values_; }
  const Eigen::VectorXcd& values() const { return values_; }

  /// Stride of particle slot k in the flat layout.
  long stride(int k) const;

  double squared_norm() const { return values_.squaredNorm(); }

private:
  int n_, comp_, nb_;
  Eigen::VectorXcd values_;
};

struct VelocitySample {
  Eigen::MatrixXd v; // particles x 3, trailing components zero for d < 3
  double rho = 0;
  double g = 0;
};

/// Slater-determinant amplitudes: occupation-basis sum of n x n
/// determinants of mode-function values.
AmplitudeTensor amplitude(const StateSpace& space, const QuantumState& state,
                          const Configuration& config);

double density(const StateSpace& space, const QuantumState& state, const Configuration& config);

/// Node floor: 1e-12 times the box-average density.
double density_floor(const StateSpace& space, const QuantumState& state);

/// Guidance velocity v_k = psi^dag alpha^(k) psi / rho. Throws
/// near_node_error when rho is at or below the floor.
VelocitySample velocity(const StateSpace& space, const QuantumState& state,
                        const Configuration& config);

/// Source term of the modified continuity equation,
/// g = 2 Im <psi| P(config) H_I |psi> (density per unit configuration
/// volume). Identically zero when the interaction commutes with the
/// position measure.
double g_term(const StateSpace& space, const QuantumState& state,
              const OperatorMatrix& interaction, const Configuration& config);

/// Correction field for the n=1, d=1 regime: the zero-mean torus Poisson
/// solve w = -d/dx (laplacian^-1 g), with vtilde = w / rho added to the
/// guidance velocity so the corrected flux closes the continuity equation.
struct CorrectionField {
  int grid_n = 0;
  double box_length = 0;
  Eigen::VectorXd x, g, rho, vtilde;
  Eigen::VectorXcd w_hat;      // spectral coefficients of w = vtilde * rho
  double divergence_residual = 0; // grid L2 of d/dx(vtilde rho) + g

  /// Spectral interpolation of w at arbitrary x.
  double w_at(double xq) const;
};

CorrectionField correction_velocity(const StateSpace& space, const QuantumState& state,
                                    const OperatorMatrix& interaction, int grid_n);

} // namespace dsea
