#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <vector>

#include "dsea/kernels.hpp"
#include "dsea/modes.hpp"
#include "dsea/regions.hpp"

namespace dsea {

using SparseC = Eigen::SparseMatrix<cplx>;

/// Fixed-fermion-number occupation basis: all bitmasks over the mode
/// table with exactly n bits set, enumerated in increasing mask order.
class FockSector {
public:
  FockSector(const ModeTable& modes, int n);

  int fermion_number() const { return n_; }
  int dim() const { return static_cast<int>(states_.size()); }
  std::uint64_t state(int i) const { return states_[static_cast<size_t>(i)]; }
  int index_of(std::uint64_t mask) const; // -1 if absent
  const ModeTable& modes() const { return *modes_; }

private:
  const ModeTable* modes_;
  int n_;
  std::vector<std::uint64_t> states_;
};

inline FockSector enumerate_sector(const ModeTable& modes, int n) {
  return FockSector(modes, n);
}

/// Single truncated oscillator mode; dim = 1 disables bosons.
class BosonSpace {
public:
  explicit BosonSpace(int dim = 1);
  int dim() const { return dim_; }
  Eigen::MatrixXcd lowering() const;              // b
  Eigen::MatrixXcd coupling() const;              // (b + b^dag)/sqrt(2)
  Eigen::MatrixXcd number() const;                // b^dag b
private:
  int dim_;
};

/// Fermionic sector tensored with the boson factor. State index layout:
/// idx = fock_index * boson_dim + boson_index.
struct StateSpace {
  StateSpace(const ModeTable& modes, int n, int boson_dim = 1);
  FockSector sector;
  BosonSpace boson;
  long dim() const { return static_cast<long>(sector.dim()) * boson.dim(); }
};

struct QuantumState {
  Eigen::VectorXcd amplitudes;
  double time = 0;
  double norm() const { return amplitudes.norm(); }
};

struct OperatorMatrix {
  SparseC mat;
  bool hermitian = false;
};

/// a_i^dag from the n-sector to the (n+1)-sector, Jordan-Wigner signs
/// from the frozen mode order. Fermionic factor only (no boson tensor).
SparseC creation_matrix(int mode, const FockSector& from, const FockSector& to);
SparseC annihilation_matrix(int mode, const FockSector& from, const FockSector& to);

/// Field operator psi_{lambda,a}(x) = sum_i phi_{i,a}(x) a_i, as a matrix
/// from the n-sector to the (n-1)-sector.
SparseC field_annihilation(const Eigen::Vector3d& x, int species, int spinor_component,
                           const FockSector& from, const FockSector& to);

/// sum_ij w_ij a_i^dag a_j lifted to the sector (tensored with the boson
/// identity). Throws on non-Hermitian weights.
OperatorMatrix build_one_body_operator(const StateSpace& space, const Eigen::MatrixXcd& weights);

/// Mode-basis one-body weight matrices.
Eigen::MatrixXcd fermion_number_weights(const ModeTable& modes);            // F_d
Eigen::MatrixXcd charge_weights(const ModeTable& modes);                    // Q
Eigen::MatrixXcd region_number_weights(const ModeTable& modes, const Region& region); // F_d(B)
/// Grid-cell number operator t_g (cell width L/N around x_g), d=1.
Eigen::MatrixXcd grid_cell_weights(const ModeTable& modes, int grid_n, int cell);
/// Point-sampled cell weights dx * phi_i(x_g)^dag phi_j(x_g), d=1: the
/// lattice-regularized position measure that commutes with grid-sampled
/// position-diagonal kernels at full resolution.
Eigen::MatrixXcd grid_point_weights(const ModeTable& modes, int grid_n, int cell);

OperatorMatrix build_free_hamiltonian(const StateSpace& space);
OperatorMatrix build_boson_hamiltonian(const StateSpace& space, double omega);
/// H_I = sum_ij <i|h|j> a_i^dag a_j tensor (b+b^dag)/sqrt(2); conserves
/// fermion number exactly. Throws if the kernel is not Hermitian.
OperatorMatrix build_interaction(const StateSpace& space, const InteractionKernel& kernel);
/// Same with the grid-sampled (lattice-regularized) kernel bilinear.
OperatorMatrix build_grid_interaction(const StateSpace& space, const InteractionKernel& kernel,
                                      int grid_n);

/// All negative bands filled, boson vacuum.
QuantumState dirac_sea_state(const StateSpace& space);

cplx expectation(const OperatorMatrix& op, const QuantumState& state);
double real_expectation(const OperatorMatrix& op, const QuantumState& state);
double variance(const OperatorMatrix& op, const QuantumState& state);
double commutator_norm(const OperatorMatrix& a, const OperatorMatrix& b);
bool is_hermitian(const SparseC& m, double tol = 1e-12);

} // namespace dsea
