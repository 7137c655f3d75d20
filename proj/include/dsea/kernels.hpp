#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dsea/modes.hpp"

namespace dsea {

/// Real spatial profile V(x) = sum_m amplitude_m * cos(2 pi n_m . x / L).
/// The n = 0 term is a constant.
struct CosineProfile {
  struct Term {
    Eigen::Vector3i n;
    double amplitude;
  };
  std::vector<Term> terms{{Eigen::Vector3i::Zero(), 1.0}};

  static CosineProfile constant(double c = 1.0);
  static CosineProfile cosine(const Eigen::Vector3i& n, double amplitude,
                              double constant = 0.0);

  double eval(const Eigen::Vector3d& x, double box_length) const;
  /// Fourier coefficient (1/L^d) integral of V(x) exp(-i 2 pi n.x / L),
  /// real by construction.
  double coefficient(const Eigen::Vector3i& n) const;
};

/// Interaction kernel h(x) = K (species x spinor) * V(x) * (b + b^dag)/sqrt(2).
/// Contains no fermionic operators; Hermitian by construction for real
/// couplings and profiles.
struct InteractionKernel {
  enum class Type { yukawa, em_like, flavor_flip };
  Type type = Type::yukawa;
  double coupling = 0.0;
  int flip_a = 0, flip_b = 1; // species pair for flavor_flip
  CosineProfile profile = CosineProfile::constant();

  /// Spinor-space factor between species (sa, sb); zero matrix when the
  /// species pair does not couple.
  Eigen::MatrixXcd spinor_factor(int sa, int sb, const ModeTable& modes) const;
};

/// One-body mode-basis matrix of the kernel's fermion bilinear,
/// h_ij = <i| K V(x) |j> (boson factor excluded).
Eigen::MatrixXcd kernel_mode_matrix(const InteractionKernel& kernel, const ModeTable& modes);

/// Same bilinear but with V sampled on an N^d grid and the x-integral
/// replaced by the grid sum; this is the lattice-regularized form used by
/// the position-measure commutator checks.
Eigen::MatrixXcd kernel_mode_matrix_on_grid(const InteractionKernel& kernel,
                                            const ModeTable& modes, int grid_n);

} // namespace dsea
