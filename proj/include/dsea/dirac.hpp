#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dsea/common.hpp"

namespace dsea {

/// Dirac alpha/beta matrices. d=1 uses alpha = sigma_1, beta = sigma_3
/// (2x2, one helicity label); d=3 uses the standard Dirac representation
/// (4x4, two helicity labels per band).
class DiracAlgebra {
public:
  explicit DiracAlgebra(int dim);

  int dim() const { return dim_; }
  int spinor_dim() const { return static_cast<int>(beta_.rows()); }
  int helicities() const { return spinor_dim() / 2; }
  const Eigen::MatrixXcd& alpha(int i) const { return alpha_[static_cast<size_t>(i)]; }
  const Eigen::MatrixXcd& beta() const { return beta_; }

  /// alpha . p + beta m
  Eigen::MatrixXcd one_particle_hamiltonian(const Eigen::Vector3d& p, double mass) const;

private:
  int dim_;
  std::vector<Eigen::MatrixXcd> alpha_;
  Eigen::MatrixXcd beta_;
};

} // namespace dsea
