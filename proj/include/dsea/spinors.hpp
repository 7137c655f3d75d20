#pragma once

#include <Eigen/Dense>

#include "dsea/dirac.hpp"

namespace dsea {

/// Plane-wave spinors for one (species, momentum) slot, unit-normalized.
/// Columns of u span the +E eigenspace of alpha.p + beta m, columns of v
/// the -E eigenspace. The relativistic E/m normalization is carried
/// explicitly in mode functions, so the massless limit is regular here.
struct BandSpinors {
  Eigen::MatrixXcd u; // spinor_dim x helicities
  Eigen::MatrixXcd v;
  double energy;
};

/// Deterministic phase convention: per column, the largest-magnitude
/// component (lowest index on ties) is made real positive. The massless
/// p=0 degenerate case falls back to the beta eigenbasis.
BandSpinors dirac_spinors(double mass, const Eigen::Vector3d& p, const DiracAlgebra& algebra);

} // namespace dsea
