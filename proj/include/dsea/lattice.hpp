#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dsea/common.hpp"

namespace dsea {

/// Truncated momentum grid on a periodic box: all p = 2*pi*n/L with
/// |p| <= cutoff. Immutable after construction.
class ModeLattice {
public:
  ModeLattice(int dim, double length, double cutoff);

  int dim() const { return dim_; }
  double length() const { return length_; }
  double cutoff() const { return cutoff_; }
  double volume() const { return volume_; }
  int size() const { return static_cast<int>(momenta_.size()); }
  const Eigen::Vector3d& momentum(int i) const { return momenta_[static_cast<size_t>(i)]; }
  const Eigen::Vector3i& index(int i) const { return indices_[static_cast<size_t>(i)]; }
  const std::vector<Eigen::Vector3d>& momenta() const { return momenta_; }

  /// Largest integer mode index along any axis (Nyquist bookkeeping).
  int max_index() const { return max_index_; }

  /// Position of momentum p in the lattice ordering, -1 if absent.
  int find(const Eigen::Vector3i& n) const;

  /// Reduce x componentwise into [0, L)^d.
  Eigen::Vector3d wrap(const Eigen::Vector3d& x) const;

private:
  int dim_;
  double length_;
  double cutoff_;
  double volume_;
  int max_index_ = 0;
  std::vector<Eigen::Vector3d> momenta_;
  std::vector<Eigen::Vector3i> indices_;
};

inline ModeLattice build_mode_lattice(int dim, double length, double cutoff) {
  return ModeLattice(dim, length, cutoff);
}

/// Band-limited delta: (1/L^d) sum_p exp(i p.x), real by +-p symmetry.
double delta_cutoff(const Eigen::Vector3d& x, const ModeLattice& lattice);

} // namespace dsea
