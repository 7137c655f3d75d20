#pragma once

#include <Eigen/Dense>

#include "dsea/lattice.hpp"

namespace dsea {

/// Spatial region for fermion-number counting. Fourier transforms over
/// the region are closed-form (interval / axis-aligned box / ball), so
/// one-body weights carry no quadrature error.
class Region {
public:
  enum class Kind { whole, interval, box, ball };

  static Region whole();
  static Region interval(double a, double b);                         // d=1, [a,b) in [0,L)
  static Region box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi); // d=3
  static Region ball(const Eigen::Vector3d& center, double radius);   // d=3

  /// Complement within the box (used for additivity F_d(B) + F_d(box\B)).
  Region complemented() const;

  Kind kind() const { return kind_; }
  double volume(const ModeLattice& lattice) const;

  /// integral over the region of exp(i q.x) d^dx
  cplx fourier(const Eigen::Vector3d& q, const ModeLattice& lattice) const;

private:
  Region() = default;
  Kind kind_ = Kind::whole;
  bool complement_ = false;
  Eigen::Vector3d lo_ = Eigen::Vector3d::Zero();
  Eigen::Vector3d hi_ = Eigen::Vector3d::Zero();
  Eigen::Vector3d center_ = Eigen::Vector3d::Zero();
  double radius_ = 0;
};

} // namespace dsea
