#include "dsea/lattice.hpp"

#include <cmath>

namespace dsea {

ModeLattice::ModeLattice(int dim, double length, double cutoff)
    : dim_(dim), length_(length), cutoff_(cutoff) {
  if (dim != 1 && dim != 3) throw std::invalid_argument("lattice dim must be 1 or 3");
  if (!(length > 0)) throw std::invalid_argument("box length must be positive");
  if (!(cutoff > 0)) throw std::invalid_argument("momentum cutoff must be positive");
  volume_ = std::pow(length, dim);

  const double unit = 2.0 * pi / length;
  const int nmax = static_cast<int>(std::floor(cutoff / unit));
  const int lo = (dim == 3) ? -nmax : 0;
  const int hi = (dim == 3) ? nmax : 0;
  for (int n1 = -nmax; n1 <= nmax; ++n1)
    for (int n2 = lo; n2 <= hi; ++n2)
      for (int n3 = lo; n3 <= hi; ++n3) {
        Eigen::Vector3i n(n1, n2, n3);
        Eigen::Vector3d p = unit * n.cast<double>();
        if (p.norm() <= cutoff) {
          indices_.push_back(n);
          momenta_.push_back(p);
          max_index_ = std::max({max_index_, std::abs(n1), std::abs(n2), std::abs(n3)});
        }
      }
}

int ModeLattice::find(const Eigen::Vector3i& n) const {
  for (size_t i = 0; i < indices_.size(); ++i)
    if (indices_[i] == n) return static_cast<int>(i);
  return -1;
}

Eigen::Vector3d ModeLattice::wrap(const Eigen::Vector3d& x) const {
  Eigen::Vector3d y = x;
  for (int c = 0; c < dim_; ++c) {
    y[c] = std::fmod(y[c], length_);
    if (y[c] < 0) y[c] += length_;
  }
  for (int c = dim_; c < 3; ++c) y[c] = 0;
  return y;
}

double delta_cutoff(const Eigen::Vector3d& x, const ModeLattice& lattice) {
  const Eigen::Vector3d y = lattice.wrap(x);
  double s = 0;
  for (const auto& p : lattice.momenta()) s += std::cos(p.dot(y));
  return s / lattice.volume();
}

} // namespace dsea
