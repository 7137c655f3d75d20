#include "dsea/regions.hpp"

#include <cmath>

namespace dsea {

Region Region::whole() {
  Region r;
  r.kind_ = Kind::whole;
  return r;
}

Region Region::interval(double a, double b) {
  if (!(b > a)) throw std::invalid_argument("interval needs b > a");
  Region r;
  r.kind_ = Kind::interval;
  r.lo_ = Eigen::Vector3d(a, 0, 0);
  r.hi_ = Eigen::Vector3d(b, 0, 0);
  return r;
}

Region Region::box(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi) {
  Region r;
  r.kind_ = Kind::box;
  r.lo_ = lo;
  r.hi_ = hi;
  return r;
}

Region Region::ball(const Eigen::Vector3d& center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("ball needs radius > 0");
  Region r;
  r.kind_ = Kind::ball;
  r.center_ = center;
  r.radius_ = radius;
  return r;
}

Region Region::complemented() const {
  Region r = *this;
  r.complement_ = !r.complement_;
  return r;
}

namespace {
// integral over [a,b] of exp(i q x) dx
cplx segment(double q, double a, double b) {
  if (std::abs(q) < 1e-14) return b - a;
  const cplx iq(0, q);
  return (std::exp(iq * b) - std::exp(iq * a)) / iq;
}
} // namespace

double Region::volume(const ModeLattice& lattice) const {
  double v = 0;
  switch (kind_) {
    case Kind::whole: v = lattice.volume(); break;
    case Kind::interval: v = hi_[0] - lo_[0]; break;
    case Kind::box: {
      v = 1;
      for (int c = 0; c < lattice.dim(); ++c) v *= hi_[c] - lo_[c];
      break;
    }
    case Kind::ball: v = 4.0 / 3.0 * pi * radius_ * radius_ * radius_; break;
  }
  return complement_ ? lattice.volume() - v : v;
}

cplx Region::fourier(const Eigen::Vector3d& q, const ModeLattice& lattice) const {
  cplx f = 0;
  const bool q_zero = q.norm() < 1e-14;
  switch (kind_) {
    case Kind::whole:
      // q is always a lattice difference, so the box integral is exactly
      // L^d at q = 0 and zero otherwise
      f = q_zero ? lattice.volume() : 0.0;
      break;
    case Kind::interval:
      f = segment(q[0], lo_[0], hi_[0]);
      break;
    case Kind::box: {
      f = 1.0;
      for (int c = 0; c < lattice.dim(); ++c) f *= segment(q[c], lo_[c], hi_[c]);
      break;
    }
    case Kind::ball: {
      const double qn = q.norm();
      double radial;
      if (qn * radius_ < 1e-5) {
        radial = 4.0 / 3.0 * pi * std::pow(radius_, 3);
      } else {
        radial = 4.0 * pi * (std::sin(qn * radius_) - qn * radius_ * std::cos(qn * radius_)) /
                 (qn * qn * qn);
      }
      f = radial * std::exp(cplx(0, q.dot(center_)));
      break;
    }
  }
  if (complement_) {
    const cplx whole = q_zero ? cplx(lattice.volume()) : cplx(0);
    f = whole - f;
  }
  return f;
}

} // namespace dsea
