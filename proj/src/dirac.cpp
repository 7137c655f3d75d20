#include "dsea/dirac.hpp"

namespace dsea {

namespace {
Eigen::Matrix2cd sigma(int i) {
  Eigen::Matrix2cd m;
  const cplx I(0, 1);
  switch (i) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}
} // namespace

DiracAlgebra::DiracAlgebra(int dim) : dim_(dim) {
  if (dim == 1) {
    alpha_.push_back(sigma(1));
    beta_ = sigma(3);
  } else if (dim == 3) {
    for (int i = 1; i <= 3; ++i) {
      Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero();
      a.block<2, 2>(0, 2) = sigma(i);
      a.block<2, 2>(2, 0) = sigma(i);
      alpha_.push_back(a);
    }
    Eigen::Matrix4cd b = Eigen::Matrix4cd::Zero();
    b.block<2, 2>(0, 0) = Eigen::Matrix2cd::Identity();
    b.block<2, 2>(2, 2) = -Eigen::Matrix2cd::Identity();
    beta_ = b;
  } else {
    throw std::invalid_argument("Dirac algebra defined for d=1 and d=3 only");
  }
}

Eigen::MatrixXcd DiracAlgebra::one_particle_hamiltonian(const Eigen::Vector3d& p,
                                                        double mass) const {
  Eigen::MatrixXcd h = mass * beta_;
  for (int i = 0; i < dim_; ++i) h += p[i] * alpha_[static_cast<size_t>(i)];
  return h;
}

} // namespace dsea
