#include "dsea/kernels.hpp"

#include <cmath>

namespace dsea {

CosineProfile CosineProfile::constant(double c) {
  CosineProfile p;
  p.terms = {{Eigen::Vector3i::Zero(), c}};
  return p;
}

CosineProfile CosineProfile::cosine(const Eigen::Vector3i& n, double amplitude,
                                    double constant) {
  CosineProfile p;
  p.terms.clear();
  if (constant != 0.0) p.terms.push_back({Eigen::Vector3i::Zero(), constant});
  p.terms.push_back({n, amplitude});
  return p;
}

double CosineProfile::eval(const Eigen::Vector3d& x, double box_length) const {
  double v = 0;
  for (const auto& t : terms)
    v += t.amplitude * std::cos(2.0 * pi * t.n.cast<double>().dot(x) / box_length);
  return v;
}

double CosineProfile::coefficient(const Eigen::Vector3i& n) const {
  double c = 0;
  for (const auto& t : terms) {
    if (t.n.isZero()) {
      if (n.isZero()) c += t.amplitude;
    } else if (n == t.n || n == Eigen::Vector3i(-t.n)) {
      c += 0.5 * t.amplitude;
    }
  }
  return c;
}

Eigen::MatrixXcd InteractionKernel::spinor_factor(int sa, int sb,
                                                  const ModeTable& modes) const {
  const int sd = modes.algebra().spinor_dim();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(sd, sd);
  switch (type) {
    case Type::yukawa:
      if (sa == sb) return coupling * modes.algebra().beta();
      break;
    case Type::em_like:
      if (sa == sb) return coupling * modes.species()[sa].charge * id;
      break;
    case Type::flavor_flip:
      if ((sa == flip_a && sb == flip_b) || (sa == flip_b && sb == flip_a))
        return coupling * modes.algebra().beta();
      break;
  }
  return Eigen::MatrixXcd::Zero(sd, sd);
}

Eigen::MatrixXcd kernel_mode_matrix(const InteractionKernel& kernel, const ModeTable& modes) {
  const int n = modes.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  const auto& lattice = modes.lattice();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& mi = modes[i];
      const auto& mj = modes[j];
      const Eigen::Vector3i q =
          lattice.index(mj.momentum_index) - lattice.index(mi.momentum_index);
      const double vq = kernel.profile.coefficient(q);
      if (vq == 0.0) continue;
      Eigen::MatrixXcd k = kernel.spinor_factor(mi.species, mj.species, modes);
      if (k.isZero(0)) continue;
      h(i, j) = vq * (mi.spinor.adjoint() * k * mj.spinor)(0, 0);
    }
  return h;
}

Eigen::MatrixXcd kernel_mode_matrix_on_grid(const InteractionKernel& kernel,
                                            const ModeTable& modes, int grid_n) {
  const auto& lattice = modes.lattice();
  if (lattice.dim() != 1)
    throw std::invalid_argument("grid kernel assembly implemented for d=1");
  const int n = modes.size();
  const double L = lattice.length();
  const double dx = L / grid_n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int g = 0; g < grid_n; ++g) {
    const Eigen::Vector3d x(g * dx, 0, 0);
    const double v = kernel.profile.eval(x, L);
    if (v == 0.0) continue;
    for (int i = 0; i < n; ++i) {
      const Eigen::VectorXcd fi = modes.mode_function(i, x);
      for (int j = 0; j < n; ++j) {
        Eigen::MatrixXcd k = kernel.spinor_factor(modes[i].species, modes[j].species, modes);
        if (k.isZero(0)) continue;
        const Eigen::VectorXcd fj = modes.mode_function(j, x);
        h(i, j) += dx * v * (fi.adjoint() * k * fj)(0, 0);
      }
    }
  }
  return h;
}

} // namespace dsea
