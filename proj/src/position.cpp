#include "dsea/position.hpp"

#include <cmath>
#include <stdexcept>

namespace dsea {

AmplitudeTensor::AmplitudeTensor(int particles, int comp, int boson_dim)
    : n_(particles), comp_(comp), nb_(boson_dim) {
  long sz = nb_;
  for (int k = 0; k < n_; ++k) {
    sz *= comp_;
    if (sz > 50'000'000L) throw std::invalid_argument("amplitude tensor too large");
  }
  values_ = Eigen::VectorXcd::Zero(sz);
}

long AmplitudeTensor::stride(int k) const {
  long s = nb_;
  for (int j = n_ - 1; j > k; --j) s *= comp_;
  return s;
}

namespace {

double inv_sqrt_factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return 1.0 / std::sqrt(f);
}

std::vector<int> occupied_modes(std::uint64_t mask) {
  std::vector<int> occ;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) occ.push_back(i);
  return occ;
}

} // namespace

AmplitudeTensor amplitude(const StateSpace& space, const QuantumState& state,
                          const Configuration& config) {
  const ModeTable& modes = space.sector.modes();
  const int n = space.sector.fermion_number();
  if (config.n() != n) throw std::invalid_argument("configuration size differs from sector n");
  if (state.amplitudes.size() != space.dim())
    throw std::invalid_argument("state vector does not match the state space");
  const int sd = modes.algebra().spinor_dim();
  const int comp = modes.species().count() * sd;
  const int nb = space.boson.dim();
  AmplitudeTensor out(n, comp, nb);
  if (n == 0) {
    for (int xi = 0; xi < nb; ++xi) out.values()(xi) = state.amplitudes(xi);
    return out;
  }

  // phi[r](iota, m): composite component iota of mode m at x_r
  std::vector<Eigen::MatrixXcd> phi(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    phi[static_cast<size_t>(r)] = Eigen::MatrixXcd::Zero(comp, modes.size());
    for (int m = 0; m < modes.size(); ++m) {
      const Eigen::VectorXcd f = modes.mode_function(m, config.positions[static_cast<size_t>(r)]);
      const int base = modes[m].species * sd;
      for (int a = 0; a < sd; ++a) phi[static_cast<size_t>(r)](base + a, m) = f(a);
    }
  }

  const double norm = inv_sqrt_factorial(n);
  std::vector<int> iota(static_cast<size_t>(n), 0);
  Eigen::MatrixXcd slater(n, n);
  while (true) {
    long flat = 0;
    for (int r = 0; r < n; ++r) flat = flat * comp + iota[static_cast<size_t>(r)];
    flat *= nb;
    for (int f = 0; f < space.sector.dim(); ++f) {
      bool any = false;
      for (int xi = 0; xi < nb; ++xi)
        if (std::abs(state.amplitudes(static_cast<long>(f) * nb + xi)) != 0.0) any = true;
      if (!any) continue;
      const std::vector<int> occ = occupied_modes(space.sector.state(f));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          slater(r, c) = phi[static_cast<size_t>(r)](iota[static_cast<size_t>(r)],
                                                     occ[static_cast<size_t>(c)]);
      const cplx det = slater.determinant();
      if (std::abs(det) == 0.0) continue;
      for (int xi = 0; xi < nb; ++xi)
        out.values()(flat + xi) +=
            norm * det * state.amplitudes(static_cast<long>(f) * nb + xi);
    }
    int k = n - 1;
    while (k >= 0 && ++iota[static_cast<size_t>(k)] == comp) {
      iota[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return out;
}

double density(const StateSpace& space, const QuantumState& state, const Configuration& config) {
  return amplitude(space, state, config).squared_norm();
}

double density_floor(const StateSpace& space, const QuantumState& state) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  const double config_volume =
      std::pow(lattice.volume(), space.sector.fermion_number());
  return 1e-12 * state.amplitudes.squaredNorm() / config_volume;
}

VelocitySample velocity(const StateSpace& space, const QuantumState& state,
                        const Configuration& config) {
  const AmplitudeTensor t = amplitude(space, state, config);
  const double rho = t.squared_norm();
  VelocitySample s;
  s.rho = rho;
  if (rho <= density_floor(space, state))
    throw near_node_error("density below node floor at t = " + std::to_string(config.time));

  const ModeTable& modes = space.sector.modes();
  const DiracAlgebra& algebra = modes.algebra();
  const int sd = algebra.spinor_dim();
  const int n = t.particles();
  const int comp = t.comp();
  s.v = Eigen::MatrixXd::Zero(n, 3);

  for (int k = 0; k < n; ++k) {
    const long str = t.stride(k);
    for (int mu = 0; mu < algebra.dim(); ++mu) {
      const Eigen::MatrixXcd& al = algebra.alpha(mu);
      cplx num = 0;
      for (long flat = 0; flat < t.size(); ++flat) {
        const cplx amp = t.values()(flat);
        if (std::abs(amp) == 0.0) continue;
        const int iota_k = static_cast<int>((flat / str) % comp);
        const int a = iota_k % sd;
        const long base = flat - static_cast<long>(a) * str;
        for (int ap = 0; ap < sd; ++ap) {
          const cplx m = al(a, ap);
          if (std::abs(m) == 0.0) continue;
          num += std::conj(amp) * m * t.values()(base + static_cast<long>(ap) * str);
        }
      }
      s.v(k, mu) = num.real() / rho;
    }
  }
  return s;
}

double g_term(const StateSpace& space, const QuantumState& state,
              const OperatorMatrix& interaction, const Configuration& config) {
  QuantumState hpsi;
  hpsi.amplitudes = interaction.mat * state.amplitudes;
  hpsi.time = state.time;
  if (hpsi.amplitudes.norm() == 0.0) return 0.0;
  const AmplitudeTensor tp = amplitude(space, state, config);
  const AmplitudeTensor th = amplitude(space, hpsi, config);
  return 2.0 * tp.values().dot(th.values()).imag();
}

double CorrectionField::w_at(double xq) const {
  cplx s = 0;
  for (int k = 0; k < grid_n; ++k) {
    const int freq = (k <= grid_n / 2) ? k : k - grid_n;
    s += w_hat(k) * std::exp(cplx(0, 2.0 * pi * freq * xq / box_length));
  }
  return s.real();
}

CorrectionField correction_velocity(const StateSpace& space, const QuantumState& state,
                                    const OperatorMatrix& interaction, int grid_n) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  if (lattice.dim() != 1 || space.sector.fermion_number() != 1)
    throw std::invalid_argument("correction velocity defined for n=1, d=1");
  if (grid_n < 4 * (2 * lattice.max_index() + 1))
    throw std::invalid_argument("correction grid below 4x mode Nyquist");

  const double L = lattice.length();
  const int N = grid_n;
  CorrectionField field;
  field.grid_n = N;
  field.box_length = L;
  field.x.resize(N);
  field.g.resize(N);
  field.rho.resize(N);
  field.vtilde.resize(N);

  for (int j = 0; j < N; ++j) {
    const double xj = j * L / N;
    Configuration c;
    c.positions = {Eigen::Vector3d(xj, 0, 0)};
    c.time = state.time;
    field.x(j) = xj;
    field.g(j) = g_term(space, state, interaction, c);
    field.rho(j) = density(space, state, c);
  }

  // forward DFT, g_hat(k) = (1/N) sum_j g_j exp(-2 pi i j k / N)
  Eigen::VectorXcd g_hat(N);
  for (int k = 0; k < N; ++k) {
    cplx s = 0;
    for (int j = 0; j < N; ++j)
      s += field.g(j) * std::exp(cplx(0, -2.0 * pi * j * k / N));
    g_hat(k) = s / double(N);
  }
  const double scale = field.g.cwiseAbs().maxCoeff();
  if (std::abs(g_hat(0)) > 1e-8 * scale + 1e-14)
    throw std::runtime_error("g has non-zero mean; Poisson correction ill-posed");

  // dw/dx = -g, so that the corrected flux v rho + w closes the modified
  // continuity equation d_t rho + d_x(v rho) = g. The Nyquist bin is
  // dropped: its derivative vanishes on the grid.
  field.w_hat = Eigen::VectorXcd::Zero(N);
  for (int k = 1; k < N; ++k) {
    if (N % 2 == 0 && k == N / 2) continue;
    const int freq = (k <= N / 2) ? k : k - N;
    const double kappa = 2.0 * pi * freq / L;
    field.w_hat(k) = -g_hat(k) / cplx(0, kappa);
  }

  Eigen::VectorXd w(N);
  for (int j = 0; j < N; ++j) w(j) = field.w_at(j * L / N);
  for (int j = 0; j < N; ++j)
    field.vtilde(j) = field.rho(j) > 0 ? w(j) / field.rho(j) : 0.0;

  // residual d/dx w + g on the grid, spectral derivative
  double res2 = 0;
  for (int j = 0; j < N; ++j) {
    cplx d = 0;
    for (int k = 0; k < N; ++k) {
      const int freq = (k <= N / 2) ? k : k - N;
      double weight = (N % 2 == 0 && k == N / 2) ? 0.0 : 1.0; // Nyquist derivative is odd
      const double kappa = 2.0 * pi * freq / L;
      d += weight * field.w_hat(k) * cplx(0, kappa) *
           std::exp(cplx(0, 2.0 * pi * j * static_cast<double>(freq) / N));
    }
    const double r = d.real() + field.g(j);
    res2 += r * r;
  }
  field.divergence_residual = std::sqrt(res2 * L / N);
  return field;
}

} // namespace dsea
