#include "dsea/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace dsea {

EvolutionPlan::EvolutionPlan(OperatorMatrix hamiltonian, int dense_guard)
    : h_(std::move(hamiltonian)) {
  if (h_.mat.rows() != h_.mat.cols())
    throw std::invalid_argument("Hamiltonian must be square");
  if (!h_.hermitian || !is_hermitian(h_.mat))
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  dense_ = h_.mat.rows() <= dense_guard;
  if (dense_) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(h_.mat));
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
  } else {
    // row-sum bound on ||H|| for the Taylor substep count
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(h_.mat.rows());
    for (int k = 0; k < h_.mat.outerSize(); ++k)
      for (SparseC::InnerIterator it(h_.mat, k); it; ++it)
        rowsum(it.row()) += std::abs(it.value());
    norm_estimate_ = rowsum.maxCoeff();
  }
}

QuantumState EvolutionPlan::evolve(const QuantumState& psi, double t) const {
  if (psi.amplitudes.size() != h_.mat.rows())
    throw std::invalid_argument("state dimension does not match the Hamiltonian");
  QuantumState out;
  out.time = psi.time + t;
  if (dense_) {
    const Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * psi.amplitudes;
    Eigen::VectorXcd rotated(coeffs.size());
    for (long k = 0; k < coeffs.size(); ++k)
      rotated(k) = coeffs(k) * std::exp(cplx(0, -eigenvalues_(k) * t));
    out.amplitudes = eigenvectors_ * rotated;
    return out;
  }
  // scaled Taylor series: split t so that ||H dt|| <= 0.5, then sum the
  // series on the vector to machine precision
  const int substeps = std::max(1, static_cast<int>(std::ceil(norm_estimate_ * std::abs(t) / 0.5)));
  const double dt = t / substeps;
  Eigen::VectorXcd v = psi.amplitudes;
  for (int s = 0; s < substeps; ++s) {
    Eigen::VectorXcd term = v;
    Eigen::VectorXcd sum = v;
    for (int k = 1; k < 64; ++k) {
      term = (h_.mat * term) * (cplx(0, -dt) / double(k));
      sum += term;
      if (term.norm() < 1e-16 * sum.norm()) break;
    }
    v = sum;
  }
  out.amplitudes = v;
  return out;
}

StateSchedule::StateSchedule(std::shared_ptr<const EvolutionPlan> plan, QuantumState initial)
    : plan_(std::move(plan)), initial_(std::move(initial)) {}

const QuantumState& StateSchedule::at(double t) const {
  auto it = cache_.find(t);
  if (it != cache_.end()) return it->second;
  if (cache_.size() > 4096) cache_.clear();
  return cache_.emplace(t, plan_->evolve(initial_, t - initial_.time)).first->second;
}

namespace {

using DVec = Eigen::VectorXd;

DVec flatten_velocity(const StateSpace& space, const StateSchedule& schedule, double t,
                      const Configuration& config, const IntegratorOptions& options,
                      double* rho_out) {
  const VelocitySample s = velocity(space, schedule.at(t), config);
  if (rho_out) *rho_out = s.rho;
  const int d = space.sector.modes().lattice().dim();
  const int n = config.n();
  DVec v(n * d);
  for (int k = 0; k < n; ++k)
    for (int mu = 0; mu < d; ++mu) v(k * d + mu) = s.v(k, mu);
  if (options.correction_w) {
    if (n != 1 || d != 1)
      throw std::invalid_argument("velocity correction defined for n=1, d=1");
    v(0) += options.correction_w(t, config.positions[0]) / s.rho;
  }
  return v;
}

Configuration displaced(const StateSpace& space, const Configuration& base, const DVec& dx) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  const int d = lattice.dim();
  Configuration c = base;
  for (int k = 0; k < base.n(); ++k) {
    Eigen::Vector3d x = base.positions[static_cast<size_t>(k)];
    for (int mu = 0; mu < d; ++mu) x(mu) += dx(k * d + mu);
    c.positions[static_cast<size_t>(k)] = lattice.wrap(x);
  }
  return c;
}

} // namespace

Trajectory integrate_trajectory(const StateSpace& space, const StateSchedule& schedule,
                                const Configuration& start, double t_end,
                                const IntegratorOptions& options) {
  if (!(options.step > 0)) throw std::invalid_argument("integrator step must be positive");
  const double h_min = options.step / 1024.0;
  const double direction = (t_end >= start.time) ? 1.0 : -1.0;

  Trajectory traj;
  Configuration current = start;
  traj.times.push_back(current.time);
  traj.configs.push_back(current);

  while (direction * (t_end - current.time) > 1e-15 * std::max(1.0, std::abs(t_end))) {
    double h = std::min(options.step, std::abs(t_end - current.time)) * direction;
    bool stepped = false;
    while (!stepped) {
      try {
        const double t = current.time;
        double rho0 = 0, rho1 = 0;
        const DVec k1 = flatten_velocity(space, schedule, t, current, options, &rho0);
        const DVec k2 = flatten_velocity(space, schedule, t + h / 2,
                                         displaced(space, current, (h / 2) * k1), options, nullptr);
        const DVec k3 = flatten_velocity(space, schedule, t + h / 2,
                                         displaced(space, current, (h / 2) * k2), options, nullptr);
        Configuration probe = displaced(space, current, h * k3);
        const DVec k4 = flatten_velocity(space, schedule, t + h, probe, options, nullptr);
        Configuration next = displaced(space, current, (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4));
        next.time = t + h;
        rho1 = density(space, schedule.at(next.time), next);
        if (rho1 < rho0 / 10.0) throw near_node_error("density dropped more than 10x in a step");
        current = next;
        stepped = true;
      } catch (const near_node_error&) {
        h /= 2;
        if (std::abs(h) < h_min) {
          traj.aborted = true;
          return traj;
        }
      }
    }
    traj.times.push_back(current.time);
    traj.configs.push_back(current);
  }
  return traj;
}

} // namespace dsea
