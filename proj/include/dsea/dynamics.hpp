#pragma once

#include <functional>
#include <map>
#include <memory>

#include "dsea/position.hpp"

namespace dsea {

/// Unitary evolution engine. Dense eigendecomposition up to the dimension
/// guard, scaled Taylor expansion applied to vectors above it.
class EvolutionPlan {
public:
  explicit EvolutionPlan(OperatorMatrix hamiltonian, int dense_guard = 4000);

  const OperatorMatrix& hamiltonian() const { return h_; }
  bool dense() const { return dense_; }

  /// e^{-iHt} psi; the result's time tag is psi.time + t.
  QuantumState evolve(const QuantumState& psi, double t) const;

private:
  OperatorMatrix h_;
  bool dense_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXcd eigenvectors_;
  double norm_estimate_ = 0;
};

inline QuantumState evolve_state(const EvolutionPlan& plan, const QuantumState& psi, double t) {
  return plan.evolve(psi, t);
}

/// psi(t) on demand from a fixed initial state, with a small cache for
/// the repeated substep times of the trajectory integrator.
class StateSchedule {
public:
  StateSchedule(std::shared_ptr<const EvolutionPlan> plan, QuantumState initial);

  const QuantumState& at(double t) const;
  double t0() const { return initial_.time; }
  const EvolutionPlan& plan() const { return *plan_; }

private:
  std::shared_ptr<const EvolutionPlan> plan_;
  QuantumState initial_;
  mutable std::map<double, QuantumState> cache_;
};

struct IntegratorOptions {
  double step = 1e-2;
  /// Optional correction term: returns w(t, x) with vtilde = w / rho,
  /// added to the guidance velocity (n=1, d=1 regime).
  std::function<double(double, const Eigen::Vector3d&)> correction_w;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> configs; // one per recorded time
  bool aborted = false;
};

/// RK4 on dx/dt = v(x, t) with step halving near nodes (density drop by
/// more than 10x within a step, or a node-floor refusal). Steps below
/// step / 2^10 abort the trajectory.
Trajectory integrate_trajectory(const StateSpace& space, const StateSchedule& schedule,
                                const Configuration& start, double t_end,
                                const IntegratorOptions& options);

} // namespace dsea
