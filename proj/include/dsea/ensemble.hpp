#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "dsea/dynamics.hpp"
#include "dsea/jump.hpp"

namespace dsea {

/// Deterministic 64-bit stream split (splitmix64); trajectory i draws
/// from seed_stream(master, i) independent of worker scheduling.
std::uint64_t seed_stream(std::uint64_t master, std::uint64_t index);

/// Draw one configuration from rho^psi by rejection against a coarse-grid
/// envelope (grid max times 1.2). Throws when acceptance stalls.
class DensitySampler {
public:
  DensitySampler(const StateSpace& space, const QuantumState& state);
  Configuration sample(std::mt19937_64& rng) const;
  double envelope() const { return envelope_; }

private:
  const StateSpace* space_;
  QuantumState state_;
  double envelope_;
};

struct EquilibriumReport {
  std::vector<double> times;
  std::vector<double> tv; // total-variation distance per slice
  int bins = 0;
};

struct EnsembleOptions {
  int trajectories = 1000;
  std::uint64_t seed = 1;
  double t_end = 1.0;
  double step = 1e-2;
  int slices = 10;
  int bins = 50;
  int workers = 1;
  bool jump_mode = false;
  int jump_grid = 32;
  bool missample_uniform = false; // negative control: uniform start
};

struct EnsembleResult {
  std::vector<double> times;                         // slice times
  std::vector<std::vector<Configuration>> samples;   // [slice][trajectory]
  std::vector<char> aborted;                         // per trajectory (not vector<bool>: workers write concurrently)
  int aborted_count = 0;
  EquilibriumReport report;
  std::uint64_t seed = 0;
};

/// Propagate N trajectories sampled from rho^psi(t0) and report the
/// per-slice TV distance between the empirical x-marginal and rho^psi
/// (report filled for n=1, d=1 only).
EnsembleResult run_ensemble(const StateSpace& space, std::shared_ptr<const EvolutionPlan> plan,
                            const QuantumState& initial, const EnsembleOptions& options);

/// TV distance between the sampled positions (first coordinate of the
/// first particle) and the model density at the given time.
double tv_distance(const StateSpace& space, const QuantumState& state,
                   const std::vector<Configuration>& samples, int bins);

struct MeasurementReport {
  double occupancy1 = 0, occupancy2 = 0;
  double expected1 = 0, expected2 = 0;
  double overlap = 0;
  int trajectories = 0;
};

/// Effective-collapse scenario: branches with (near-)disjoint supports in
/// the two half-boxes; reports the fraction of beables in each half.
/// Throws when the branch supports overlap by more than the threshold.
MeasurementReport measurement_scenario(const StateSpace& space, const QuantumState& branch1,
                                       const QuantumState& branch2, cplx c1, cplx c2,
                                       int trajectories, std::uint64_t seed,
                                       double overlap_threshold = 0.02);

} // namespace dsea
