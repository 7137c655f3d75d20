#include "dsea/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace dsea {

std::uint64_t seed_stream(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DensitySampler::DensitySampler(const StateSpace& space, const QuantumState& state)
    : space_(&space), state_(state) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  const int n = space.sector.fermion_number();
  const int dims = n * lattice.dim();
  int g = std::max(2, static_cast<int>(std::pow(32768.0, 1.0 / dims)));
  g = std::min(g, 128);
  double maxrho = 0;
  std::vector<int> idx(static_cast<size_t>(dims), 0);
  while (true) {
    Configuration c;
    c.positions.assign(static_cast<size_t>(n), Eigen::Vector3d::Zero());
    for (int kk = 0; kk < dims; ++kk)
      c.positions[static_cast<size_t>(kk / lattice.dim())](kk % lattice.dim()) =
          (idx[static_cast<size_t>(kk)] + 0.5) * lattice.length() / g;
    maxrho = std::max(maxrho, density(space, state, c));
    int k = dims - 1;
    while (k >= 0 && ++idx[static_cast<size_t>(k)] == g) {
      idx[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  envelope_ = 1.2 * maxrho;
  if (!(envelope_ > 0)) throw std::runtime_error("density envelope is zero");
}

Configuration DensitySampler::sample(std::mt19937_64& rng) const {
  const ModeLattice& lattice = space_->sector.modes().lattice();
  const int n = space_->sector.fermion_number();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (long attempt = 0; attempt < 1'000'000; ++attempt) {
    Configuration c;
    c.time = state_.time;
    c.positions.assign(static_cast<size_t>(n), Eigen::Vector3d::Zero());
    for (int k = 0; k < n; ++k)
      for (int mu = 0; mu < lattice.dim(); ++mu)
        c.positions[static_cast<size_t>(k)](mu) = unif(rng) * lattice.length();
    if (unif(rng) * envelope_ <= density(*space_, state_, c)) return c;
  }
  throw std::runtime_error("rejection sampler efficiency below 1e-4");
}

double tv_distance(const StateSpace& space, const QuantumState& state,
                   const std::vector<Configuration>& samples, int bins) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  if (lattice.dim() != 1 || space.sector.fermion_number() != 1)
    throw std::invalid_argument("TV report implemented for n=1, d=1");
  const double L = lattice.length();

  Eigen::VectorXd model = Eigen::VectorXd::Zero(bins);
  const int sub = 4;
  for (int b = 0; b < bins; ++b)
    for (int s = 0; s < sub; ++s) {
      Configuration c;
      c.positions = {Eigen::Vector3d((b + (s + 0.5) / sub) * L / bins, 0, 0)};
      model(b) += density(space, state, c);
    }
  model /= model.sum();

  Eigen::VectorXd emp = Eigen::VectorXd::Zero(bins);
  for (const auto& c : samples) {
    int b = static_cast<int>(c.positions[0](0) / L * bins);
    b = std::clamp(b, 0, bins - 1);
    emp(b) += 1.0;
  }
  emp /= emp.sum();
  return 0.5 * (emp - model).cwiseAbs().sum();
}

namespace {

void run_deterministic(const StateSpace& space, std::shared_ptr<const EvolutionPlan> plan,
                       const QuantumState& initial, const EnsembleOptions& options,
                       EnsembleResult& result) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  const DensitySampler sampler(space, initial);
  const int N = options.trajectories;
  const double t0 = initial.time;
  const double dt_slice = (options.t_end - t0) / options.slices;

  auto work = [&](int worker) {
    StateSchedule schedule(plan, initial);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = worker; i < N; i += std::max(1, options.workers)) {
      std::mt19937_64 rng(seed_stream(options.seed, static_cast<std::uint64_t>(i)));
      Configuration c;
      if (options.missample_uniform) {
        c.time = t0;
        c.positions.assign(static_cast<size_t>(space.sector.fermion_number()),
                           Eigen::Vector3d::Zero());
        for (auto& x : c.positions)
          for (int mu = 0; mu < lattice.dim(); ++mu) x(mu) = unif(rng) * lattice.length();
      } else {
        c = sampler.sample(rng);
      }
      result.samples[0][static_cast<size_t>(i)] = c;
      IntegratorOptions iopt;
      iopt.step = options.step;
      for (int s = 1; s <= options.slices; ++s) {
        if (result.aborted[static_cast<size_t>(i)]) {
          result.samples[static_cast<size_t>(s)][static_cast<size_t>(i)] = c;
          continue;
        }
        Trajectory t = integrate_trajectory(space, schedule, c, t0 + s * dt_slice, iopt);
        c = t.configs.back();
        c.time = t.times.back();
        result.samples[static_cast<size_t>(s)][static_cast<size_t>(i)] = c;
        if (t.aborted) result.aborted[static_cast<size_t>(i)] = 1;
      }
    }
  };

  if (options.workers > 1) {
    std::vector<std::thread> pool;
    for (int w = 0; w < options.workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  } else {
    work(0);
  }
}

void run_jump(const StateSpace& space, std::shared_ptr<const EvolutionPlan> plan,
              const QuantumState& initial, const EnsembleOptions& options,
              EnsembleResult& result) {
  const JumpProcess process(space, plan->hamiltonian(), options.jump_grid);
  const int N = options.trajectories;
  const double t0 = initial.time;
  const int steps_per_slice =
      std::max(1, static_cast<int>(std::llround((options.t_end - t0) / options.slices / options.step)));
  const double dt = (options.t_end - t0) / (options.slices * steps_per_slice);

  // shared per-step rate matrices and initial cell distribution
  StateSchedule schedule(plan, initial);
  const Eigen::VectorXd p0 = process.cell_probabilities(initial);
  std::vector<Eigen::MatrixXd> rates;
  rates.reserve(static_cast<size_t>(options.slices * steps_per_slice));
  for (int s = 0; s < options.slices * steps_per_slice; ++s)
    rates.push_back(process.rate_matrix(schedule.at(t0 + s * dt)));
  for (const auto& r : rates)
    if (r.colwise().sum().maxCoeff() * dt > 0.1)
      throw std::invalid_argument("jump step too large: total_rate * dt > 0.1");

  auto cell_config = [&](int cell, double t) {
    Configuration c;
    c.time = t;
    c.positions = {Eigen::Vector3d(process.cell_center(cell), 0, 0)};
    return c;
  };

  auto work = [&](int worker) {
    std::discrete_distribution<int> init_dist(p0.data(), p0.data() + p0.size());
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = worker; i < N; i += std::max(1, options.workers)) {
      std::mt19937_64 rng(seed_stream(options.seed, static_cast<std::uint64_t>(i)));
      int cell = init_dist(rng);
      result.samples[0][static_cast<size_t>(i)] = cell_config(cell, t0);
      int step_idx = 0;
      for (int s = 1; s <= options.slices; ++s) {
        for (int k = 0; k < steps_per_slice; ++k, ++step_idx) {
          const Eigen::MatrixXd& r = rates[static_cast<size_t>(step_idx)];
          const double total = r.col(cell).sum();
          if (unif(rng) < total * dt) {
            double u = unif(rng) * total;
            for (int x = 0; x < r.rows(); ++x) {
              u -= r(x, cell);
              if (u <= 0) {
                cell = x;
                break;
              }
            }
          }
        }
        result.samples[static_cast<size_t>(s)][static_cast<size_t>(i)] =
            cell_config(cell, t0 + s * (options.t_end - t0) / options.slices);
      }
    }
  };

  if (options.workers > 1) {
    std::vector<std::thread> pool;
    for (int w = 0; w < options.workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  } else {
    work(0);
  }
}

} // namespace

EnsembleResult run_ensemble(const StateSpace& space, std::shared_ptr<const EvolutionPlan> plan,
                            const QuantumState& initial, const EnsembleOptions& options) {
  if (options.trajectories < 1) throw std::invalid_argument("need at least one trajectory");
  EnsembleResult result;
  result.seed = options.seed;
  const double t0 = initial.time;
  for (int s = 0; s <= options.slices; ++s)
    result.times.push_back(t0 + s * (options.t_end - t0) / options.slices);
  result.samples.assign(static_cast<size_t>(options.slices + 1),
                        std::vector<Configuration>(static_cast<size_t>(options.trajectories)));
  result.aborted.assign(static_cast<size_t>(options.trajectories), 0);

  if (options.jump_mode)
    run_jump(space, plan, initial, options, result);
  else
    run_deterministic(space, plan, initial, options, result);

  result.aborted_count =
      static_cast<int>(std::count(result.aborted.begin(), result.aborted.end(), char(1)));

  const ModeLattice& lattice = space.sector.modes().lattice();
  if (lattice.dim() == 1 && space.sector.fermion_number() == 1) {
    result.report.bins = options.bins;
    StateSchedule schedule(plan, initial);
    for (int s = 0; s <= options.slices; ++s) {
      std::vector<Configuration> alive;
      for (int i = 0; i < options.trajectories; ++i)
        if (!result.aborted[static_cast<size_t>(i)])
          alive.push_back(result.samples[static_cast<size_t>(s)][static_cast<size_t>(i)]);
      result.report.times.push_back(result.times[static_cast<size_t>(s)]);
      result.report.tv.push_back(
          tv_distance(space, schedule.at(result.times[static_cast<size_t>(s)]), alive, options.bins));
    }
  }
  return result;
}

MeasurementReport measurement_scenario(const StateSpace& space, const QuantumState& branch1,
                                       const QuantumState& branch2, cplx c1, cplx c2,
                                       int trajectories, std::uint64_t seed,
                                       double overlap_threshold) {
  const ModeLattice& lattice = space.sector.modes().lattice();
  if (lattice.dim() != 1 || space.sector.fermion_number() != 1)
    throw std::invalid_argument("measurement scenario implemented for n=1, d=1");
  const double L = lattice.length();

  // branch overlap: each branch's weight in the other branch's half-box
  const int grid = 256;
  double w1_out = 0, w2_out = 0, w1 = 0, w2 = 0;
  for (int j = 0; j < grid; ++j) {
    Configuration c;
    c.positions = {Eigen::Vector3d((j + 0.5) * L / grid, 0, 0)};
    const double r1 = density(space, branch1, c);
    const double r2 = density(space, branch2, c);
    w1 += r1;
    w2 += r2;
    if (c.positions[0](0) >= L / 2) w1_out += r1;
    if (c.positions[0](0) < L / 2) w2_out += r2;
  }
  MeasurementReport report;
  report.overlap = w1_out / w1 + w2_out / w2;
  if (report.overlap > overlap_threshold)
    throw std::runtime_error("branch supports overlap beyond threshold; scenario invalid");

  QuantumState psi;
  psi.time = branch1.time;
  psi.amplitudes = c1 * branch1.amplitudes + c2 * branch2.amplitudes;
  psi.amplitudes /= psi.amplitudes.norm();

  const double p1 = std::norm(c1) / (std::norm(c1) + std::norm(c2));
  report.expected1 = p1;
  report.expected2 = 1 - p1;
  report.trajectories = trajectories;

  const DensitySampler sampler(space, psi);
  int in1 = 0;
  for (int i = 0; i < trajectories; ++i) {
    std::mt19937_64 rng(seed_stream(seed, static_cast<std::uint64_t>(i)));
    const Configuration c = sampler.sample(rng);
    if (c.positions[0](0) < L / 2) ++in1;
  }
  report.occupancy1 = double(in1) / trajectories;
  report.occupancy2 = 1.0 - report.occupancy1;
  return report;
}

} // namespace dsea
