#include "dsea/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "dsea/dynamics.hpp"
#include "dsea/fluct.hpp"
#include "dsea/position.hpp"

namespace dsea {

namespace {

double sparse_max_abs(const SparseC& m) {
  double mx = 0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseC::InnerIterator it(m, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
  return mx;
}

void check(std::vector<CheckResult>& out, const std::string& name, double value, double bound) {
  CheckResult r;
  r.name = name;
  r.passed = value <= bound;
  std::ostringstream detail;
  detail << "value " << value << " bound " << bound;
  r.detail = detail.str();
  out.push_back(r);
}

void guarded(std::vector<CheckResult>& out, const std::string& name,
             const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    out.push_back({name + " (exception)", false, e.what()});
  }
}

} // namespace

std::vector<CheckResult> run_selfchecks() {
  std::vector<CheckResult> out;

  guarded(out, "dirac algebra", [&] {
    for (int d : {1, 3}) {
      const DiracAlgebra alg(d);
      const int sd = alg.spinor_dim();
      double worst = 0;
      const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(sd, sd);
      for (int i = 0; i < d; ++i) {
        worst = std::max(worst,
                         (alg.alpha(i) * alg.beta() + alg.beta() * alg.alpha(i)).cwiseAbs().maxCoeff());
        for (int j = 0; j < d; ++j) {
          const Eigen::MatrixXcd anti = alg.alpha(i) * alg.alpha(j) + alg.alpha(j) * alg.alpha(i);
          worst = std::max(worst, (anti - (i == j ? 2.0 : 0.0) * id).cwiseAbs().maxCoeff());
        }
      }
      worst = std::max(worst, (alg.beta() * alg.beta() - id).cwiseAbs().maxCoeff());
      check(out, "dirac anticommutators d=" + std::to_string(d), worst, 1e-14);
    }
  });

  guarded(out, "spinor residuals", [&] {
    const DiracAlgebra alg(3);
    double worst = 0;
    for (double m : {0.0, 1.0, 3.7}) {
      const Eigen::Vector3d p(1.0, -2.0, 0.5);
      const BandSpinors s = dirac_spinors(m, p, alg);
      const Eigen::MatrixXcd h = alg.one_particle_hamiltonian(p, m);
      worst = std::max(worst, (h * s.u - s.energy * s.u).cwiseAbs().maxCoeff());
      worst = std::max(worst, (h * s.v + s.energy * s.v).cwiseAbs().maxCoeff());
      Eigen::MatrixXcd all(4, 4);
      all << s.v, s.u;
      worst = std::max(
          worst, (all * all.adjoint() - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff());
    }
    check(out, "spinor eigen residual and completeness", worst, 1e-12);
  });

  guarded(out, "delta cutoff normalization", [&] {
    const ModeLattice lattice(1, 2 * pi, 3.5);
    const int grid = 512;
    double sum = 0;
    for (int j = 0; j < grid; ++j)
      sum += delta_cutoff(Eigen::Vector3d(j * lattice.length() / grid, 0, 0), lattice) *
             lattice.length() / grid;
    check(out, "delta cutoff integrates to 1", std::abs(sum - 1.0), 1e-10);
  });

  const ModeLattice lattice(1, 2 * pi, 2.5);
  const SpeciesTable one = SpeciesTable::single(1.0);
  const DiracAlgebra alg1(1);
  const ModeTable modes(lattice, one, alg1);

  guarded(out, "anticommutators", [&] {
    const FockSector s0(modes, 2), s1(modes, 3), s2(modes, 4);
    double worst = 0;
    for (int i = 0; i < modes.size(); ++i)
      for (int j = 0; j < modes.size(); ++j) {
        const SparseC ai = annihilation_matrix(i, s1, s0);
        const SparseC adj = creation_matrix(j, s0, s1);
        const SparseC adu = creation_matrix(j, s1, s2);
        const SparseC aiu = annihilation_matrix(i, s2, s1);
        SparseC anti = SparseC(adj * ai) + SparseC(aiu * adu);
        if (i == j) {
          SparseC id(s1.dim(), s1.dim());
          id.setIdentity();
          anti -= id;
        }
        worst = std::max(worst, sparse_max_abs(anti));
      }
    check(out, "anticommutation relations", worst, 1e-14);
  });

  guarded(out, "operator assembly", [&] {
    const StateSpace space(modes, modes.negative_count(), 2);
    InteractionKernel kernel;
    kernel.type = InteractionKernel::Type::yukawa;
    kernel.coupling = 0.3;
    kernel.profile = CosineProfile::cosine(Eigen::Vector3i(1, 0, 0), 1.0, 1.0);
    const OperatorMatrix h0 = build_free_hamiltonian(space);
    const OperatorMatrix hi = build_interaction(space, kernel);
    const OperatorMatrix fd = build_one_body_operator(space, fermion_number_weights(modes));
    OperatorMatrix h;
    h.mat = h0.mat + hi.mat;
    h.hermitian = true;
    check(out, "hamiltonian hermiticity",
          is_hermitian(h.mat) ? 0.0 : 1.0, 0.5);
    check(out, "[F_d, H] = 0", commutator_norm(fd, h), 1e-12);

    const Region half = Region::interval(0, lattice.length() / 2);
    const Eigen::MatrixXcd wa = region_number_weights(modes, half);
    const Eigen::MatrixXcd wb = region_number_weights(modes, half.complemented());
    check(out, "region weight additivity",
          (wa + wb - fermion_number_weights(modes)).cwiseAbs().maxCoeff(), 1e-12);
  });

  guarded(out, "guidance sanity", [&] {
    const StateSpace space(modes, modes.negative_count(), 1);
    const QuantumState sea = dirac_sea_state(space);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, lattice.length());
    double worst_v = 0;
    for (int trial = 0; trial < 5; ++trial) {
      Configuration c;
      c.positions.assign(static_cast<size_t>(modes.negative_count()), Eigen::Vector3d::Zero());
      for (auto& x : c.positions) x(0) = unif(rng);
      const VelocitySample v = velocity(space, sea, c);
      worst_v = std::max(worst_v, v.v.cwiseAbs().maxCoeff());
    }
    check(out, "sea state velocity vanishes", worst_v, 1e-10);
  });

  guarded(out, "fluctuation anchors", [&] {
    FluctuationSpec spec;
    spec.cutoff = 1.0;
    spec.volume = 1.0;
    spec.radius = 1.0;
    spec.species = SpeciesTable::standard_model();
    check(out, "n0 coefficient 24 species",
          std::abs(n0(spec) - 8.0 / (pi * pi)) / (8.0 / (pi * pi)), 1e-12);
    const double b = distinguishability_radius(4.2e30, 1e35);
    check(out, "graphite distinguishability radius",
          (b >= 2.3e-6 && b <= 2.9e-6) ? 0.0 : b, 1e-12);
  });

  return out;
}

} // namespace dsea
