#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "dsea/fock.hpp"
#include "test_util.hpp"

using namespace dsea;
using testutil::basis_state;
using testutil::sea_mask;
using testutil::superposition;

namespace {

double sparse_max_abs(const SparseC& m) {
  double mx = 0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseC::InnerIterator it(m, k); it; ++it) mx = std::max(mx, std::abs(it.value()));
  return mx;
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

/// Independent Jordan-Wigner application of a_i^dag a_j to a bitmask:
/// returns the resulting mask and the sign, or sign 0 when annihilated.
std::pair<std::uint64_t, int> apply_hop(std::uint64_t mask, int i, int j) {
  if (!(mask >> j & 1)) return {0, 0};
  int sign = std::popcount(mask & ((std::uint64_t{1} << j) - 1)) % 2 ? -1 : 1;
  mask &= ~(std::uint64_t{1} << j);
  if (mask >> i & 1) return {0, 0};
  if (std::popcount(mask & ((std::uint64_t{1} << i) - 1)) % 2) sign = -sign;
  return {mask | (std::uint64_t{1} << i), sign};
}

} // namespace

TEST_CASE("sector enumeration dimensions and ordering") {
  const ModeLattice lat(1, 2 * pi, 1.5); // M = 3
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg); // 6 modes

  const FockSector s3(modes, 3);
  CHECK(s3.dim() == 20); // C(6,3)
  const FockSector s0(modes, 0);
  CHECK(s0.dim() == 1);
  CHECK(s0.state(0) == 0);

  const ModeLattice small(1, 2 * pi, 0.5); // M = 1
  const ModeTable four(small, SpeciesTable::two(1.0, 2.0), alg); // 4 modes
  CHECK(FockSector(four, 2).dim() == 6);

  for (std::uint64_t prev = 0; const int n : {1, 2, 3}) {
    const FockSector s(modes, n);
    CHECK(s.dim() == binom(modes.size(), n));
    prev = 0;
    for (int i = 0; i < s.dim(); ++i) {
      CHECK(std::popcount(s.state(i)) == n);
      if (i > 0) CHECK(s.state(i) > prev);
      prev = s.state(i);
      CHECK(s.index_of(s.state(i)) == i);
    }
  }
  CHECK(FockSector(modes, 2).index_of(0b111) == -1);
  CHECK_THROWS_AS(FockSector(modes, 7), std::invalid_argument);
  CHECK_THROWS_AS(FockSector(modes, -1), std::invalid_argument);
}

TEST_CASE("sector dimension guard") {
  const ModeLattice lat(1, 2 * pi, 14.5); // M = 29, 58 modes
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(0.0), alg);
  CHECK_THROWS(StateSpace(modes, 29, 1)); // C(58,29) far beyond the guard
}

TEST_CASE("creation and annihilation basics") {
  const ModeLattice lat(1, 2 * pi, 0.5); // 2 modes
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const FockSector s0(modes, 0), s1(modes, 1), s2(modes, 2);

  const SparseC ad0 = creation_matrix(0, s0, s1);
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(1);
  vac(0) = 1.0;
  Eigen::VectorXcd one = ad0 * vac;
  CHECK(std::abs(one(s1.index_of(0b01)) - 1.0) <= 1e-15);

  // a^dag twice on the same mode vanishes
  const SparseC ad0_up = creation_matrix(0, s1, s2);
  CHECK((ad0_up * one).norm() <= 1e-15);

  // a1^dag a2^dag |0> = -a2^dag a1^dag |0>
  const SparseC ad1_up = creation_matrix(1, s1, s2);
  const SparseC ad1 = creation_matrix(1, s0, s1);
  const Eigen::VectorXcd lhs = ad1_up * (ad0 * vac);
  const Eigen::VectorXcd rhs = ad0_up * (ad1 * vac);
  CHECK((lhs + rhs).norm() <= 1e-15);
  CHECK(lhs.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("anticommutators on a 6-mode table") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);

  for (int n = 1; n <= 5; ++n) {
    const FockSector lo(modes, n - 1), mid(modes, n), hi(modes, n + 1);
    SparseC id(mid.dim(), mid.dim());
    id.setIdentity();
    for (int i = 0; i < modes.size(); ++i)
      for (int j = 0; j < modes.size(); ++j) {
        const SparseC ai = annihilation_matrix(i, mid, lo);
        const SparseC adj = creation_matrix(j, lo, mid);
        const SparseC adu = creation_matrix(j, mid, hi);
        const SparseC aiu = annihilation_matrix(i, hi, mid);
        SparseC anti = SparseC(adj * ai) + SparseC(aiu * adu);
        if (i == j) anti = SparseC(anti - id);
        CHECK(sparse_max_abs(anti) <= 1e-14);
        // adjointness: annihilation is the adjoint of creation
        const SparseC adT = creation_matrix(i, lo, mid).adjoint();
        CHECK(sparse_max_abs(SparseC(ai - adT)) <= 1e-15);
      }
    // {a_i, a_j} = 0 on sector n+1
    const FockSector lolo(modes, n - 1);
    for (int i = 0; i < modes.size(); ++i)
      for (int j = i; j < modes.size(); ++j) {
        const SparseC ai_mid = annihilation_matrix(i, mid, lolo);
        const SparseC aj_hi = annihilation_matrix(j, hi, mid);
        const SparseC aj_mid = annihilation_matrix(j, mid, lolo);
        const SparseC ai_hi = annihilation_matrix(i, hi, mid);
        CHECK(sparse_max_abs(SparseC(SparseC(ai_mid * aj_hi) + SparseC(aj_mid * ai_hi))) <=
              1e-14);
      }
  }
}

TEST_CASE("free hamiltonian spectrum against brute-force occupation sums") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 3, 1);
  const OperatorMatrix h0 = build_free_hamiltonian(space);
  REQUIRE(h0.hermitian);

  // diagonal in the occupation basis
  for (int k = 0; k < h0.mat.outerSize(); ++k)
    for (SparseC::InnerIterator it(h0.mat, k); it; ++it) CHECK(it.row() == it.col());

  std::vector<double> expect;
  for (int f = 0; f < space.sector.dim(); ++f) {
    const std::uint64_t mask = space.sector.state(f);
    double e = 0;
    for (int m = 0; m < modes.size(); ++m)
      if (mask >> m & 1)
        e += (modes[m].band == Band::positive ? 1.0 : -1.0) * modes[m].energy;
    expect.push_back(e);
  }
  const Eigen::MatrixXcd dense(h0.mat);
  for (int f = 0; f < space.sector.dim(); ++f)
    CHECK(dense(f, f).real() == doctest::Approx(expect[static_cast<size_t>(f)]).epsilon(1e-13));
}

TEST_CASE("sea energy and excitation gap") {
  const ModeLattice lat(1, 2 * pi, 2.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, modes.negative_count(), 1);
  const OperatorMatrix h0 = build_free_hamiltonian(space);
  const QuantumState sea = dirac_sea_state(space);

  double sum_e = 0;
  for (int m = 0; m < modes.size(); ++m)
    if (modes[m].band == Band::negative) sum_e += modes[m].energy;
  CHECK(real_expectation(h0, sea) == doctest::Approx(-sum_e).epsilon(1e-13));

  // replace the deepest negative mode by a positive one: gap = E_neg + E_pos
  const std::uint64_t base = sea_mask(modes);
  const int neg = testutil::band_modes(modes, Band::negative)[0];
  const int pos = testutil::band_modes(modes, Band::positive)[0];
  const QuantumState excited =
      basis_state(space, (base & ~(std::uint64_t{1} << neg)) | (std::uint64_t{1} << pos));
  CHECK(real_expectation(h0, excited) - real_expectation(h0, sea) ==
        doctest::Approx(modes[neg].energy + modes[pos].energy).epsilon(1e-13));
}

TEST_CASE("interaction matrix against an independent double-loop oracle") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 2, 2);

  InteractionKernel kernel;
  kernel.type = InteractionKernel::Type::yukawa;
  kernel.coupling = 0.3;
  kernel.profile = CosineProfile::cosine(Eigen::Vector3i(1, 0, 0), 1.0, 0.5);
  const OperatorMatrix hi = build_interaction(space, kernel);
  REQUIRE(hi.hermitian);

  // one-body elements by grid quadrature (band-limited integrand, exact)
  const double L = lat.length();
  const int grid = 64;
  Eigen::MatrixXcd h1 = Eigen::MatrixXcd::Zero(modes.size(), modes.size());
  for (int i = 0; i < modes.size(); ++i)
    for (int j = 0; j < modes.size(); ++j)
      for (int g = 0; g < grid; ++g) {
        const Eigen::Vector3d x(g * L / grid, 0, 0);
        const double v = 0.5 + std::cos(2 * pi * x(0) / L);
        h1(i, j) += (modes.mode_function(i, x).adjoint() * (kernel.coupling * alg.beta()) *
                     modes.mode_function(j, x))(0, 0) *
                    (v * L / grid);
      }

  // boson coupling (b + b^dag)/sqrt(2) on the 2-level truncation
  Eigen::MatrixXcd bc = Eigen::MatrixXcd::Zero(2, 2);
  bc(0, 1) = bc(1, 0) = 1.0 / std::sqrt(2.0);

  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(space.dim(), space.dim());
  const int nb = space.boson.dim();
  for (int fb = 0; fb < space.sector.dim(); ++fb) {
    const std::uint64_t mask = space.sector.state(fb);
    for (int i = 0; i < modes.size(); ++i)
      for (int j = 0; j < modes.size(); ++j) {
        const auto [out, sign] = apply_hop(mask, i, j);
        if (sign == 0) continue;
        const int fa = space.sector.index_of(out);
        for (int xb = 0; xb < nb; ++xb)
          for (int xa = 0; xa < nb; ++xa)
            expect(fa * nb + xa, fb * nb + xb) += double(sign) * h1(i, j) * bc(xa, xb);
      }
  }
  CHECK((Eigen::MatrixXcd(hi.mat) - expect).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("zero coupling gives the zero interaction") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 2, 2);
  InteractionKernel kernel;
  kernel.coupling = 0.0;
  CHECK(sparse_max_abs(build_interaction(space, kernel).mat) == 0.0);
}

TEST_CASE("assembled hamiltonians are hermitian and conserve fermion number and charge") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::two(1.0, 0.5), alg);
  const StateSpace space(modes, 3, 2);
  const OperatorMatrix fd = build_one_body_operator(space, fermion_number_weights(modes));
  const OperatorMatrix q = build_one_body_operator(space, charge_weights(modes));

  for (auto type : {InteractionKernel::Type::yukawa, InteractionKernel::Type::em_like,
                    InteractionKernel::Type::flavor_flip}) {
    InteractionKernel kernel;
    kernel.type = type;
    kernel.coupling = 0.4;
    kernel.profile = CosineProfile::cosine(Eigen::Vector3i(1, 0, 0), 1.0, 0.3);
    OperatorMatrix h = build_free_hamiltonian(space);
    h.mat = SparseC(h.mat + build_interaction(space, kernel).mat +
                    build_boson_hamiltonian(space, 0.9).mat);
    CHECK(is_hermitian(h.mat));
    CHECK(commutator_norm(fd, h) <= 1e-12);
    if (type != InteractionKernel::Type::flavor_flip) CHECK(commutator_norm(q, h) <= 1e-12);
  }
}

TEST_CASE("one-body specializations of the fermion number operator") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 2, 1);
  const int n = 2;

  const OperatorMatrix fd = build_one_body_operator(space, fermion_number_weights(modes));
  SparseC nid(space.dim(), space.dim());
  nid.setIdentity();
  CHECK(sparse_max_abs(SparseC(fd.mat - double(n) * nid)) <= 1e-14);

  const OperatorMatrix whole =
      build_one_body_operator(space, region_number_weights(modes, Region::whole()));
  CHECK(sparse_max_abs(SparseC(whole.mat - double(n) * nid)) <= 1e-12);

  const Region b = Region::interval(0.7, 3.1);
  const OperatorMatrix fb = build_one_body_operator(space, region_number_weights(modes, b));
  const OperatorMatrix fbc =
      build_one_body_operator(space, region_number_weights(modes, b.complemented()));
  CHECK(sparse_max_abs(SparseC(SparseC(fb.mat + fbc.mat) - fd.mat)) <= 1e-12);
}

TEST_CASE("region expectation against grid quadrature of the one-particle density") {
  const ModeLattice lat(1, 2 * pi, 2.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 1, 1);

  const auto pos = testutil::band_modes(modes, Band::positive);
  const QuantumState psi = superposition(
      space, {{std::uint64_t{1} << pos[1], 1.0}, {std::uint64_t{1} << pos[3], cplx(0, 0.8)}});
  const double a = 0.5, bnd = 4.0;
  const Region region = Region::interval(a, bnd);
  const OperatorMatrix fb =
      build_one_body_operator(space, region_number_weights(modes, region));

  // chi(x) = sum of occupied mode functions with the state coefficients
  const int grid = 50000;
  double integral = 0;
  for (int g = 0; g < grid; ++g) {
    const double x = a + (g + 0.5) * (bnd - a) / grid;
    Eigen::VectorXcd chi = Eigen::VectorXcd::Zero(alg.spinor_dim());
    for (int m = 0; m < modes.size(); ++m) {
      const int f = space.sector.index_of(std::uint64_t{1} << m);
      chi += psi.amplitudes(f) * modes.mode_function(m, Eigen::Vector3d(x, 0, 0));
    }
    integral += chi.squaredNorm() * (bnd - a) / grid;
  }
  CHECK(real_expectation(fb, psi) == doctest::Approx(integral).epsilon(1e-6));
}

TEST_CASE("dirac sea state") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, modes.negative_count(), 1);
  const QuantumState sea = dirac_sea_state(space);
  REQUIRE(modes.negative_count() == 3);

  // the single basis state with all negative-band bits set
  const int idx = space.sector.index_of(sea_mask(modes));
  CHECK(std::abs(sea.amplitudes(idx) - 1.0) <= 1e-15);
  CHECK(sea.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-15));

  const OperatorMatrix fd = build_one_body_operator(space, fermion_number_weights(modes));
  CHECK(real_expectation(fd, sea) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(variance(fd, sea) <= 1e-12);

  // plane-wave uniformity: <F_d(B)> = n |B| / L for any interval
  for (double len : {1.0, 2.0, pi}) {
    const OperatorMatrix fb = build_one_body_operator(
        space, region_number_weights(modes, Region::interval(0.4, 0.4 + len)));
    CHECK(real_expectation(fb, sea) == doctest::Approx(3.0 * len / lat.length()).epsilon(1e-12));
  }

  const StateSpace wrong(modes, 2, 1);
  CHECK_THROWS_AS(dirac_sea_state(wrong), std::invalid_argument);
}

TEST_CASE("variance against direct sparse application") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 3, 1);
  const OperatorMatrix fb = build_one_body_operator(
      space, region_number_weights(modes, Region::interval(0.0, pi)));

  std::mt19937_64 rng(11);
  std::normal_distribution<double> gauss;
  QuantumState psi;
  psi.amplitudes = Eigen::VectorXcd::Zero(space.dim());
  for (long i = 0; i < psi.amplitudes.size(); ++i)
    psi.amplitudes(i) = cplx(gauss(rng), gauss(rng));
  psi.amplitudes /= psi.amplitudes.norm();

  const Eigen::VectorXcd ap = fb.mat * psi.amplitudes;
  const double mean = std::real(psi.amplitudes.dot(ap));
  const double second = std::real(ap.dot(ap)); // A hermitian: <A psi | A psi> = <psi|A^2|psi>
  CHECK(real_expectation(fb, psi) == doctest::Approx(mean).epsilon(1e-12));
  CHECK(variance(fb, psi) == doctest::Approx(second - mean * mean).epsilon(1e-10));
  CHECK(variance(fb, psi) >= -1e-12);
}

TEST_CASE("non-hermitian weights are rejected") {
  const ModeLattice lat(1, 2 * pi, 0.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 1, 1);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(modes.size(), modes.size());
  w(0, 1) = 1.0; // no conjugate partner
  CHECK_THROWS_AS(build_one_body_operator(space, w), std::invalid_argument);
}

TEST_CASE("position measure commutes with the grid interaction at full resolution only") {
  const ModeLattice lat(1, 2 * pi, 1.5); // M = 3, Nyquist-complete grid N = 3
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const StateSpace space(modes, 2, 1);

  InteractionKernel kernel;
  kernel.coupling = 0.7;
  kernel.profile = CosineProfile::cosine(Eigen::Vector3i(1, 0, 0), 1.0, 0.4);

  const int full = 2 * lat.max_index() + 1;
  const OperatorMatrix hi_full = build_grid_interaction(space, kernel, full);
  for (int g = 0; g < full; ++g) {
    const OperatorMatrix t =
        build_one_body_operator(space, grid_point_weights(modes, full, g));
    CHECK(commutator_norm(t, hi_full) <= 1e-12);
  }

  // modes truncated strictly below the Nyquist of a finer grid: commutator survives
  const int fine = 4 * full;
  const OperatorMatrix hi_fine = build_grid_interaction(space, kernel, fine);
  double worst = 0;
  for (int g = 0; g < fine; ++g) {
    const OperatorMatrix t =
        build_one_body_operator(space, grid_point_weights(modes, fine, g));
    worst = std::max(worst, commutator_norm(t, hi_fine));
  }
  CHECK(worst > 1e-6);
}

TEST_CASE("field-operator states reproduce the cutoff overlap formula, n <= 3") {
  const ModeLattice lat(1, 2 * pi, 1.5);
  const DiracAlgebra alg(1);
  const ModeTable modes(lat, SpeciesTable::single(1.0), alg);
  const FockSector s0(modes, 0), s1(modes, 1), s2(modes, 2), s3(modes, 3);
  const std::vector<const FockSector*> sectors{&s0, &s1, &s2, &s3};

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(0.0, lat.length());
  std::uniform_int_distribution<int> ua(0, alg.spinor_dim() - 1);

  // |x1,a1;...;xn,an> = (1/sqrt(n!)) psi^dag(x1,a1) ... psi^dag(xn,an) |0>
  auto build = [&](const std::vector<std::pair<double, int>>& labels) {
    const int n = static_cast<int>(labels.size());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(1);
    v(0) = 1.0;
    double fact = 1;
    for (int k = n - 1; k >= 0; --k) {
      const SparseC f = field_annihilation(Eigen::Vector3d(labels[static_cast<size_t>(k)].first, 0, 0), 0,
                                           labels[static_cast<size_t>(k)].second,
                                           *sectors[static_cast<size_t>(n - k)],
                                           *sectors[static_cast<size_t>(n - k - 1)]);
      v = Eigen::VectorXcd(f.adjoint() * v);
    }
    for (int k = 2; k <= n; ++k) fact *= k;
    return Eigen::VectorXcd(v / std::sqrt(fact));
  };

  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<std::pair<double, int>> xs, ys;
      for (int k = 0; k < n; ++k) {
        xs.emplace_back(ux(rng), ua(rng));
        ys.emplace_back(ux(rng), ua(rng));
      }
      const Eigen::VectorXcd bra = build(xs), ket = build(ys);
      Eigen::MatrixXcd d(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          d(i, j) = (xs[static_cast<size_t>(i)].second == ys[static_cast<size_t>(j)].second)
                        ? delta_cutoff(Eigen::Vector3d(xs[static_cast<size_t>(i)].first -
                                                           ys[static_cast<size_t>(j)].first,
                                                       0, 0),
                                       lat)
                        : 0.0;
      double fact = 1;
      for (int k = 2; k <= n; ++k) fact *= k;
      const cplx expect = d.determinant() / fact;
      CHECK(std::abs(bra.dot(ket) - expect) <= 1e-10);
    }
  }
}
