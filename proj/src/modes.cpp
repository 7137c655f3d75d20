#include "dsea/modes.hpp"

#include <cmath>

namespace dsea {

ModeTable::ModeTable(const ModeLattice& lattice, const SpeciesTable& species,
                     const DiracAlgebra& algebra)
    : lattice_(lattice), species_(species), algebra_(algebra) {
  if (algebra.dim() != lattice.dim())
    throw std::invalid_argument("algebra/lattice dimension mismatch");
  const int nh = algebra.helicities();
  for (int sp = 0; sp < species.count(); ++sp) {
    const double mass = species[sp].mass;
    for (int band = 0; band < 2; ++band)
      for (int h = 0; h < nh; ++h)
        for (int k = 0; k < lattice.size(); ++k) {
          BandSpinors bs = dirac_spinors(mass, lattice.momentum(k), algebra);
          SingleParticleMode m;
          m.species = sp;
          m.band = band == 0 ? Band::negative : Band::positive;
          m.helicity = h;
          m.momentum_index = k;
          m.energy = bs.energy;
          m.momentum = lattice.momentum(k);
          m.spinor = (m.band == Band::positive) ? bs.u.col(h) : bs.v.col(h);
          if (m.band == Band::negative) ++negative_count_;
          modes_.push_back(std::move(m));
        }
  }
}

Eigen::VectorXcd ModeTable::mode_function(int i, const Eigen::Vector3d& x) const {
  const auto& m = modes_[static_cast<size_t>(i)];
  const cplx phase = std::exp(cplx(0, m.momentum.dot(x))) / std::sqrt(lattice_.volume());
  return phase * m.spinor;
}

} // namespace dsea
