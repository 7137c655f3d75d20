#pragma once

#include <string>
#include <vector>

#include "dsea/species.hpp"

namespace dsea {

enum class FluctCase { auto_select = 0, case1 = 1, case2 = 2, case3 = 3 };

/// Inputs of the vacuum fermion-number statistics quadratures. The
/// variance region is a Gaussian window of radius b; the mean n0 uses the
/// sharp ball of the same radius (volume override for box regions).
struct FluctuationSpec {
  double cutoff = 0;   // Lambda, 1/m
  double radius = 0;   // b, m
  double volume = -1;  // optional region volume override for n0, m^3
  SpeciesTable species = SpeciesTable::single(0.0);
  double rel_tol = 1e-3;
  FluctCase case_override = FluctCase::auto_select;

  double region_volume() const;
  void validate() const;
};

struct SpeciesFluctuation {
  std::string id;
  double variance = 0;        // quadrature value
  double error = 0;           // quadrature error estimate
  double asymptotic = 0;      // Lambda b / (18 pi^{3/2})
  FluctCase case_label = FluctCase::case2;
};

struct FluctuationResult {
  double n0 = 0;
  std::vector<SpeciesFluctuation> per_species;
  double variance_total = 0;
  double stddev = 0;
  double asymptotic_total = 0;
  double asymptotic_stddev = 0;
  double quadrature_error = 0;
};

/// Vacuum mean fermion number in the region: (Lambda^3 / 3 pi^2) * S * V.
double n0(const FluctuationSpec& spec);

/// Radial integrand I(p, q) of the variance double integral, literal
/// form; p = 0 returns the explicit zero limit.
double variance_integrand(double p, double q, double mass);

/// Symmetrized integrand I(p, q) + I(p, -q), algebraically rearranged so
/// the odd p^3 q term cancels exactly (no catastrophic cancellation at
/// large p b).
double variance_integrand_symmetric(double p, double q, double mass);

/// Per-species variance by nested adaptive quadrature,
/// (2 b^6 / 9 pi^2) int_0^Lambda dp int dq e^{-b^2 q^2} I(p,q).
/// Throws tolerance_error when the panel budget cannot meet rel_tol.
FluctuationResult variance_quadrature(const FluctuationSpec& spec);

/// Asymptotic values and case labels (bm thresholds 1 and 1e3).
FluctuationResult variance_asymptotic(const FluctuationSpec& spec);

/// Expectation and standard deviation of the fermion number with m extra
/// particles localized in the region (inside) or for the complement
/// (outside, m ignored). The stddev equals the vacuum value at this
/// approximation level.
std::pair<double, double> macro_statistics(const FluctuationSpec& spec, double m_particles,
                                           bool inside);

/// Ball radius at which the vacuum noise stops masking the fermion
/// density: solves rho_f V = C sqrt(Lambda) V^{1/6} with V = (4pi/3) b^3
/// and C = (4/3)^{1/3} pi^{-11/12}.
double distinguishability_radius(double fermion_density, double cutoff);

/// |n_a - n_b| in units of the vacuum stddev (distinguishable when >> 1).
double distinguishability_ratio(double n_a, double n_b, double stddev);

} // namespace dsea
