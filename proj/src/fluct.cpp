#include "dsea/fluct.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace dsea {

namespace {
constexpr double w_max = 10.0; // Gaussian weight < e^{-100} beyond
}

double FluctuationSpec::region_volume() const {
  if (volume > 0) return volume;
  return 4.0 / 3.0 * pi * radius * radius * radius;
}

void FluctuationSpec::validate() const {
  if (!(cutoff > 0)) throw std::invalid_argument("cutoff must be positive");
  if (!(radius > 0) && !(volume > 0))
    throw std::invalid_argument("need a positive radius or volume");
  if (!(rel_tol > 0) || rel_tol > 0.1)
    throw std::invalid_argument("rel_tol must lie in (0, 0.1]");
}

double n0(const FluctuationSpec& spec) {
  spec.validate();
  const double lam3 = spec.cutoff * spec.cutoff * spec.cutoff;
  return lam3 / (3.0 * pi * pi) * spec.species.count() * spec.region_volume();
}

double variance_integrand(double p, double q, double mass) {
  if (p == 0.0) return 0.0;
  const double e = std::hypot(p, mass);
  const double epq = std::hypot(p + q, mass);
  return p * q * (p * q - (2.0 / 3.0) * epq * e + epq * (q * q - p * q) / (3.0 * e));
}

double variance_integrand_symmetric(double p, double q, double mass) {
  if (p == 0.0) return 0.0;
  const double e = std::hypot(p, mass);
  const double ep = std::hypot(p + q, mass);
  const double em = std::hypot(p - q, mass);
  const double s = ep + em;
  // s - 2e computed by difference quotients, exact where the naive form
  // cancels catastrophically (large p, small q)
  const double t = (2 * p * q + q * q) / (ep + e) + (q * q - 2 * p * q) / (em + e);
  const double x = s / (2 * e);
  const double xm1 = t / (2 * e);
  // I(p,q) + I(p,-q) = -(2/3) p^2 q^2 (x-1)(x-2)/x + (4/3) p^2 q^4 / (e s)
  return -(2.0 / 3.0) * p * p * q * q * xm1 * (x - 2.0) / x +
         (4.0 / 3.0) * p * p * std::pow(q, 4) / (e * s);
}

namespace {

FluctCase classify(double bm) {
  if (bm > 1e3) return FluctCase::case1;
  if (bm <= 1.0) return FluctCase::case2;
  return FluctCase::case3;
}

void fill_asymptotics(const FluctuationSpec& spec, FluctuationResult& r) {
  const double per = spec.cutoff * spec.radius / (18.0 * std::pow(pi, 1.5));
  r.asymptotic_total = 0;
  for (auto& s : r.per_species) {
    s.asymptotic = per;
    r.asymptotic_total += per;
  }
  r.asymptotic_stddev = std::sqrt(r.asymptotic_total);
}

} // namespace

FluctuationResult variance_quadrature(const FluctuationSpec& spec) {
  spec.validate();
  if (!(spec.radius > 0))
    throw std::invalid_argument("variance quadrature needs a ball radius");
  using boost::math::quadrature::gauss_kronrod;
  const double b = spec.radius;
  const double ub = spec.cutoff * b; // scaled cutoff

  FluctuationResult r;
  r.n0 = n0(spec);
  for (int i = 0; i < spec.species.count(); ++i) {
    const Species& sp = spec.species[i];
    const double mb = sp.mass * b;

    // scaled units u = p b, w = q b; the integrand is homogeneous of
    // degree 4, so all powers of b cancel against the 2 b^6 / 9 pi^2
    // prefactor and the two substitution Jacobians
    auto inner = [&](double u) {
      auto f = [&](double w) {
        return std::exp(-w * w) * variance_integrand_symmetric(u, w, mb);
      };
      return gauss_kronrod<double, 61>::integrate(f, 0.0, w_max, 8, 1e-11);
    };
    double err = 0;
    const double integral =
        gauss_kronrod<double, 61>::integrate(inner, 0.0, ub, 14, spec.rel_tol / 8, &err);
    const double value = 2.0 / (9.0 * pi * pi) * integral;
    const double value_err = 2.0 / (9.0 * pi * pi) * err;
    if (value != 0.0 && value_err > spec.rel_tol * std::abs(value))
      throw tolerance_error("variance quadrature did not meet the requested tolerance for " +
                                sp.id,
                            value, value_err);
    SpeciesFluctuation sf;
    sf.id = sp.id;
    sf.variance = value;
    sf.error = value_err;
    sf.case_label = (spec.case_override == FluctCase::auto_select) ? classify(mb)
                                                                   : spec.case_override;
    r.per_species.push_back(sf);
    r.variance_total += value;
    r.quadrature_error += value_err;
  }
  r.stddev = std::sqrt(std::max(0.0, r.variance_total));
  fill_asymptotics(spec, r);
  return r;
}

FluctuationResult variance_asymptotic(const FluctuationSpec& spec) {
  spec.validate();
  FluctuationResult r;
  r.n0 = n0(spec);
  for (int i = 0; i < spec.species.count(); ++i) {
    SpeciesFluctuation sf;
    sf.id = spec.species[i].id;
    sf.case_label = (spec.case_override == FluctCase::auto_select)
                        ? classify(spec.species[i].mass * spec.radius)
                        : spec.case_override;
    r.per_species.push_back(sf);
  }
  fill_asymptotics(spec, r);
  for (auto& s : r.per_species) s.variance = s.asymptotic;
  r.variance_total = r.asymptotic_total;
  r.stddev = r.asymptotic_stddev;
  return r;
}

std::pair<double, double> macro_statistics(const FluctuationSpec& spec, double m_particles,
                                           bool inside) {
  if (m_particles < 0) throw std::invalid_argument("particle count must be >= 0");
  const FluctuationResult r = variance_asymptotic(spec);
  const double mean = inside ? m_particles + r.n0 : r.n0;
  return {mean, r.asymptotic_stddev};
}

double distinguishability_radius(double fermion_density, double cutoff) {
  if (!(fermion_density > 0) || !(cutoff > 0))
    throw std::invalid_argument("density and cutoff must be positive");
  const double c = std::pow(4.0 / 3.0, 1.0 / 3.0) * std::pow(pi, -11.0 / 12.0);
  const double v = std::pow(c * std::sqrt(cutoff) / fermion_density, 6.0 / 5.0);
  return std::cbrt(3.0 * v / (4.0 * pi));
}

double distinguishability_ratio(double n_a, double n_b, double stddev) {
  if (!(stddev > 0)) throw std::invalid_argument("stddev must be positive");
  return std::abs(n_a - n_b) / stddev;
}

} // namespace dsea
