#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace dsea {

using cplx = std::complex<double>;

constexpr double pi = 3.14159265358979323846;

/// Thrown when the beable density at a configuration is below the node
/// floor; carries the offending configuration so the integrator can
/// shrink its step.
class near_node_error : public std::runtime_error {
public:
  explicit near_node_error(std::string what) : std::runtime_error(std::move(what)) {}
};

/// Thrown when an adaptive quadrature cannot meet the requested
/// tolerance within its panel budget.
class tolerance_error : public std::runtime_error {
public:
  tolerance_error(std::string what, double best, double err)
      : std::runtime_error(std::move(what)), best_estimate(best), error_estimate(err) {}
  double best_estimate;
  double error_estimate;
};

// hbar = c = 1 throughout; lengths in meters, momenta/masses/energies in 1/m.
// Conversion for species tables quoted in eV: E[1/m] = E[eV] / hbar_c_ev_m.
constexpr double hbar_c_ev_m = 1.973269804e-7; // eV * m

inline double ev_to_inverse_m(double ev) { return ev / hbar_c_ev_m; }
inline double inverse_m_to_ev(double inv_m) { return inv_m * hbar_c_ev_m; }

} // namespace dsea
