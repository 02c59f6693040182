#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace qdwg {

/// Sentinel chemical potential of a band holding zero carriers.
inline constexpr double kEmptyBand = -std::numeric_limits<double>::infinity();

/// Fermi-Dirac occupancy 1/(exp((E-mu)/kT)+1), overflow-safe for
/// |E-mu|/kT up to ~1e4 and for mu = +-inf.
double fermi_dirac(double energy_eV, double mu_eV, double temperature_K);

/// Carrier density (m^-3) of a parabolic band with effective mass
/// m_rel*m0 at chemical potential mu (eV, relative to the band edge):
///   n = (1/2 pi^2) (2 m / hbar^2)^{3/2} Int_0^inf sqrt(E) / (exp((E-mu)/kT)+1) dE.
/// The integral is evaluated by adaptive quadrature, truncated where the
/// integrand falls below 1e-16 of its peak.
double fermi_band_density(double mu_eV, double temperature_K, double m_rel);

struct ChemicalPotentialError : std::runtime_error {
    double bracket_lo;
    double bracket_hi;
    ChemicalPotentialError(const std::string& what, double lo, double hi)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi) {}
};

/// Inverts fermi_band_density in mu by bracketed bisection, relative
/// tolerance 1e-10 on the density. n = 0 returns the empty-band sentinel.
/// Throws ChemicalPotentialError (carrying the last bracket) if the
/// iteration cap is hit.
double solve_chemical_potential(double n_m3, double temperature_K, double m_rel);

}  // namespace qdwg
