#pragma once

#include <vector>

#include "qdwg/material.hpp"
#include "qdwg/spectrum.hpp"

namespace qdwg {

/// Ground-state confinement energy of a particle in a spherical well,
/// hbar^2 pi^2 / (2 m r^2), returned in eV. mass_rel is in units of m0.
double confinement_energy_eV(double radius_nm, double mass_rel);

/// Piezo-generated carrier density n = (d F / e) / V with V = (4/3) pi r^3.
/// The piezo charge d*F is converted to a carrier count via the elementary
/// charge. Linear in F, inverse-cubic in r. Units: nN, nm, pC/N -> m^-3.
double carrier_density_m3(double force_nN, double radius_nm, double d_pC_per_N);

/// Energy shift from the piezoelectric potential, kappa * F / r (eV).
double piezo_energy_eV(double radius_nm, double force_nN, const QDMaterial& mat);

/// Effective dot energy E_g + E_e + E_h - E_ex - E_p + alpha1 * T (eV).
double effective_energy_eV(const QDConfig& cfg, const QDMaterial& mat);

/// Carrier densities in both bands (d33, uniaxial) and the chemical
/// potentials solved from them with the reduced mass.
CarrierState carrier_state(const QDConfig& cfg, const QDMaterial& mat);

/// Emission rate at photon energy E: a Lorentzian of width Gamma centred on
/// the effective dot energy, weighted by the conduction-band occupancy and
/// the valence-band hole availability probed at the photon energy. The
/// conduction quasi-Fermi level sits at E_QD + mu_c and the valence one at
/// -mu_v on the photon-energy axis, so an empty band extinguishes the
/// spectrum entirely.
double emission_rate(double energy_eV, double e_qd_eV, const CarrierState& carriers,
                     const QDMaterial& mat, double temperature_K);

/// Evaluates the emission rate over a wavelength grid. Non-negative
/// everywhere; identically zero at F = 0.
Spectrum emission_spectrum(const QDConfig& cfg, const QDMaterial& mat, const Spectrum& grid);

/// Absorption probability in [0, p_max]: a sigmoid edge at E_QD of width
/// Gamma, p(lambda) = p_max / (1 + exp((E_edge - E(lambda)) / w)).
double absorption_probability(double lambda_nm, double edge_eV, double width_eV, double p_max);
Spectrum absorption_spectrum(const QDConfig& cfg, const QDMaterial& mat, const Spectrum& grid,
                             double p_max = 1.0);

/// Locations and heights of the spectral features, found on the continuous
/// emission-rate curve (dense energy scan refined by golden section).
/// Below the merge force there are two: the excitonic peak near E_QD and
/// the piezo band below it.
struct SpectralFeatures {
    bool merged = false;        // single local maximum
    double excitonic_E = 0.0;   // eV; the maximum nearest E_QD
    double excitonic_amp = 0.0;
    double piezo_E = 0.0;       // eV; only valid when !merged
    double piezo_amp = 0.0;
};
SpectralFeatures find_features(const QDConfig& cfg, const QDMaterial& mat);

/// Smallest force (within [f_lo, f_hi]) at which the two features have
/// merged into one, located by bisection on the feature count.
double find_merge_force(const QDConfig& base, const QDMaterial& mat, double f_lo, double f_hi);

struct SweepResult {
    std::vector<double> forces_nN;
    std::vector<Spectrum> spectra;            // one row per force
    std::vector<SpectralFeatures> features;
    double merge_force_nN = 0.0;              // 0 if no merge inside the range
};

/// One emission spectrum per force on a shared wavelength grid, with the
/// per-force feature track and the located merge force.
SweepResult spectrum_sweep(const std::vector<double>& forces_nN, const QDConfig& base,
                           const QDMaterial& mat, const Spectrum& grid);

}  // namespace qdwg
