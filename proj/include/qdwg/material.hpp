#pragma once

namespace qdwg {

/// Bulk and nanocrystal constants of the dot material (CdSe by default,
/// values come from the scenario config). Effective masses are in units of
/// the electron rest mass, piezo coefficients in pC/N.
struct QDMaterial {
    double E_g = 0.0;       // bulk band gap, eV
    double m_e_eff = 0.0;   // electron effective mass, m0
    double m_h_eff = 0.0;   // hole effective mass, m0
    double m_r = 0.0;       // reduced mass, m0
    double d31 = 0.0;       // piezoelectric strain coefficient, pC/N
    double d33 = 0.0;       // piezoelectric strain coefficient, pC/N
    double alpha1 = 0.0;    // linear temperature coefficient, eV/K
    double theta_D = 0.0;   // Debye temperature, K
    double Gamma = 0.0;     // emission line width (FWHM), eV
    double E_ex = 0.0;      // excitonic binding energy, eV
    double n_refr = 0.0;    // refractive index of the dot
    double eps_r = 0.0;     // relative permittivity
    double kappa = 0.0;     // piezo-potential calibration, eV*nm/nN

    void validate() const;  // throws std::invalid_argument
};

inline double reduced_mass(double m_e, double m_h) { return m_e * m_h / (m_e + m_h); }

/// Per-dot state: geometry of the emitting dot, applied force, temperature.
struct QDConfig {
    double radius_nm = 0.0;
    double force_nN = 0.0;
    double temperature_K = 0.0;

    void validate() const;
};

/// Piezo-generated carrier densities and the chemical potentials solved
/// from them. Chemical potentials are relative to the respective band edge;
/// -inf marks an empty band (zero force).
struct CarrierState {
    double n_c = 0.0;   // m^-3
    double n_v = 0.0;   // m^-3
    double mu_c = 0.0;  // eV
    double mu_v = 0.0;  // eV
};

}  // namespace qdwg
