#pragma once

namespace qdwg {

// CODATA 2018 fundamental constants, SI units.
struct PhysicalConstants {
    static constexpr double hbar     = 1.054571817e-34;   // J s
    static constexpr double k_B      = 1.380649e-23;      // J/K
    static constexpr double e_charge = 1.602176634e-19;   // C
    static constexpr double eps0     = 8.8541878128e-12;  // F/m
    static constexpr double m0       = 9.1093837015e-31;  // kg, electron rest mass
};

// hc in eV*nm; lambda[nm] = hc / E[eV].
inline constexpr double hc_eV_nm = 1239.841984;

inline double energy_to_wavelength_nm(double energy_eV) { return hc_eV_nm / energy_eV; }
inline double wavelength_to_energy_eV(double lambda_nm) { return hc_eV_nm / lambda_nm; }

// Thermal energy in eV.
inline double kT_eV(double temperature_K) {
    return PhysicalConstants::k_B * temperature_K / PhysicalConstants::e_charge;
}

}  // namespace qdwg
