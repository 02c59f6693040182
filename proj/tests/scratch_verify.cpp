// Scratch verification of calibration-critical numbers. Not part of the build.
#include <cstdio>

#include "qdwg/constants.hpp"
#include "qdwg/fermi.hpp"
#include "qdwg/qd_spectrum.hpp"

using namespace qdwg;

int main() {
    QDMaterial mat;
    mat.E_g = 1.74;
    mat.m_e_eff = 0.13;
    mat.m_h_eff = 0.45;
    mat.m_r = reduced_mass(0.13, 0.45);
    mat.d31 = -3.92;
    mat.d33 = 7.8;
    mat.alpha1 = 0.00032;
    mat.theta_D = 181.0;
    mat.Gamma = 0.05;
    mat.E_ex = 0.0;
    mat.n_refr = 2.64;
    mat.eps_r = 10.2;
    mat.kappa = 0.0;  // set below

    std::printf("confinement(2.36, 1.0)  = %.7f eV (expect 0.0675)\n",
                confinement_energy_eV(2.36, 1.0));
    std::printf("confinement(2.36, 0.13) = %.7f eV (expect 0.519)\n",
                confinement_energy_eV(2.36, 0.13));
    std::printf("carrier_density(1,2.36,7.8) = %.6e m^-3 (expect 8.84e23)\n",
                carrier_density_m3(1.0, 2.36, 7.8));

    // kappa calibration: E_QD(r=2.36, F=1, T=300) = 2.214 eV (560 nm).
    QDConfig cal{2.36, 1.0, 300.0};
    mat.kappa = 0.0;
    const double e_base = effective_energy_eV(cal, mat);
    const double target = hc_eV_nm / 560.0;
    const double kappa = (e_base - target) * cal.radius_nm / cal.force_nN;
    std::printf("E_base = %.6f eV, target = %.6f eV -> kappa = %.6f eV nm/nN\n", e_base, target,
                kappa);
    mat.kappa = kappa;
    std::printf("E_QD(F=1) = %.6f eV -> lambda = %.2f nm\n", effective_energy_eV(cal, mat),
                energy_to_wavelength_nm(effective_energy_eV(cal, mat)));

    // Chemical potential at a few forces.
    for (double f : {0.002, 0.01, 0.032, 1.0}) {
        QDConfig c{2.36, f, 300.0};
        CarrierState st = carrier_state(c, mat);
        std::printf("F=%.3f nN: n=%.4e mu_c=%.6f eV\n", f, st.n_c, st.mu_c);
    }

    // Feature structure at a couple of forces.
    for (double f : {0.002, 0.01, 0.025, 0.030, 0.032, 0.034, 0.04}) {
        QDConfig c{2.36, f, 300.0};
        SpectralFeatures ft = find_features(c, mat);
        if (ft.merged)
            std::printf("F=%.4f: merged, exc at %.4f eV\n", f, ft.excitonic_E);
        else
            std::printf("F=%.4f: exc %.4f eV (%.3f), piezo %.4f eV (%.3f)  gap %.4f\n", f,
                        ft.excitonic_E, ft.excitonic_amp, ft.piezo_E, ft.piezo_amp,
                        ft.excitonic_E - ft.piezo_E);
    }

    QDConfig base{2.36, 0.0, 300.0};
    const double merge = find_merge_force(base, mat, 0.005, 0.08);
    std::printf("merge force = %.5f nN (accept window [0.024, 0.036])\n", merge);

    // Round-trip of the chemical potential solver.
    double worst = 0.0;
    for (double mu : {-0.3, -0.1, -0.02, 0.05, 0.3, 0.7}) {
        const double n = fermi_band_density(mu, 300.0, mat.m_r);
        const double back = solve_chemical_potential(n, 300.0, mat.m_r);
        const double err = std::abs(back - mu);
        if (err > worst) worst = err;
    }
    std::printf("mu round-trip worst error = %.3e eV (need < 1e-8)\n", worst);
    return 0;
}
