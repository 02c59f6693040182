#include "qdwg/qd_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdwg/constants.hpp"
#include "qdwg/fermi.hpp"

namespace qdwg {

double confinement_energy_eV(double radius_nm, double mass_rel) {
    if (!(radius_nm > 0.0) || !(mass_rel > 0.0))
        throw std::domain_error("confinement_energy: radius and mass must be positive");
    using PC = PhysicalConstants;
    const double r = radius_nm * 1e-9;
    const double m = mass_rel * PC::m0;
    const double e_J = PC::hbar * PC::hbar * M_PI * M_PI / (2.0 * m * r * r);
    return e_J / PC::e_charge;
}

double carrier_density_m3(double force_nN, double radius_nm, double d_pC_per_N) {
    if (!(radius_nm > 0.0))
        throw std::domain_error("carrier_density: radius must be positive");
    if (force_nN < 0.0)
        throw std::domain_error("carrier_density: force must be non-negative");
    using PC = PhysicalConstants;
    const double charge_C = d_pC_per_N * 1e-12 * force_nN * 1e-9;
    const double carriers = charge_C / PC::e_charge;
    const double r = radius_nm * 1e-9;
    const double volume = 4.0 / 3.0 * M_PI * r * r * r;
    return carriers / volume;
}

double piezo_energy_eV(double radius_nm, double force_nN, const QDMaterial& mat) {
    if (!(radius_nm > 0.0))
        throw std::domain_error("piezo_energy: radius must be positive");
    if (force_nN < 0.0)
        throw std::domain_error("piezo_energy: force must be non-negative");
    return mat.kappa * force_nN / radius_nm;
}

double effective_energy_eV(const QDConfig& cfg, const QDMaterial& mat) {
    const double e_e = confinement_energy_eV(cfg.radius_nm, mat.m_e_eff);
    const double e_h = confinement_energy_eV(cfg.radius_nm, mat.m_h_eff);
    const double e_p = piezo_energy_eV(cfg.radius_nm, cfg.force_nN, mat);
    return mat.E_g + e_e + e_h - mat.E_ex - e_p + mat.alpha1 * cfg.temperature_K;
}

CarrierState carrier_state(const QDConfig& cfg, const QDMaterial& mat) {
    CarrierState st;
    // Uniaxial compression: d33 only.
    st.n_c = carrier_density_m3(cfg.force_nN, cfg.radius_nm, mat.d33);
    st.n_v = st.n_c;
    st.mu_c = solve_chemical_potential(st.n_c, cfg.temperature_K, mat.m_r);
    st.mu_v = st.mu_c;  // same density, same reduced-mass band model
    return st;
}

double emission_rate(double energy_eV, double e_qd_eV, const CarrierState& carriers,
                     const QDMaterial& mat, double temperature_K) {
    const double half_width = 0.5 * mat.Gamma;
    const double det = energy_eV - e_qd_eV;
    const double lorentz = half_width / (det * det + half_width * half_width);
    const double f_c = fermi_dirac(energy_eV, e_qd_eV + carriers.mu_c, temperature_K);
    // mu_v = -inf (empty valence band of holes) maps to a +inf quasi-Fermi
    // level on the photon axis, which makes 1 - f_v vanish.
    const double f_v = fermi_dirac(energy_eV, -carriers.mu_v, temperature_K);
    return lorentz * f_c * (1.0 - f_v);
}

Spectrum emission_spectrum(const QDConfig& cfg, const QDMaterial& mat, const Spectrum& grid) {
    cfg.validate();
    grid.validate();
    const double e_qd = effective_energy_eV(cfg, mat);
    const CarrierState st = carrier_state(cfg, mat);
    Spectrum out = grid;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double e = wavelength_to_energy_eV(out.wavelengths[i]);
        out.intensities[i] = emission_rate(e, e_qd, st, mat, cfg.temperature_K);
    }
    return out;
}

double absorption_probability(double lambda_nm, double edge_eV, double width_eV, double p_max) {
    const double e = wavelength_to_energy_eV(lambda_nm);
    const double x = (edge_eV - e) / width_eV;
    if (x >= 0.0) {
        const double t = std::exp(-x);
        return p_max * t / (1.0 + t);
    }
    return p_max / (1.0 + std::exp(x));
}

Spectrum absorption_spectrum(const QDConfig& cfg, const QDMaterial& mat, const Spectrum& grid,
                             double p_max) {
    cfg.validate();
    grid.validate();
    const double edge = effective_energy_eV(cfg, mat);
    Spectrum out = grid;
    for (std::size_t i = 0; i < out.size(); ++i)
        out.intensities[i] = absorption_probability(out.wavelengths[i], edge, mat.Gamma, p_max);
    return out;
}

namespace {

// Golden-section refinement of a local maximum of f inside [a, b].
template <typename F>
double golden_max(const F& f, double a, double b) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 120 && (b - a) > 1e-12; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

SpectralFeatures find_features(const QDConfig& cfg, const QDMaterial& mat) {
    cfg.validate();
    SpectralFeatures out;
    if (cfg.force_nN == 0.0) {
        out.merged = true;  // empty spectrum: no features at all
        return out;
    }
    const double e_qd = effective_energy_eV(cfg, mat);
    const CarrierState st = carrier_state(cfg, mat);
    const double kt = kT_eV(cfg.temperature_K);
    auto rate = [&](double e) { return emission_rate(e, e_qd, st, mat, cfg.temperature_K); };

    // Scan band wide enough to hold both the piezo window edge and the
    // Lorentzian core.
    const double mu_below = (st.mu_c == kEmptyBand) ? 0.0 : std::max(-st.mu_c, 0.0);
    const double e_lo = e_qd - (mu_below + 12.0 * kt + 6.0 * mat.Gamma);
    const double e_hi = e_qd + std::max(st.mu_c, 0.0) + 12.0 * kt + 6.0 * mat.Gamma;
    const int n = 20000;
    const double step = (e_hi - e_lo) / n;

    std::vector<double> maxima;
    double prev = rate(e_lo), cur = rate(e_lo + step);
    for (int i = 1; i < n; ++i) {
        const double next = rate(e_lo + (i + 1) * step);
        if (cur > prev && cur >= next)
            maxima.push_back(golden_max(rate, e_lo + (i - 1) * step, e_lo + (i + 1) * step));
        prev = cur;
        cur = next;
    }
    if (maxima.empty()) {
        out.merged = true;
        return out;
    }
    // The excitonic feature is the maximum nearest E_QD; the piezo band is
    // the strongest of the others.
    auto nearest = std::min_element(maxima.begin(), maxima.end(), [&](double a, double b) {
        return std::abs(a - e_qd) < std::abs(b - e_qd);
    });
    out.excitonic_E = *nearest;
    out.excitonic_amp = rate(out.excitonic_E);
    double best_amp = -1.0;
    for (double m : maxima) {
        if (m == *nearest) continue;
        const double a = rate(m);
        if (a > best_amp) {
            best_amp = a;
            out.piezo_E = m;
            out.piezo_amp = a;
        }
    }
    out.merged = (best_amp < 0.0);
    return out;
}

double find_merge_force(const QDConfig& base, const QDMaterial& mat, double f_lo, double f_hi) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo))
        throw std::invalid_argument("find_merge_force: need 0 < f_lo < f_hi");
    auto merged_at = [&](double f) {
        QDConfig c = base;
        c.force_nN = f;
        return find_features(c, mat).merged;
    };
    if (merged_at(f_lo))
        throw std::runtime_error("find_merge_force: features already merged at the lower bound");
    if (!merged_at(f_hi))
        throw std::runtime_error("find_merge_force: features still separate at the upper bound");
    double lo = f_lo, hi = f_hi;
    for (int i = 0; i < 60 && (hi - lo) > 1e-6 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (merged_at(mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

SweepResult spectrum_sweep(const std::vector<double>& forces_nN, const QDConfig& base,
                           const QDMaterial& mat, const Spectrum& grid) {
    if (!std::is_sorted(forces_nN.begin(), forces_nN.end()))
        throw std::invalid_argument("spectrum_sweep: forces must be sorted");
    for (double f : forces_nN)
        if (f < 0.0) throw std::invalid_argument("spectrum_sweep: forces must be non-negative");

    SweepResult out;
    out.forces_nN = forces_nN;
    out.spectra.reserve(forces_nN.size());
    out.features.reserve(forces_nN.size());
    for (double f : forces_nN) {
        QDConfig c = base;
        c.force_nN = f;
        out.spectra.push_back(emission_spectrum(c, mat, grid));
        out.features.push_back(find_features(c, mat));
    }
    // Locate the merge force when the sweep brackets it.
    double last_separate = 0.0, first_merged = 0.0;
    for (std::size_t i = 0; i < forces_nN.size(); ++i) {
        if (forces_nN[i] <= 0.0) continue;
        if (!out.features[i].merged)
            last_separate = forces_nN[i];
        else if (last_separate > 0.0 && first_merged == 0.0)
            first_merged = forces_nN[i];
    }
    if (last_separate > 0.0 && first_merged > last_separate)
        out.merge_force_nN = find_merge_force(base, mat, last_separate, first_merged);
    return out;
}

}  // namespace qdwg
