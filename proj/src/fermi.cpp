#include "qdwg/fermi.hpp"

#include <cmath>

#include "qdwg/constants.hpp"

namespace qdwg {

double fermi_dirac(double energy_eV, double mu_eV, double temperature_K) {
    if (!(temperature_K > 0.0))
        throw std::invalid_argument("fermi_dirac: temperature must be positive");
    if (mu_eV == kEmptyBand) return 0.0;
    if (std::isinf(mu_eV) && mu_eV > 0.0) return 1.0;
    const double x = (energy_eV - mu_eV) / kT_eV(temperature_K);
    // Logistic in the numerically stable branch: never exponentiates a
    // large positive argument.
    if (x >= 0.0) {
        const double e = std::exp(-x);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(x));
}

namespace {

// Adaptive Simpson on [a,b] with absolute tolerance scaled by the caller.
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double rel_tol) {
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max(std::abs(whole), 1e-300);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

// Dimensionless Fermi-Dirac integral Int_0^inf sqrt(x)/(exp(x-eta)+1) dx,
// computed with the substitution x = u^2 so the integrand is smooth at 0.
double fermi_half_integral(double eta) {
    // Beyond x_max the integrand is below 1e-16 of its peak value.
    const double x_max = std::max(eta, 0.0) + 45.0;
    const double u_max = std::sqrt(x_max);
    auto g = [eta](double u) {
        const double x = u * u;
        const double t = x - eta;
        double occ;
        if (t >= 0.0) {
            const double e = std::exp(-t);
            occ = e / (1.0 + e);
        } else {
            occ = 1.0 / (1.0 + std::exp(t));
        }
        return 2.0 * x * occ;  // 2 u^2 f(u^2); du absorbs the sqrt weight
    };
    return integrate(g, 0.0, u_max, 1e-12);
}

}  // namespace

double fermi_band_density(double mu_eV, double temperature_K, double m_rel) {
    if (!(temperature_K > 0.0) || !(m_rel > 0.0))
        throw std::invalid_argument("fermi_band_density: temperature and mass must be positive");
    if (mu_eV == kEmptyBand) return 0.0;
    using PC = PhysicalConstants;
    const double kT_J = PC::k_B * temperature_K;
    const double eta = mu_eV / kT_eV(temperature_K);
    const double m = m_rel * PC::m0;
    const double prefactor =
        (1.0 / (2.0 * M_PI * M_PI)) * std::pow(2.0 * m / (PC::hbar * PC::hbar), 1.5);
    return prefactor * std::pow(kT_J, 1.5) * fermi_half_integral(eta);
}

double solve_chemical_potential(double n_m3, double temperature_K, double m_rel) {
    if (n_m3 < 0.0)
        throw std::invalid_argument("solve_chemical_potential: density must be non-negative");
    if (n_m3 == 0.0) return kEmptyBand;

    double lo = -2.0, hi = 2.0;
    int expansions = 0;
    while (fermi_band_density(hi, temperature_K, m_rel) < n_m3) {
        hi += 1.0;
        if (++expansions > 60)
            throw ChemicalPotentialError("solve_chemical_potential: upper bracket not found", lo, hi);
    }
    while (fermi_band_density(lo, temperature_K, m_rel) > n_m3) {
        lo -= 1.0;
        if (++expansions > 60)
            throw ChemicalPotentialError("solve_chemical_potential: lower bracket not found", lo, hi);
    }

    const int max_iter = 200;
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double n_mid = fermi_band_density(mid, temperature_K, m_rel);
        if (std::abs(n_mid - n_m3) <= 1e-10 * n_m3 || (hi - lo) < 1e-14)
            return mid;
        if (n_mid < n_m3)
            lo = mid;
        else
            hi = mid;
    }
    throw ChemicalPotentialError("solve_chemical_potential: iteration cap reached", lo, hi);
}

}  // namespace qdwg
