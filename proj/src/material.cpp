#include "qdwg/material.hpp"

#include <cmath>
#include <stdexcept>

namespace qdwg {

void QDMaterial::validate() const {
    if (!(m_e_eff > 0.0) || !(m_h_eff > 0.0) || !(m_r > 0.0))
        throw std::invalid_argument("QDMaterial: effective masses must be positive");
    const double mr_expected = reduced_mass(m_e_eff, m_h_eff);
    if (std::abs(m_r - mr_expected) > 1e-9 * mr_expected)
        throw std::invalid_argument("QDMaterial: m_r inconsistent with m_e_eff, m_h_eff");
    if (!(Gamma > 0.0))
        throw std::invalid_argument("QDMaterial: Gamma must be positive");
    if (E_ex < 0.0)
        throw std::invalid_argument("QDMaterial: E_ex must be non-negative");
    if (!(E_g > 0.0))
        throw std::invalid_argument("QDMaterial: E_g must be positive");
}

void QDConfig::validate() const {
    if (!(radius_nm > 0.0))
        throw std::invalid_argument("QDConfig: radius must be positive");
    if (force_nN < 0.0)
        throw std::invalid_argument("QDConfig: force must be non-negative");
    if (!(temperature_K > 0.0))
        throw std::invalid_argument("QDConfig: temperature must be positive");
}

}  // namespace qdwg
