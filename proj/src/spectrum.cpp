#include "qdwg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qdwg {

void Spectrum::validate() const {
    if (wavelengths.size() != intensities.size())
        throw std::invalid_argument("Spectrum: wavelength/intensity length mismatch");
    for (std::size_t i = 0; i < wavelengths.size(); ++i) {
        if (!std::isfinite(wavelengths[i]) || wavelengths[i] <= 0.0)
            throw std::invalid_argument("Spectrum: non-positive wavelength at index " + std::to_string(i));
        if (i > 0 && wavelengths[i] <= wavelengths[i - 1])
            throw std::invalid_argument("Spectrum: grid not strictly increasing at index " + std::to_string(i));
        if (!std::isfinite(intensities[i]) || intensities[i] < 0.0)
            throw std::invalid_argument("Spectrum: negative or non-finite intensity at index " + std::to_string(i));
    }
}

double Spectrum::max_intensity() const {
    if (intensities.empty()) return 0.0;
    return *std::max_element(intensities.begin(), intensities.end());
}

double Spectrum::peak_wavelength() const {
    if (intensities.empty()) throw std::invalid_argument("Spectrum: empty");
    auto it = std::max_element(intensities.begin(), intensities.end());
    return wavelengths[static_cast<std::size_t>(it - intensities.begin())];
}

double Spectrum::integral() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < wavelengths.size(); ++i)
        sum += 0.5 * (intensities[i] + intensities[i - 1]) * (wavelengths[i] - wavelengths[i - 1]);
    return sum;
}

Spectrum make_wavelength_grid(double lo_nm, double hi_nm, std::size_t n_points) {
    if (n_points < 2 || hi_nm <= lo_nm)
        throw std::invalid_argument("make_wavelength_grid: need hi > lo and at least 2 points");
    Spectrum s;
    s.wavelengths.resize(n_points);
    s.intensities.assign(n_points, 0.0);
    const double step = (hi_nm - lo_nm) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i)
        s.wavelengths[i] = lo_nm + step * static_cast<double>(i);
    return s;
}

}  // namespace qdwg
