#pragma once

#include <cstddef>
#include <vector>

namespace qdwg {

/// Wavelength grid (nm, strictly increasing) with non-negative intensities
/// in arbitrary units. The common currency between the emission model, the
/// ray tracer and the fitting routines.
struct Spectrum {
    std::vector<double> wavelengths;
    std::vector<double> intensities;

    std::size_t size() const { return wavelengths.size(); }

    /// Throws std::invalid_argument if the grid is not strictly increasing,
    /// lengths differ, or any intensity is negative or non-finite.
    void validate() const;

    double max_intensity() const;
    double peak_wavelength() const;  // grid argmax
    double integral() const;         // trapezoid over the grid
};

/// Uniform wavelength grid with zero intensities.
Spectrum make_wavelength_grid(double lo_nm, double hi_nm, std::size_t n_points);

}  // namespace qdwg
