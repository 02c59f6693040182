#include "qdwg/optics.hpp"

#include <cmath>
#include <stdexcept>

namespace qdwg {

double critical_angle(double n1, double n2) {
    if (!(n2 > 0.0) || !(n1 > 0.0))
        throw std::domain_error("critical_angle: indices must be positive");
    if (n2 > n1)
        throw std::domain_error("critical_angle: no critical angle for n2 > n1");
    return std::asin(n2 / n1);
}

std::optional<Vec3> refract(const Vec3& dir, const Vec3& normal, double n1, double n2) {
    if (!is_unit(dir) || !is_unit(normal))
        throw std::invalid_argument("refract: direction and normal must be unit vectors");
    const double cos1 = -dot(dir, normal);
    if (cos1 < 0.0)
        throw std::invalid_argument("refract: normal must oppose the incoming direction");
    const double ratio = n1 / n2;
    const double sin2_sq = ratio * ratio * (1.0 - cos1 * cos1);
    if (sin2_sq > 1.0) return std::nullopt;  // TIR
    const double cos2 = std::sqrt(1.0 - sin2_sq);
    return normalized(ratio * dir + (ratio * cos1 - cos2) * normal);
}

Vec3 reflect(const Vec3& dir, const Vec3& normal) {
    if (!is_unit(dir) || !is_unit(normal))
        throw std::invalid_argument("reflect: direction and normal must be unit vectors");
    return dir - 2.0 * dot(dir, normal) * normal;
}

double fresnel_reflectance(double theta1, double n1, double n2) {
    if (theta1 < 0.0 || theta1 > M_PI / 2.0 + 1e-12)
        throw std::invalid_argument("fresnel_reflectance: theta1 outside [0, pi/2]");
    if (n1 == n2) return 0.0;
    const double sin1 = std::sin(theta1);
    const double sin2 = n1 / n2 * sin1;
    if (sin2 >= 1.0) return 1.0;  // at or beyond the critical angle
    const double cos1 = std::cos(theta1);
    const double cos2 = std::sqrt(1.0 - sin2 * sin2);
    const double rs = (n1 * cos1 - n2 * cos2) / (n1 * cos1 + n2 * cos2);
    const double rp = (n1 * cos2 - n2 * cos1) / (n1 * cos2 + n2 * cos1);
    return 0.5 * (rs * rs + rp * rp);
}

}  // namespace qdwg
