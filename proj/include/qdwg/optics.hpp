#pragma once

#include <optional>

#include "qdwg/vec3.hpp"

namespace qdwg {

/// Critical angle arcsin(n2/n1) in radians. Requires n1 >= n2 > 0; throws
/// std::domain_error otherwise (no critical angle exists).
double critical_angle(double n1, double n2);

/// Snell refraction of a unit direction across an interface with unit
/// normal oriented against the incoming ray (dot(dir, normal) < 0).
/// Returns the transmitted unit direction, or nullopt on total internal
/// reflection. Non-unit inputs violate the contract and throw.
std::optional<Vec3> refract(const Vec3& dir, const Vec3& normal, double n1, double n2);

/// Specular reflection dir - 2 (dir.normal) normal.
Vec3 reflect(const Vec3& dir, const Vec3& normal);

/// Unpolarized Fresnel reflectance (Rs+Rp)/2 for incidence angle theta1
/// (radians, in [0, pi/2]); exactly 1 at and beyond the critical angle.
double fresnel_reflectance(double theta1, double n1, double n2);

}  // namespace qdwg
