#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qdwg/rng.hpp"
#include "qdwg/vec3.hpp"

namespace qdwg {

/// One 50x50x50 nm simulation block of the waveguide core with the force
/// applied to the dots it contains.
struct Segment {
    int index = 0;
    double z_lo_nm = 0.0;
    double z_hi_nm = 0.0;
    double n_core = 0.0;
    double force_nN = 0.0;
};

struct QDSphere {
    Vec3 center_nm;
    double radius_nm = 0.0;
    double n_refr = 0.0;
    int segment_index = 0;
};

struct SceneConfig {
    double n_core = 1.49;
    double n_clad = 1.38;
    double n_outside = 1.0;
    double segment_size_nm = 50.0;
    int n_segments = 3;
    double clad_thickness_nm = 10.0;
    double qd_spacing_nm = 10.0;
    double qd_radius_nm = 1.5;
    double qd_n_refr = 2.64;
    std::array<double, 3> segment_forces_nN{1.0, 1.0, 1.0};
    double cone_half_angle_deg = 30.0;
    double source_wavelength_nm = 532.0;

    void validate() const;  // throws std::invalid_argument naming the field
};

enum class Medium { Core, Cladding, Dot, Outside };

enum class SurfaceKind {
    CoreSide,       // core <-> cladding
    CoreEntrance,   // core <-> outside at z = 0
    Detector,       // core <-> outside at z = L
    CladOuterSide,  // cladding <-> outside, side walls
    CladEnd,        // cladding <-> outside, end annuli
    Sphere,         // core <-> dot
};

struct Hit {
    double t = 0.0;     // distance along the ray, nm
    Vec3 point;         // hit position
    Vec3 normal;        // unit, oriented against the incoming ray
    SurfaceKind kind = SurfaceKind::CoreSide;
    int qd_index = -1;  // valid for Sphere hits
};

/// Immutable waveguide geometry: three core segments along +z, a cladding
/// shell around the sides, a cubic mesh of dots, detector plane at z = L.
/// Shared read-only across tracing workers.
class Scene {
public:
    explicit Scene(const SceneConfig& cfg);

    const SceneConfig& config() const { return cfg_; }
    const std::vector<Segment>& segments() const { return segments_; }
    const std::vector<QDSphere>& qds() const { return qds_; }

    double half_width_nm() const { return 0.5 * cfg_.segment_size_nm; }
    double outer_half_width_nm() const { return half_width_nm() + cfg_.clad_thickness_nm; }
    double length_nm() const { return cfg_.segment_size_nm * cfg_.n_segments; }

    int segment_of_z(double z) const;
    std::pair<Medium, int> medium_at(const Vec3& p) const;  // (medium, qd index or -1)

    /// Nearest interface from p along unit dir, given the medium the ray
    /// currently travels in. Distances below 1e-9 nm are ignored to avoid
    /// self-intersection. Returns nullopt when the ray leaves the scene.
    std::optional<Hit> next_interface(const Vec3& p, const Vec3& dir, Medium medium,
                                      int current_qd = -1) const;

    /// Spec-level intersect: infers the medium at p.
    std::optional<Hit> intersect(const Vec3& p, const Vec3& dir) const;

private:
    SceneConfig cfg_;
    std::vector<Segment> segments_;
    std::vector<QDSphere> qds_;

    // Uniform grid over the core box, cell size = qd_spacing; each cell
    // lists the dots whose bounding boxes touch it.
    int nx_ = 0, ny_ = 0, nz_ = 0;
    std::vector<std::vector<int>> cells_;

    int cell_index(int ix, int iy, int iz) const { return (iz * ny_ + iy) * nx_ + ix; }
    std::optional<Hit> nearest_sphere_hit(const Vec3& p, const Vec3& dir, double t_max,
                                          int skip_qd) const;
    std::optional<Hit> core_exit(const Vec3& p, const Vec3& dir) const;
};

Scene build_scene(const SceneConfig& cfg);

/// Unit direction uniform over the spherical cap of the given half-angle
/// about +z. Requires 0 < half_angle <= 90 degrees.
Vec3 sample_cone_direction(Pcg32& rng, double half_angle_deg);

/// Isotropic unit direction over the full sphere.
Vec3 sample_isotropic_direction(Pcg32& rng);

}  // namespace qdwg
