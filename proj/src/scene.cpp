#include "qdwg/scene.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qdwg {

namespace {
constexpr double kMinHitDist = 1e-9;  // nm; guards against self-intersection
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

void SceneConfig::validate() const {
    if (!(n_core > n_clad) || !(n_clad > n_outside) || !(n_outside >= 1.0))
        throw std::invalid_argument("scene: require n_core > n_clad > n_outside >= 1");
    if (!(segment_size_nm > 0.0))
        throw std::invalid_argument("scene.segment_size_nm: must be positive");
    if (n_segments != 3)
        throw std::invalid_argument("scene.n_segments: the waveguide model uses 3 segments");
    if (!(clad_thickness_nm > 0.0))
        throw std::invalid_argument("scene.clad_thickness_nm: must be positive");
    if (!(qd_radius_nm > 0.0))
        throw std::invalid_argument("scene.qd_radius_nm: must be positive");
    if (!(qd_spacing_nm > 2.0 * qd_radius_nm))
        throw std::invalid_argument("scene.qd_spacing_nm: must exceed twice qd_radius_nm (overlapping dots)");
    if (!(qd_n_refr > 0.0))
        throw std::invalid_argument("scene.qd_n_refr: must be positive");
    if (!(cone_half_angle_deg > 0.0) || cone_half_angle_deg > 90.0)
        throw std::invalid_argument("scene.cone_half_angle_deg: must be in (0, 90]");
    if (!(source_wavelength_nm > 0.0))
        throw std::invalid_argument("scene.source_wavelength_nm: must be positive");
    for (double f : segment_forces_nN)
        if (f < 0.0) throw std::invalid_argument("scene.segment_forces_nN: must be non-negative");
}

Scene::Scene(const SceneConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const double side = cfg_.segment_size_nm;
    const double spacing = cfg_.qd_spacing_nm;
    const double hw = half_width_nm();

    segments_.reserve(cfg_.n_segments);
    for (int s = 0; s < cfg_.n_segments; ++s)
        segments_.push_back(Segment{s, s * side, (s + 1) * side, cfg_.n_core,
                                    cfg_.segment_forces_nN[static_cast<std::size_t>(s)]});

    // Cubic mesh, offset spacing/2 from every segment face.
    const int per_axis = static_cast<int>(std::floor(side / spacing + 1e-9));
    for (int s = 0; s < cfg_.n_segments; ++s) {
        const double z0 = s * side;
        for (int iz = 0; iz < per_axis; ++iz)
            for (int iy = 0; iy < per_axis; ++iy)
                for (int ix = 0; ix < per_axis; ++ix) {
                    QDSphere dot;
                    dot.center_nm = {-hw + 0.5 * spacing + ix * spacing,
                                     -hw + 0.5 * spacing + iy * spacing,
                                     z0 + 0.5 * spacing + iz * spacing};
                    dot.radius_nm = cfg_.qd_radius_nm;
                    dot.n_refr = cfg_.qd_n_refr;
                    dot.segment_index = s;
                    qds_.push_back(dot);
                }
    }

    // Uniform grid over the core box; spheres binned by bounding box so
    // protruding dots are still found from neighbouring cells.
    nx_ = std::max(1, static_cast<int>(std::ceil(side / spacing - 1e-9)));
    ny_ = nx_;
    nz_ = std::max(1, static_cast<int>(std::ceil(length_nm() / spacing - 1e-9)));
    cells_.assign(static_cast<std::size_t>(nx_) * ny_ * nz_, {});
    auto clamp_cell = [](int i, int n) { return std::clamp(i, 0, n - 1); };
    for (std::size_t q = 0; q < qds_.size(); ++q) {
        const QDSphere& d = qds_[q];
        const double r = d.radius_nm;
        const int ix0 = clamp_cell(static_cast<int>(std::floor((d.center_nm.x - r + hw) / spacing)), nx_);
        const int ix1 = clamp_cell(static_cast<int>(std::floor((d.center_nm.x + r + hw) / spacing)), nx_);
        const int iy0 = clamp_cell(static_cast<int>(std::floor((d.center_nm.y - r + hw) / spacing)), ny_);
        const int iy1 = clamp_cell(static_cast<int>(std::floor((d.center_nm.y + r + hw) / spacing)), ny_);
        const int iz0 = clamp_cell(static_cast<int>(std::floor((d.center_nm.z - r) / spacing)), nz_);
        const int iz1 = clamp_cell(static_cast<int>(std::floor((d.center_nm.z + r) / spacing)), nz_);
        for (int iz = iz0; iz <= iz1; ++iz)
            for (int iy = iy0; iy <= iy1; ++iy)
                for (int ix = ix0; ix <= ix1; ++ix)
                    cells_[static_cast<std::size_t>(cell_index(ix, iy, iz))].push_back(static_cast<int>(q));
    }
}

Scene build_scene(const SceneConfig& cfg) { return Scene(cfg); }

int Scene::segment_of_z(double z) const {
    const int s = static_cast<int>(std::floor(z / cfg_.segment_size_nm));
    return std::clamp(s, 0, cfg_.n_segments - 1);
}

std::pair<Medium, int> Scene::medium_at(const Vec3& p) const {
    const double hw = half_width_nm();
    const double ohw = outer_half_width_nm();
    const double L = length_nm();
    if (p.z < 0.0 || p.z > L || std::abs(p.x) > ohw || std::abs(p.y) > ohw)
        return {Medium::Outside, -1};
    if (std::abs(p.x) <= hw && std::abs(p.y) <= hw) {
        // Inside the core box; a point inside a sphere lies inside the
        // sphere's bounding box, so its own cell lists that sphere.
        const double spacing = cfg_.qd_spacing_nm;
        const int ix = std::clamp(static_cast<int>(std::floor((p.x + hw) / spacing)), 0, nx_ - 1);
        const int iy = std::clamp(static_cast<int>(std::floor((p.y + hw) / spacing)), 0, ny_ - 1);
        const int iz = std::clamp(static_cast<int>(std::floor(p.z / spacing)), 0, nz_ - 1);
        for (int q : cells_[static_cast<std::size_t>(cell_index(ix, iy, iz))]) {
            const Vec3 oc = p - qds_[static_cast<std::size_t>(q)].center_nm;
            const double r = qds_[static_cast<std::size_t>(q)].radius_nm;
            if (dot(oc, oc) < r * r) return {Medium::Dot, q};
        }
        return {Medium::Core, -1};
    }
    return {Medium::Cladding, -1};
}

namespace {

struct BoxExit {
    double t = kInf;
    int axis = -1;  // 0:x 1:y 2:z
    double sign = 0.0;
};

// Exit of a ray starting inside an axis-aligned box.
BoxExit box_exit(const Vec3& p, const Vec3& d, const Vec3& lo, const Vec3& hi) {
    BoxExit out;
    const double pc[3] = {p.x, p.y, p.z};
    const double dc[3] = {d.x, d.y, d.z};
    const double loc[3] = {lo.x, lo.y, lo.z};
    const double hic[3] = {hi.x, hi.y, hi.z};
    for (int a = 0; a < 3; ++a) {
        if (dc[a] == 0.0) continue;
        const double bound = dc[a] > 0.0 ? hic[a] : loc[a];
        const double t = (bound - pc[a]) / dc[a];
        if (t < out.t) {
            out.t = t;
            out.axis = a;
            out.sign = dc[a] > 0.0 ? 1.0 : -1.0;
        }
    }
    return out;
}

// Entry of a ray into an axis-aligned box (slab method); nullopt if missed.
struct BoxEntry {
    double t = 0.0;
    int axis = 0;
    double sign = 0.0;
};
std::optional<BoxEntry> box_entry(const Vec3& p, const Vec3& d, const Vec3& lo, const Vec3& hi) {
    double t_near = -kInf, t_far = kInf;
    int axis = -1;
    double sign = 0.0;
    const double pc[3] = {p.x, p.y, p.z};
    const double dc[3] = {d.x, d.y, d.z};
    const double loc[3] = {lo.x, lo.y, lo.z};
    const double hic[3] = {hi.x, hi.y, hi.z};
    for (int a = 0; a < 3; ++a) {
        if (dc[a] == 0.0) {
            if (pc[a] < loc[a] || pc[a] > hic[a]) return std::nullopt;
            continue;
        }
        double t0 = (loc[a] - pc[a]) / dc[a];
        double t1 = (hic[a] - pc[a]) / dc[a];
        double s = dc[a] > 0.0 ? -1.0 : 1.0;  // outward normal on the entry face
        if (t0 > t1) std::swap(t0, t1);
        if (t0 > t_near) {
            t_near = t0;
            axis = a;
            sign = s;
        }
        t_far = std::min(t_far, t1);
    }
    if (t_near > t_far || t_near < kMinHitDist || axis < 0) return std::nullopt;
    return BoxEntry{t_near, axis, sign};
}

Vec3 axis_normal(int axis, double sign) {
    switch (axis) {
        case 0: return {sign, 0.0, 0.0};
        case 1: return {0.0, sign, 0.0};
        default: return {0.0, 0.0, sign};
    }
}

}  // namespace

std::optional<Hit> Scene::core_exit(const Vec3& p, const Vec3& dir) const {
    const double hw = half_width_nm();
    const BoxExit ex = box_exit(p, dir, {-hw, -hw, 0.0}, {hw, hw, length_nm()});
    if (ex.axis < 0 || ex.t < kMinHitDist) return std::nullopt;
    Hit h;
    h.t = ex.t;
    h.point = p + dir * ex.t;
    h.normal = axis_normal(ex.axis, -ex.sign);  // against the ray
    if (ex.axis == 2)
        h.kind = ex.sign > 0.0 ? SurfaceKind::Detector : SurfaceKind::CoreEntrance;
    else
        h.kind = SurfaceKind::CoreSide;
    return h;
}

std::optional<Hit> Scene::nearest_sphere_hit(const Vec3& p, const Vec3& dir, double t_max,
                                             int skip_qd) const {
    if (qds_.empty()) return std::nullopt;
    const double hw = half_width_nm();
    const double spacing = cfg_.qd_spacing_nm;

    // Amanatides-Woo traversal of the core-box grid.
    int ix = std::clamp(static_cast<int>(std::floor((p.x + hw) / spacing)), 0, nx_ - 1);
    int iy = std::clamp(static_cast<int>(std::floor((p.y + hw) / spacing)), 0, ny_ - 1);
    int iz = std::clamp(static_cast<int>(std::floor(p.z / spacing)), 0, nz_ - 1);
    const int step_x = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
    const int step_y = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);
    const int step_z = dir.z > 0.0 ? 1 : (dir.z < 0.0 ? -1 : 0);
    auto boundary_t = [&](double pos, double origin, int idx, int step, double d) {
        if (step == 0) return kInf;
        const double edge = origin + (idx + (step > 0 ? 1 : 0)) * spacing;
        return (edge - pos) / d;
    };
    double tmax_x = boundary_t(p.x, -hw, ix, step_x, dir.x);
    double tmax_y = boundary_t(p.y, -hw, iy, step_y, dir.y);
    double tmax_z = boundary_t(p.z, 0.0, iz, step_z, dir.z);
    const double tdelta_x = step_x ? spacing / std::abs(dir.x) : kInf;
    const double tdelta_y = step_y ? spacing / std::abs(dir.y) : kInf;
    const double tdelta_z = step_z ? spacing / std::abs(dir.z) : kInf;

    double best_t = kInf;
    int best_q = -1;
    while (true) {
        for (int q : cells_[static_cast<std::size_t>(cell_index(ix, iy, iz))]) {
            if (q == skip_qd) continue;
            const QDSphere& d = qds_[static_cast<std::size_t>(q)];
            const Vec3 oc = p - d.center_nm;
            const double b = dot(oc, dir);
            const double c = dot(oc, oc) - d.radius_nm * d.radius_nm;
            const double disc = b * b - c;
            if (disc < 0.0) continue;
            const double sq = std::sqrt(disc);
            double t = -b - sq;
            if (t < kMinHitDist) t = -b + sq;  // grazing/on-surface start
            if (t < kMinHitDist || t >= best_t || t > t_max) continue;
            best_t = t;
            best_q = q;
        }
        const double cell_exit = std::min({tmax_x, tmax_y, tmax_z});
        if (best_q >= 0 && best_t <= cell_exit) break;  // no nearer cell can beat it
        if (cell_exit > t_max || cell_exit == kInf) break;
        if (tmax_x <= tmax_y && tmax_x <= tmax_z) {
            ix += step_x;
            tmax_x += tdelta_x;
            if (ix < 0 || ix >= nx_) break;
        } else if (tmax_y <= tmax_z) {
            iy += step_y;
            tmax_y += tdelta_y;
            if (iy < 0 || iy >= ny_) break;
        } else {
            iz += step_z;
            tmax_z += tdelta_z;
            if (iz < 0 || iz >= nz_) break;
        }
    }
    if (best_q < 0) return std::nullopt;
    Hit h;
    h.t = best_t;
    h.point = p + dir * best_t;
    const QDSphere& d = qds_[static_cast<std::size_t>(best_q)];
    Vec3 outward = normalized(h.point - d.center_nm);
    h.normal = dot(dir, outward) < 0.0 ? outward : -outward;
    h.kind = SurfaceKind::Sphere;
    h.qd_index = best_q;
    return h;
}

std::optional<Hit> Scene::next_interface(const Vec3& p, const Vec3& dir, Medium medium,
                                         int current_qd) const {
    if (!is_unit(dir)) throw std::invalid_argument("next_interface: direction must be unit");
    const double hw = half_width_nm();
    const double ohw = outer_half_width_nm();
    const double L = length_nm();

    switch (medium) {
        case Medium::Core: {
            auto wall = core_exit(p, dir);
            const double t_cap = wall ? wall->t : kInf;
            auto sph = nearest_sphere_hit(p, dir, t_cap, -1);
            if (sph && (!wall || sph->t < wall->t)) return sph;
            return wall;
        }
        case Medium::Dot: {
            if (current_qd < 0 || current_qd >= static_cast<int>(qds_.size()))
                throw std::invalid_argument("next_interface: Dot medium needs a valid qd index");
            const QDSphere& d = qds_[static_cast<std::size_t>(current_qd)];
            const Vec3 oc = p - d.center_nm;
            const double b = dot(oc, dir);
            const double c = dot(oc, oc) - d.radius_nm * d.radius_nm;
            const double disc = b * b - c;
            if (disc < 0.0) return std::nullopt;  // should not happen from inside
            const double t = -b + std::sqrt(disc);
            if (t < kMinHitDist) return std::nullopt;
            Hit h;
            h.t = t;
            h.point = p + dir * t;
            h.normal = normalized(d.center_nm - h.point);  // into the sphere, against the ray
            h.kind = SurfaceKind::Sphere;
            h.qd_index = current_qd;
            return h;
        }
        case Medium::Cladding: {
            const BoxExit outer = box_exit(p, dir, {-ohw, -ohw, 0.0}, {ohw, ohw, L});
            std::optional<Hit> best;
            if (outer.axis >= 0 && outer.t >= kMinHitDist) {
                Hit h;
                h.t = outer.t;
                h.point = p + dir * outer.t;
                h.normal = axis_normal(outer.axis, -outer.sign);
                h.kind = outer.axis == 2 ? SurfaceKind::CladEnd : SurfaceKind::CladOuterSide;
                best = h;
            }
            if (auto entry = box_entry(p, dir, {-hw, -hw, 0.0}, {hw, hw, L})) {
                if (!best || entry->t < best->t) {
                    Hit h;
                    h.t = entry->t;
                    h.point = p + dir * entry->t;
                    h.normal = axis_normal(entry->axis, entry->sign);
                    h.kind = SurfaceKind::CoreSide;
                    best = h;
                }
            }
            return best;
        }
        case Medium::Outside:
            return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Hit> Scene::intersect(const Vec3& p, const Vec3& dir) const {
    const auto [medium, qd] = medium_at(p);
    return next_interface(p, dir, medium, qd);
}

Vec3 sample_cone_direction(Pcg32& rng, double half_angle_deg) {
    if (!(half_angle_deg > 0.0) || half_angle_deg > 90.0)
        throw std::invalid_argument("sample_cone_direction: half angle must be in (0, 90]");
    const double cos_min = std::cos(half_angle_deg * M_PI / 180.0);
    const double cos_theta = 1.0 - rng.uniform() * (1.0 - cos_min);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = 2.0 * M_PI * rng.uniform();
    return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

Vec3 sample_isotropic_direction(Pcg32& rng) {
    const double cos_theta = 1.0 - 2.0 * rng.uniform();
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = 2.0 * M_PI * rng.uniform();
    return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

}  // namespace qdwg
