#include "qdwg/tracer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qdwg/constants.hpp"
#include "qdwg/fermi.hpp"
#include "qdwg/optics.hpp"
#include "qdwg/qd_spectrum.hpp"

namespace qdwg {

void TraceConfig::validate() const {
    if (n_rays < 1) throw std::invalid_argument("trace.n_rays: must be at least 1");
    if (quantum_yield < 0.0 || quantum_yield > 1.0)
        throw std::invalid_argument("trace.quantum_yield: must be in [0, 1]");
    if (max_bounces < 1) throw std::invalid_argument("trace.max_bounces: must be positive");
    if (absorption_p_max < 0.0 || absorption_p_max > 1.0)
        throw std::invalid_argument("trace.absorption_p_max: must be in [0, 1]");
}

int wavelength_band(double lambda_nm) {
    if (lambda_nm <= 650.0) return 0;
    if (lambda_nm <= 800.0) return 1;
    return 2;
}

void OutcomeTally::record(const Outcome& out, double wavelength_nm) {
    ++n_rays;
    const auto tag = static_cast<std::size_t>(out.tag);
    ++counts[tag][out.emitted ? 1 : 0];
    if (out.emitted) ++emitted_bands[static_cast<std::size_t>(wavelength_band(wavelength_nm))][tag];
}

void OutcomeTally::merge(const OutcomeTally& other) {
    n_rays += other.n_rays;
    for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t e = 0; e < 2; ++e) counts[t][e] += other.counts[t][e];
    for (std::size_t b = 0; b < kNumBands; ++b)
        for (std::size_t t = 0; t < 3; ++t) emitted_bands[b][t] += other.emitted_bands[b][t];
    max_bounce_terminations += other.max_bounce_terminations;
    internal_errors += other.internal_errors;
}

std::uint64_t OutcomeTally::total() const {
    std::uint64_t s = 0;
    for (const auto& row : counts)
        for (std::uint64_t c : row) s += c;
    return s;
}

std::uint64_t OutcomeTally::emitted_total() const {
    std::uint64_t s = 0;
    for (const auto& row : counts) s += row[1];
    return s;
}

EmissionSampler::EmissionSampler(const Spectrum& spectrum) {
    spectrum.validate();
    if (spectrum.size() < 2)
        throw std::invalid_argument("EmissionSampler: need at least two grid points");
    lambda_ = spectrum.wavelengths;
    density_ = spectrum.intensities;
    cum_.resize(lambda_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < lambda_.size(); ++i)
        cum_[i] = cum_[i - 1] +
                  0.5 * (density_[i] + density_[i - 1]) * (lambda_[i] - lambda_[i - 1]);
    total_ = cum_.back();
}

double EmissionSampler::sample(double u) const {
    if (total_ <= 0.0) throw std::logic_error("EmissionSampler: empty spectrum");
    const double target = u * total_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    std::size_t i = it == cum_.begin() ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    if (i >= lambda_.size() - 1) i = lambda_.size() - 2;
    const double s = target - cum_[i];
    const double h = lambda_[i + 1] - lambda_[i];
    const double y0 = density_[i];
    const double y1 = density_[i + 1];
    const double slope = (y1 - y0) / h;
    // Solve y0 t + slope t^2 / 2 = s inside the cell.
    double t;
    if (std::abs(slope) * h < 1e-12 * std::max(y0, 1e-300)) {
        t = y0 > 0.0 ? s / y0 : 0.0;
    } else {
        const double disc = y0 * y0 + 2.0 * slope * s;
        t = (-y0 + std::sqrt(std::max(disc, 0.0))) / slope;
    }
    return lambda_[i] + std::clamp(t, 0.0, h);
}

namespace {

// Emission-band wavelength grid adapted to the force: covers the piezo
// window and the Lorentzian core out to 50 half-widths.
Spectrum emission_grid_for(const QDConfig& cfg, const QDMaterial& mat) {
    const double e_qd = effective_energy_eV(cfg, mat);
    const CarrierState st = carrier_state(cfg, mat);
    const double kt = kT_eV(cfg.temperature_K);
    const double half = 0.5 * mat.Gamma;
    const double mu_below = (st.mu_c == kEmptyBand) ? 0.0 : std::max(-st.mu_c, 0.0);
    const double e_lo = std::max(0.15, e_qd - (mu_below + 15.0 * kt + 50.0 * half));
    const double e_hi = e_qd + std::max(st.mu_c, 0.0) + 15.0 * kt + 50.0 * half;
    return make_wavelength_grid(energy_to_wavelength_nm(e_hi), energy_to_wavelength_nm(e_lo), 4096);
}

constexpr double kSpawnOffset = 1e-3;   // nm inside the entrance face
constexpr double kSurfaceLift = 1e-6;   // nm outside a sphere on re-emission

}  // namespace

TraceContext make_trace_context(const Scene& scene, const QDMaterial& mat, const QDConfig& base_qd,
                                const TraceConfig& cfg) {
    cfg.validate();
    base_qd.validate();
    mat.validate();
    TraceContext ctx;
    ctx.scene = &scene;
    ctx.material = mat;
    ctx.base_qd = base_qd;
    ctx.cfg = cfg;

    std::map<double, SegmentOptics> by_force;
    for (const Segment& seg : scene.segments()) {
        if (by_force.count(seg.force_nN)) continue;
        QDConfig qc = base_qd;
        qc.force_nN = seg.force_nN;
        SegmentOptics so;
        so.force_nN = seg.force_nN;
        so.edge_eV = effective_energy_eV(qc, mat);
        so.width_eV = mat.Gamma;
        so.p_max = cfg.absorption_p_max;
        if (cfg.absorption_p_max > 0.0 && !scene.qds().empty()) {
            const Spectrum em = emission_spectrum(qc, mat, emission_grid_for(qc, mat));
            so.emitter = EmissionSampler(em);
            if (so.emitter.total_weight() <= 0.0)
                throw std::invalid_argument(
                    "trace: segment force " + std::to_string(seg.force_nN) +
                    " nN yields an empty emission spectrum; dots cannot re-emit");
        }
        by_force.emplace(seg.force_nN, std::move(so));
    }
    for (const Segment& seg : scene.segments()) ctx.per_segment.push_back(by_force[seg.force_nN]);
    return ctx;
}

TraceResult trace_ray(const TraceContext& ctx, Ray ray, Pcg32& rng) {
    const Scene& scene = *ctx.scene;
    const SceneConfig& sc = scene.config();
    Vec3 pos = ray.origin_nm;
    Vec3 dir = ray.dir;
    double lambda = ray.wavelength_nm;
    int emitted = ray.emitted_count;
    int bounces = ray.bounce_count;
    Medium medium = Medium::Core;
    int qd = -1;

    auto finish = [&](OutcomeTag tag) {
        TraceResult res;
        res.outcome = Outcome{tag, emitted > 0};
        res.terminal_wavelength_nm = lambda;
        return res;
    };

    while (true) {
        const auto hit = scene.next_interface(pos, dir, medium, qd);
        if (!hit) {
            // Geometry inconsistency: a ray inside the guide must meet an
            // interface. Abort with a diagnostic; the caller counts it.
            throw std::logic_error("trace_ray: no intersection from inside the scene");
        }
        if (++bounces > ctx.cfg.max_bounces) {
            TraceResult res = finish(OutcomeTag::WGLoss);
            res.max_bounces_hit = true;
            return res;
        }
        pos = hit->point;
        const double cos1 = std::clamp(-dot(dir, hit->normal), 0.0, 1.0);
        const double theta1 = std::acos(cos1);

        switch (hit->kind) {
            case SurfaceKind::Sphere: {
                const QDSphere& dot_s = scene.qds()[static_cast<std::size_t>(hit->qd_index)];
                if (medium == Medium::Core) {
                    const SegmentOptics& so = ctx.optics_for(dot_s.segment_index);
                    const double p_abs =
                        so.p_max > 0.0
                            ? absorption_probability(lambda, so.edge_eV, so.width_eV, so.p_max)
                            : 0.0;
                    if (p_abs > 0.0 && rng.uniform() < p_abs) {
                        if (rng.uniform() < ctx.cfg.quantum_yield) {
                            // Re-emission: isotropic direction, wavelength from
                            // the segment spectrum, restart on the sphere surface.
                            dir = sample_isotropic_direction(rng);
                            lambda = so.emitter.sample(rng.uniform());
                            pos = dot_s.center_nm + (dot_s.radius_nm + kSurfaceLift) * dir;
                            ++emitted;
                            medium = Medium::Core;
                            qd = -1;
                            continue;
                        }
                        return finish(OutcomeTag::QDLoss);
                    }
                    // Optical interface core -> dot.
                    const double refl = fresnel_reflectance(theta1, sc.n_core, dot_s.n_refr);
                    if (rng.uniform() < refl) {
                        dir = reflect(dir, hit->normal);
                    } else {
                        dir = *refract(dir, hit->normal, sc.n_core, dot_s.n_refr);
                        medium = Medium::Dot;
                        qd = hit->qd_index;
                    }
                } else {
                    // Leaving the dot; TIR possible (denser to lighter).
                    const double refl = fresnel_reflectance(theta1, dot_s.n_refr, sc.n_core);
                    if (rng.uniform() < refl) {
                        dir = reflect(dir, hit->normal);
                    } else {
                        dir = *refract(dir, hit->normal, dot_s.n_refr, sc.n_core);
                        medium = Medium::Core;
                        qd = -1;
                    }
                }
                break;
            }
            case SurfaceKind::CoreSide: {
                const bool leaving = medium == Medium::Core;
                const double n1 = leaving ? sc.n_core : sc.n_clad;
                const double n2 = leaving ? sc.n_clad : sc.n_core;
                const double refl = fresnel_reflectance(theta1, n1, n2);
                if (rng.uniform() < refl) {
                    dir = reflect(dir, hit->normal);
                } else {
                    dir = *refract(dir, hit->normal, n1, n2);
                    medium = leaving ? Medium::Cladding : Medium::Core;
                }
                break;
            }
            case SurfaceKind::CoreEntrance: {
                // End faces couple straight to the outside medium: total
                // internal reflection is honoured, partial reflection is not.
                auto t = refract(dir, hit->normal, sc.n_core, sc.n_outside);
                if (!t) {
                    dir = reflect(dir, hit->normal);
                    break;
                }
                return finish(OutcomeTag::WGLoss);
            }
            case SurfaceKind::Detector: {
                auto t = refract(dir, hit->normal, sc.n_core, sc.n_outside);
                if (!t) {
                    dir = reflect(dir, hit->normal);
                    break;
                }
                DetectorRecord rec;
                rec.wavelength_nm = lambda;
                const double hw = scene.half_width_nm();
                rec.r_norm = std::sqrt(pos.x * pos.x + pos.y * pos.y) / (hw * std::sqrt(2.0));
                rec.p_par = dir.z;  // incident direction, before exit refraction
                rec.p_perp = std::sqrt(std::max(0.0, 1.0 - dir.z * dir.z));
                rec.emitted_count = emitted;
                TraceResult res = finish(OutcomeTag::Detector);
                res.record = rec;
                return res;
            }
            case SurfaceKind::CladOuterSide:
            case SurfaceKind::CladEnd: {
                const double refl = fresnel_reflectance(theta1, sc.n_clad, sc.n_outside);
                if (rng.uniform() < refl) {
                    dir = reflect(dir, hit->normal);
                    break;
                }
                return finish(OutcomeTag::WGLoss);
            }
        }
    }
}

SimulationResult run_simulation(const Scene& scene, const QDMaterial& mat, const QDConfig& base_qd,
                                const TraceConfig& cfg, int n_workers) {
    const TraceContext ctx = make_trace_context(scene, mat, base_qd, cfg);
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t n_chunks = (cfg.n_rays + kChunk - 1) / kChunk;
    std::vector<SimulationResult> chunks(n_chunks);

    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (std::uint64_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) {
            SimulationResult& res = chunks[c];
            const std::uint64_t begin = c * kChunk;
            const std::uint64_t end = std::min(cfg.n_rays, begin + kChunk);
            for (std::uint64_t i = begin; i < end; ++i) {
                Pcg32 rng(cfg.master_seed, i);
                Ray ray;
                ray.origin_nm = {0.0, 0.0, kSpawnOffset};
                ray.dir = sample_cone_direction(rng, scene.config().cone_half_angle_deg);
                ray.wavelength_nm = scene.config().source_wavelength_nm;
                try {
                    TraceResult tr = trace_ray(ctx, ray, rng);
                    res.tally.record(tr.outcome, tr.terminal_wavelength_nm);
                    if (tr.max_bounces_hit) ++res.tally.max_bounce_terminations;
                    if (tr.record) {
                        tr.record->ray_index = i;
                        res.records.push_back(*tr.record);
                    }
                } catch (const std::logic_error&) {
                    ++res.tally.internal_errors;
                    res.tally.record(Outcome{OutcomeTag::WGLoss, false}, 0.0);
                }
            }
        }
    };

    const int workers = std::max(1, std::min<int>(n_workers, static_cast<int>(n_chunks)));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SimulationResult out;
    for (auto& c : chunks) {
        out.tally.merge(c.tally);
        out.records.insert(out.records.end(), c.records.begin(), c.records.end());
    }
    return out;
}

DetectorHistograms detector_histograms(const std::vector<DetectorRecord>& records) {
    DetectorHistograms h;
    auto bin_of = [](double v) {
        int b = static_cast<int>(std::floor(v * DetectorHistograms::kBins));
        return std::clamp(b, 0, DetectorHistograms::kBins - 1);
    };
    for (const DetectorRecord& r : records) {
        if (r.emitted_count <= 0) continue;
        const auto band = static_cast<std::size_t>(wavelength_band(r.wavelength_nm));
        ++h.band_totals[band];
        ++h.counts[0][band][static_cast<std::size_t>(bin_of(r.r_norm))];
        ++h.counts[1][band][static_cast<std::size_t>(bin_of(r.p_perp))];
        ++h.counts[2][band][static_cast<std::size_t>(bin_of(r.p_par))];
    }
    return h;
}

OutcomeReport outcome_report(const OutcomeTally& tally) {
    OutcomeReport rep;
    const double n = static_cast<double>(tally.n_rays);
    if (n == 0.0) return rep;
    const auto det = static_cast<std::size_t>(OutcomeTag::Detector);
    const auto wg = static_cast<std::size_t>(OutcomeTag::WGLoss);
    const auto qd = static_cast<std::size_t>(OutcomeTag::QDLoss);
    rep.detector_pct = 100.0 * static_cast<double>(tally.counts[det][0]) / n;
    rep.wg_loss_pct = 100.0 * static_cast<double>(tally.counts[wg][0]) / n;
    rep.qd_loss_pct = 100.0 * static_cast<double>(tally.counts[qd][0]) / n;
    rep.emission_pct = 100.0 * static_cast<double>(tally.emitted_total()) / n;
    for (std::size_t b = 0; b < kNumBands; ++b)
        for (std::size_t t = 0; t < 3; ++t)
            rep.emitted_band_pct[b][t] = 100.0 * static_cast<double>(tally.emitted_bands[b][t]) / n;
    rep.first_absorption_failures = tally.counts[qd][0];
    rep.emitted_rays = tally.emitted_total();
    return rep;
}

}  // namespace qdwg
