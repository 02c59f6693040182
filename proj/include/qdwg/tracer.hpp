#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qdwg/material.hpp"
#include "qdwg/rng.hpp"
#include "qdwg/scene.hpp"
#include "qdwg/spectrum.hpp"

namespace qdwg {

/// Photon state during transport.
struct Ray {
    Vec3 origin_nm;
    Vec3 dir;  // unit
    double wavelength_nm = 0.0;
    int emitted_count = 0;  // times re-emitted by a dot
    int bounce_count = 0;
};

enum class OutcomeTag { Detector = 0, WGLoss = 1, QDLoss = 2 };

struct Outcome {
    OutcomeTag tag = OutcomeTag::WGLoss;
    bool emitted = false;
};

struct DetectorRecord {
    double wavelength_nm = 0.0;
    double r_norm = 0.0;  // distance from the cross-section centre / half-diagonal
    double p_perp = 0.0;  // transverse momentum fraction, incident direction
    double p_par = 0.0;   // axial momentum fraction, incident direction
    int emitted_count = 0;
    std::uint64_t ray_index = 0;
};

struct TraceConfig {
    std::uint64_t n_rays = 0;
    std::uint64_t master_seed = 0;
    double quantum_yield = 0.6;
    int max_bounces = 10000;
    double absorption_p_max = 1.0;  // plateau of the absorption edge

    void validate() const;
};

/// Wavelength band taxonomy of the detected-photon analysis:
/// 0: lambda <= 650 nm, 1: 650 < lambda <= 800 nm, 2: lambda > 800 nm.
int wavelength_band(double lambda_nm);
inline constexpr int kNumBands = 3;

struct OutcomeTally {
    std::uint64_t n_rays = 0;
    // [tag][emitted] counts; emitted rays are additionally resolved per
    // terminal-wavelength band as [band][tag].
    std::array<std::array<std::uint64_t, 2>, 3> counts{};
    std::array<std::array<std::uint64_t, 3>, kNumBands> emitted_bands{};
    std::uint64_t max_bounce_terminations = 0;
    std::uint64_t internal_errors = 0;

    void record(const Outcome& out, double wavelength_nm);
    void merge(const OutcomeTally& other);
    std::uint64_t total() const;
    std::uint64_t emitted_total() const;
};

/// Per-force emission/absorption handles shared by every dot at that force.
class EmissionSampler {
public:
    EmissionSampler() = default;
    explicit EmissionSampler(const Spectrum& spectrum);
    double total_weight() const { return total_; }
    /// Inverse-CDF draw; u in [0,1).
    double sample(double u) const;

private:
    std::vector<double> lambda_;
    std::vector<double> cum_;
    std::vector<double> density_;
    double total_ = 0.0;
};

struct SegmentOptics {
    double force_nN = 0.0;
    double edge_eV = 0.0;     // absorption edge
    double width_eV = 0.0;    // absorption edge width (Gamma)
    double p_max = 0.0;
    EmissionSampler emitter;  // built only when absorption is enabled
};

/// Immutable per-run context shared across workers.
struct TraceContext {
    const Scene* scene = nullptr;
    QDMaterial material;
    QDConfig base_qd;  // radius and temperature of the emitting dots
    TraceConfig cfg;
    std::vector<SegmentOptics> per_segment;

    const SegmentOptics& optics_for(int segment_index) const {
        return per_segment[static_cast<std::size_t>(segment_index)];
    }
};

/// Builds the per-segment spectra (one distinct force -> one sampler).
/// Throws std::invalid_argument if absorption is enabled and a segment
/// force yields an empty emission spectrum.
TraceContext make_trace_context(const Scene& scene, const QDMaterial& mat, const QDConfig& base_qd,
                                const TraceConfig& cfg);

/// Transport of a single ray to termination.
struct TraceResult {
    Outcome outcome;
    double terminal_wavelength_nm = 0.0;
    bool max_bounces_hit = false;
    std::optional<DetectorRecord> record;
};
TraceResult trace_ray(const TraceContext& ctx, Ray ray, Pcg32& rng);

struct SimulationResult {
    OutcomeTally tally;
    std::vector<DetectorRecord> records;
};

/// Spawns cfg.n_rays at the segment-0 entrance (point source on the axis)
/// with cone-sampled directions at the source wavelength. Per-ray RNG
/// streams are derived from (master_seed, ray_index), and chunk results are
/// merged in a fixed order, so results are bit-identical for any worker
/// count.
SimulationResult run_simulation(const Scene& scene, const QDMaterial& mat, const QDConfig& base_qd,
                                const TraceConfig& cfg, int n_workers = 1);

/// Fixed 50-bin histograms over [0,1] of r_norm / p_perp / p_par for
/// emitted rays, resolved per wavelength band.
struct DetectorHistograms {
    static constexpr int kBins = 50;
    // [quantity][band][bin]; quantities: 0 r_norm, 1 p_perp, 2 p_par.
    std::array<std::array<std::array<std::uint64_t, kBins>, kNumBands>, 3> counts{};
    std::array<std::uint64_t, kNumBands> band_totals{};
};
DetectorHistograms detector_histograms(const std::vector<DetectorRecord>& records);

/// Percentage breakdown of outcomes, overall and wavelength-band-resolved
/// for the emitted subset.
struct OutcomeReport {
    double detector_pct = 0.0;   // never absorbed, reached the detector
    double emission_pct = 0.0;   // emitted at least once, any terminal tag
    double qd_loss_pct = 0.0;    // absorbed, never emitted
    double wg_loss_pct = 0.0;    // escaped, never emitted
    std::array<std::array<double, 3>, kNumBands> emitted_band_pct{};  // [band][tag]
    std::uint64_t first_absorption_failures = 0;  // QDLoss with emitted_count 0
    std::uint64_t emitted_rays = 0;
};
OutcomeReport outcome_report(const OutcomeTally& tally);

}  // namespace qdwg
