#pragma once

#include "wulff/anisotropy.hpp"
#include "wulff/curve.hpp"

#include <cstddef>
#include <span>
#include <string>

namespace wulff {

// Single tolerance shared by every inequality check on unit-scale bodies.
inline constexpr double kInequalityTolerance = 1e-10;

struct InequalityMargins {
    double minkowski = 0.0;   // 𝓛² − 4ÃA
    double wulff_gage = 0.0;  // λ − Ã𝓛/A
    double bonnesen = 0.0;    // deficit − (Ã/4A)(r_out − r_in)²
    double lambda_lo = 0.0;   // λ − 4Ã²/𝓛(0)
    double lambda_hi = 0.0;   // 2Ã·max𝒦 − λ
};

struct DiagnosticsRecord {
    double t = 0.0;
    double aniso_length = 0.0;
    double area = 0.0;
    double lambda = 0.0;
    double deficit = 0.0;
    double k_min = 0.0;
    double k_max = 0.0;
    double k_dev = 0.0;
    double r_in_w = 0.0;
    double r_out_w = 0.0;
    double hausdorff = 0.0;
    InequalityMargins margins;
};

struct RadiusPair {
    double lower = 0.0;
    double upper = 0.0;
};

struct ConvergenceMetrics {
    double k_dev = 0.0;
    double hausdorff = 0.0;
};

// Anisoperimetric deficit 𝓛²/(4AÃ) − 1. Evaluated as −Q(q,q)/A where
// q = p − (𝓛/2Ã)p̃ is the part of p Q-orthogonal to p̃ and Q is the mixed-area
// form, so no 1 − 1 cancellation occurs near the Wulff shape.
[[nodiscard]] double deficit(const CurveState& state, const AnisotropyProfile& profile);

// Steiner-centred surrogate: min/max of p/p̃ after centring curve and Wulff
// shape. The translation is fixed rather than optimised.
[[nodiscard]] RadiusPair wulff_radii(const CurveState& state, const AnisotropyProfile& profile);

[[nodiscard]] double bonnesen_wulff_margin(const CurveState& state, const AnisotropyProfile& profile);

// Circle-gauge bracket ((L − √(L² − 4πA))/2π, (L + √(L² − 4πA))/2π).
[[nodiscard]] RadiusPair classical_bonnesen_radii(const CurveState& state);

// Time-independent bracket (2A(0)/(M₃𝓛(0)), M₃𝓛(0)/2π) for the classical radii.
[[nodiscard]] RadiusPair classical_radius_bounds(const AnisotropyProfile& profile, double area0, double l0);

// ∫p̃𝒦 ds, identically 2Ã.
[[nodiscard]] double wulff_identity_integral(const CurveState& state, const AnisotropyProfile& profile);

// Steiner-centred (l0/2Ã)·∂W̃.
[[nodiscard]] PointList limit_shape_points(const AnisotropyProfile& profile, double l0);

// Two-sided vertex-to-polyline Hausdorff distance between closed polylines.
[[nodiscard]] double hausdorff_distance(std::span<const Point> a, std::span<const Point> b);

[[nodiscard]] ConvergenceMetrics convergence_metrics(const CurveState& state, const AnisotropyProfile& profile,
                                                     double l0);

[[nodiscard]] DiagnosticsRecord make_record(const CurveState& state, const AnisotropyProfile& profile, double l0);

struct EnvelopeOptions {
    double relative = 1e-6;     // η in deficit ≤ deficit(0)·e^{-rt}·(1+η)
    double absolute = 1e-14;    // roundoff floor of the deficit evaluation
    double monotone = 1e-10;    // deficit(t_{i+1}) ≤ deficit(t_i)·(1+monotone)
};

struct EnvelopeReport {
    std::size_t records_checked = 0;
    double rate = 0.0;          // 8Ã²/𝓛(0)²
    double worst_ratio = 0.0;   // max deficit(t)/envelope(t) over records with a positive envelope
    std::string radii_note;
};

// Throws EnvelopeViolated naming the first offending record.
EnvelopeReport decay_envelope_check(std::span<const DiagnosticsRecord> records, const AnisotropyProfile& profile,
                                    const EnvelopeOptions& options = {});

} // namespace wulff
