#pragma once

#include "wulff/anisotropy.hpp"

#include <span>
#include <vector>

namespace wulff {

// p + p'' must stay above this for the curve to count as strictly convex.
inline constexpr double kConvexityEpsilon = 1e-10;

// Support function samples p(ψ_j) of a convex curve, ψ_j = 2πj/N being the
// outward normal angle, plus the flow time. Plain value type.
struct CurveState {
    std::vector<double> p;
    double time = 0.0;

    [[nodiscard]] int grid_n() const noexcept { return static_cast<int>(p.size()); }
};

[[nodiscard]] CurveState make_state(const TrigSeries& coeffs, int grid_n, double time = 0.0);

// Radius of curvature ρ = p + p''; no validation.
[[nodiscard]] std::vector<double> curvature_radius(const CurveState& state);

// Throws ConvexityLost unless min(p + p'') > kConvexityEpsilon.
void require_convex(const CurveState& state);

[[nodiscard]] std::vector<double> curvature(const CurveState& state);
[[nodiscard]] std::vector<double> anisotropic_curvature(const CurveState& state, const AnisotropyProfile& profile);

[[nodiscard]] double area(const CurveState& state);
[[nodiscard]] double length(const CurveState& state);
// ∫p̃(p + p'')dψ, which avoids dividing by κ.
[[nodiscard]] double anisotropic_length(const CurveState& state, const AnisotropyProfile& profile);
// ∫𝒦 ds evaluated on the state; equals 2π·a0 of p̃ for every convex curve.
[[nodiscard]] double anisotropic_total_curvature(const CurveState& state, const AnisotropyProfile& profile);

[[nodiscard]] PointList reconstruct_points(const CurveState& state);

[[nodiscard]] Point steiner_point(const CurveState& state);
// Support function of the body translated by -steiner_point.
[[nodiscard]] CurveState centered(const CurveState& state);
[[nodiscard]] CurveState translated(const CurveState& state, Point offset);

[[nodiscard]] double polygon_area(std::span<const Point> pts);

void check_grid(const CurveState& state, const AnisotropyProfile& profile);

} // namespace wulff
