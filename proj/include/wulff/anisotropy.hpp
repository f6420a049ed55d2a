#pragma once

#include "wulff/spectral.hpp"
#include "wulff/trig_series.hpp"

#include <array>
#include <memory>
#include <vector>

namespace wulff {

using Point = std::array<double, 2>;
using PointList = std::vector<Point>;

// Anything below this on the grid is treated as a non-convex anisotropy.
inline constexpr double kAnisotropyConvexityMargin = 1e-8;

// The anisotropy p̃ together with its Wulff-shape constants, sampled on the
// grid. Immutable after construction.
struct AnisotropyProfile {
    TrigSeries coeffs;
    int grid_n = 0;
    std::vector<double> p_tilde;
    std::vector<double> p_tilde_d1;
    std::vector<double> p_tilde_d2;
    std::vector<double> phi; // p̃'' + p̃
    double wulff_area = 0.0;
    double m1 = 0.0; // min φ
    double m2 = 0.0; // max φ
    bool symmetric = true;
    std::shared_ptr<const SpectralGrid> grid;

    // max 2/p̃, the constant bounding how far r_in and r_out may drift.
    [[nodiscard]] double m3() const noexcept;
};

// Throws NonPositiveSupport, NonConvexAnisotropy, AsymmetricAnisotropy, or
// InvalidArgument for a bad grid.
[[nodiscard]] AnisotropyProfile build_profile(const TrigSeries& coeffs, int grid_n, bool require_symmetry = true);

// Counterclockwise boundary of the Wulff shape, one point per grid angle.
[[nodiscard]] PointList wulff_boundary(const AnisotropyProfile& profile);

// ½∫(p̃² − p̃'²)dψ by trapezoid quadrature (exact below Nyquist).
[[nodiscard]] double wulff_area(const AnisotropyProfile& profile);

} // namespace wulff
