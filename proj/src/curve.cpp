#include "wulff/curve.hpp"

#include "wulff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wulff {

namespace {

const SpectralGrid& grid_for(const CurveState& state) {
    // The cache outlives every caller, so handing out a reference is fine.
    return *SpectralGrid::shared(state.grid_n());
}

} // namespace

void check_grid(const CurveState& state, const AnisotropyProfile& profile) {
    if (state.grid_n() != profile.grid_n) {
        throw Error(ErrorCode::GridMismatch, "curve has " + std::to_string(state.grid_n()) +
                                                 " samples, profile grid has " + std::to_string(profile.grid_n));
    }
}

CurveState make_state(const TrigSeries& coeffs, int grid_n, double time) {
    if (coeffs.max_harmonic() >= grid_n / 2) {
        throw Error(ErrorCode::InvalidArgument, "curve harmonic not below Nyquist for grid " + std::to_string(grid_n));
    }
    return CurveState{coeffs.sample(grid_n, 0), time};
}

std::vector<double> curvature_radius(const CurveState& state) {
    auto rho = grid_for(state).derivative(state.p, 2);
    for (std::size_t j = 0; j < rho.size(); ++j) rho[j] += state.p[j];
    return rho;
}

void require_convex(const CurveState& state) {
    const auto rho = curvature_radius(state);
    const double lo = *std::min_element(rho.begin(), rho.end());
    if (!(lo > kConvexityEpsilon)) {
        throw Error(ErrorCode::ConvexityLost,
                    "min (p + p'') = " + std::to_string(lo) + " at t = " + std::to_string(state.time));
    }
}

std::vector<double> curvature(const CurveState& state) {
    auto rho = curvature_radius(state);
    const double lo = *std::min_element(rho.begin(), rho.end());
    if (!(lo > kConvexityEpsilon)) {
        throw Error(ErrorCode::ConvexityLost,
                    "min (p + p'') = " + std::to_string(lo) + " at t = " + std::to_string(state.time));
    }
    for (double& r : rho) r = 1.0 / r;
    return rho;
}

std::vector<double> anisotropic_curvature(const CurveState& state, const AnisotropyProfile& profile) {
    check_grid(state, profile);
    auto k = curvature(state);
    for (std::size_t j = 0; j < k.size(); ++j) k[j] *= profile.phi[j];
    return k;
}

double area(const CurveState& state) {
    const auto& grid = grid_for(state);
    const auto dp = grid.derivative(state.p, 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < dp.size(); ++j) sum += state.p[j] * state.p[j] - dp[j] * dp[j];
    return 0.5 * sum * grid.spacing();
}

double length(const CurveState& state) {
    return grid_for(state).integrate(state.p);
}

double anisotropic_length(const CurveState& state, const AnisotropyProfile& profile) {
    check_grid(state, profile);
    const auto rho = curvature_radius(state);
    double sum = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) sum += profile.p_tilde[j] * rho[j];
    return sum * profile.grid->spacing();
}

double anisotropic_total_curvature(const CurveState& state, const AnisotropyProfile& profile) {
    const auto k = anisotropic_curvature(state, profile);
    const auto rho = curvature_radius(state);
    double sum = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) sum += k[j] * rho[j];
    return sum * profile.grid->spacing();
}

PointList reconstruct_points(const CurveState& state) {
    require_convex(state);
    const auto& grid = grid_for(state);
    const auto dp = grid.derivative(state.p, 1);
    const auto cs = grid.cosines();
    const auto sn = grid.sines();
    PointList pts(state.p.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        pts[j] = {state.p[j] * cs[j] - dp[j] * sn[j], state.p[j] * sn[j] + dp[j] * cs[j]};
    }
    return pts;
}

Point steiner_point(const CurveState& state) {
    const auto& grid = grid_for(state);
    const auto cs = grid.cosines();
    const auto sn = grid.sines();
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t j = 0; j < state.p.size(); ++j) {
        sx += state.p[j] * cs[j];
        sy += state.p[j] * sn[j];
    }
    const double scale = grid.spacing() / std::numbers::pi;
    return {sx * scale, sy * scale};
}

CurveState translated(const CurveState& state, Point offset) {
    const auto& grid = grid_for(state);
    const auto cs = grid.cosines();
    const auto sn = grid.sines();
    CurveState out = state;
    for (std::size_t j = 0; j < out.p.size(); ++j) out.p[j] += offset[0] * cs[j] + offset[1] * sn[j];
    return out;
}

CurveState centered(const CurveState& state) {
    const auto s = steiner_point(state);
    return translated(state, {-s[0], -s[1]});
}

double polygon_area(std::span<const Point> pts) {
    double twice = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& a = pts[i];
        const auto& b = pts[(i + 1) % pts.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * twice;
}

} // namespace wulff
