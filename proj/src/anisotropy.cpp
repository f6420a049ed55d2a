#include "wulff/anisotropy.hpp"

#include "wulff/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

namespace wulff {

double AnisotropyProfile::m3() const noexcept {
    return 2.0 / *std::min_element(p_tilde.begin(), p_tilde.end());
}

AnisotropyProfile build_profile(const TrigSeries& coeffs, int grid_n, bool require_symmetry) {
    if (grid_n < 16 || grid_n % 2 != 0) {
        throw Error(ErrorCode::InvalidArgument, "grid_n must be even and >= 16, got " + std::to_string(grid_n));
    }
    for (const auto& h : coeffs.terms) {
        if (h.k < 1) throw Error(ErrorCode::InvalidArgument, "harmonic index must be >= 1");
        if (!std::isfinite(h.cos_coeff) || !std::isfinite(h.sin_coeff)) {
            throw Error(ErrorCode::InvalidArgument, "non-finite anisotropy coefficient");
        }
    }
    if (!std::isfinite(coeffs.a0)) throw Error(ErrorCode::InvalidArgument, "non-finite anisotropy coefficient");
    if (coeffs.max_harmonic() >= grid_n / 2) {
        throw Error(ErrorCode::InvalidArgument,
                    "harmonic " + std::to_string(coeffs.max_harmonic()) + " not below Nyquist for grid " +
                        std::to_string(grid_n));
    }

    AnisotropyProfile prof;
    prof.coeffs = coeffs;
    prof.grid_n = grid_n;
    prof.symmetric = coeffs.centrally_symmetric();
    if (!prof.symmetric) {
        if (require_symmetry) {
            throw Error(ErrorCode::AsymmetricAnisotropy, "odd harmonics present; p̃(ψ+π) != p̃(ψ)");
        }
        std::clog << "warning: asymmetric anisotropy; the Wulff-Gage inequality may fail\n";
    }

    prof.p_tilde = coeffs.sample(grid_n, 0);
    prof.p_tilde_d1 = coeffs.sample(grid_n, 1);
    prof.p_tilde_d2 = coeffs.sample(grid_n, 2);

    const double min_support = *std::min_element(prof.p_tilde.begin(), prof.p_tilde.end());
    if (min_support <= 0.0) {
        throw Error(ErrorCode::NonPositiveSupport, "min p̃ = " + std::to_string(min_support));
    }

    prof.phi.resize(prof.p_tilde.size());
    for (std::size_t j = 0; j < prof.phi.size(); ++j) prof.phi[j] = prof.p_tilde[j] + prof.p_tilde_d2[j];
    const auto [lo, hi] = std::minmax_element(prof.phi.begin(), prof.phi.end());
    prof.m1 = *lo;
    prof.m2 = *hi;
    if (prof.m1 < kAnisotropyConvexityMargin) {
        throw Error(ErrorCode::NonConvexAnisotropy, "min (p̃'' + p̃) = " + std::to_string(prof.m1));
    }

    prof.grid = SpectralGrid::shared(grid_n);
    prof.wulff_area = wulff_area(prof);
    return prof;
}

double wulff_area(const AnisotropyProfile& profile) {
    double sum = 0.0;
    for (std::size_t j = 0; j < profile.p_tilde.size(); ++j) {
        sum += profile.p_tilde[j] * profile.p_tilde[j] - profile.p_tilde_d1[j] * profile.p_tilde_d1[j];
    }
    return 0.5 * sum * profile.grid->spacing();
}

PointList wulff_boundary(const AnisotropyProfile& profile) {
    const auto cs = profile.grid->cosines();
    const auto sn = profile.grid->sines();
    PointList pts(profile.p_tilde.size());
    for (std::size_t j = 0; j < pts.size(); ++j) {
        const double p = profile.p_tilde[j];
        const double dp = profile.p_tilde_d1[j];
        pts[j] = {p * cs[j] - dp * sn[j], p * sn[j] + dp * cs[j]};
    }
    return pts;
}

} // namespace wulff
