#include "wulff/audit.hpp"

#include "wulff/diagnostics.hpp"
#include "wulff/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wulff {

CurveState random_convex_state(std::mt19937_64& rng, const TrigSeries& base, int grid_n,
                               const RandomCurveOptions& options) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> strength(0.0, 1.0);
    const int kmax = std::min(options.max_harmonic, grid_n / 2 - 1);
    const auto base_samples = base.sample(grid_n);
    for (;;) {
        TrigSeries coeffs;
        coeffs.terms.push_back({1, options.translation * unit(rng), options.translation * unit(rng)});
        double scale = options.amplitude * strength(rng);
        for (int k = 2; k <= kmax; ++k) {
            const double c = scale / (k * k - 1.0);
            coeffs.terms.push_back({k, c * unit(rng), c * unit(rng)});
            scale *= options.decay;
        }
        auto state = make_state(coeffs, grid_n);
        for (std::size_t j = 0; j < state.p.size(); ++j) state.p[j] += base_samples[j];
        const auto rho = curvature_radius(state);
        if (*std::min_element(rho.begin(), rho.end()) >= options.convexity_margin) return state;
    }
}

namespace {

void tally(InequalityTally& t, double margin) {
    t.worst = std::min(t.worst, margin);
    if (margin < -kInequalityTolerance) ++t.violations;
}

} // namespace

AuditReport run_inequality_audit(const AnisotropyProfile& profile, std::size_t trials, std::uint64_t seed,
                                 const RandomCurveOptions& options) {
    AuditReport report;
    report.trials = trials;
    report.symmetric_checks = profile.symmetric;
    for (auto* t : {&report.minkowski, &report.wulff_gage, &report.identity, &report.bonnesen}) {
        t->worst = std::numeric_limits<double>::infinity();
    }

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto state = random_convex_state(rng, profile.coeffs, profile.grid_n, options);
        const double wa = profile.wulff_area;
        const double a = area(state);
        const double aniso_len = anisotropic_length(state, profile);

        tally(report.minkowski, 4.0 * wa * a * deficit(state, profile));
        tally(report.identity, -std::abs(wulff_identity_integral(state, profile) - 2.0 * wa));
        if (profile.symmetric) {
            tally(report.wulff_gage, lambda(state, profile) - wa * aniso_len / a);
            tally(report.bonnesen, bonnesen_wulff_margin(state, profile));
        }
    }
    if (!profile.symmetric) report.wulff_gage.worst = report.bonnesen.worst = 0.0;
    return report;
}

} // namespace wulff
