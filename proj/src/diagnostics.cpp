#include "wulff/diagnostics.hpp"

#include "wulff/errors.hpp"
#include "wulff/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace wulff {

namespace {

// Q(f,f) = ½∫(f² − f'²)dψ, the mixed-area quadratic form (A = Q(p,p)).
double mixed_area(std::span<const double> f, const SpectralGrid& grid) {
    const auto df = grid.derivative(f, 1);
    double sum = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) sum += f[j] * f[j] - df[j] * df[j];
    return 0.5 * sum * grid.spacing();
}

CurveState wulff_state(const AnisotropyProfile& profile) {
    return CurveState{profile.p_tilde, 0.0};
}

double point_segment_distance(const Point& q, const Point& a, const Point& b) {
    const double ex = b[0] - a[0];
    const double ey = b[1] - a[1];
    const double len2 = ex * ex + ey * ey;
    double s = 0.0;
    if (len2 > 0.0) s = std::clamp(((q[0] - a[0]) * ex + (q[1] - a[1]) * ey) / len2, 0.0, 1.0);
    const double dx = q[0] - (a[0] + s * ex);
    const double dy = q[1] - (a[1] + s * ey);
    return std::hypot(dx, dy);
}

double directed_hausdorff(std::span<const Point> from, std::span<const Point> to) {
    double worst = 0.0;
    for (const auto& q : from) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < to.size(); ++i) {
            best = std::min(best, point_segment_distance(q, to[i], to[(i + 1) % to.size()]));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double deficit(const CurveState& state, const AnisotropyProfile& profile) {
    check_grid(state, profile);
    const double scale = anisotropic_length(state, profile) / (2.0 * profile.wulff_area);
    std::vector<double> q(state.p.size());
    for (std::size_t j = 0; j < q.size(); ++j) q[j] = state.p[j] - scale * profile.p_tilde[j];
    return -mixed_area(q, *profile.grid) / area(state);
}

RadiusPair wulff_radii(const CurveState& state, const AnisotropyProfile& profile) {
    check_grid(state, profile);
    const auto body = centered(state);
    const auto gauge = centered(wulff_state(profile));
    RadiusPair out{std::numeric_limits<double>::infinity(), 0.0};
    for (std::size_t j = 0; j < body.p.size(); ++j) {
        const double ratio = body.p[j] / gauge.p[j];
        out.lower = std::min(out.lower, ratio);
        out.upper = std::max(out.upper, ratio);
    }
    return out;
}

double bonnesen_wulff_margin(const CurveState& state, const AnisotropyProfile& profile) {
    const auto radii = wulff_radii(state, profile);
    const double a = area(state);
    const double gap = radii.upper - radii.lower;
    return deficit(state, profile) - profile.wulff_area / (4.0 * a) * gap * gap;
}

RadiusPair classical_bonnesen_radii(const CurveState& state) {
    const double len = length(state);
    const double a = area(state);
    double disc = len * len - 4.0 * std::numbers::pi * a;
    if (disc < -1e-12) {
        std::ostringstream msg;
        msg << "L^2 - 4πA = " << disc;
        throw Error(ErrorCode::NegativeDiscriminant, msg.str());
    }
    disc = std::max(disc, 0.0);
    const double root = std::sqrt(disc);
    return {(len - root) / (2.0 * std::numbers::pi), (len + root) / (2.0 * std::numbers::pi)};
}

RadiusPair classical_radius_bounds(const AnisotropyProfile& profile, double area0, double l0) {
    const double m3 = profile.m3();
    return {2.0 * area0 / (m3 * l0), m3 * l0 / (2.0 * std::numbers::pi)};
}

double wulff_identity_integral(const CurveState& state, const AnisotropyProfile& profile) {
    const auto k = anisotropic_curvature(state, profile);
    const auto rho = curvature_radius(state);
    double sum = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) sum += profile.p_tilde[j] * k[j] * rho[j];
    return sum * profile.grid->spacing();
}

PointList limit_shape_points(const AnisotropyProfile& profile, double l0) {
    auto limit = wulff_state(profile);
    const double scale = l0 / (2.0 * profile.wulff_area);
    for (double& v : limit.p) v *= scale;
    return reconstruct_points(centered(limit));
}

double hausdorff_distance(std::span<const Point> a, std::span<const Point> b) {
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

ConvergenceMetrics convergence_metrics(const CurveState& state, const AnisotropyProfile& profile, double l0) {
    const auto k = anisotropic_curvature(state, profile);
    const double target = 2.0 * profile.wulff_area / l0;
    ConvergenceMetrics out;
    for (double v : k) out.k_dev = std::max(out.k_dev, std::abs(v - target));
    const auto curve_pts = reconstruct_points(centered(state));
    out.hausdorff = hausdorff_distance(curve_pts, limit_shape_points(profile, l0));
    return out;
}

DiagnosticsRecord make_record(const CurveState& state, const AnisotropyProfile& profile, double l0) {
    DiagnosticsRecord rec;
    rec.t = state.time;
    rec.aniso_length = anisotropic_length(state, profile);
    rec.area = area(state);
    rec.lambda = lambda(state, profile);
    rec.deficit = deficit(state, profile);

    const auto k = anisotropic_curvature(state, profile);
    const auto [lo, hi] = std::minmax_element(k.begin(), k.end());
    rec.k_min = *lo;
    rec.k_max = *hi;
    const auto metrics = convergence_metrics(state, profile, l0);
    rec.k_dev = metrics.k_dev;
    rec.hausdorff = metrics.hausdorff;

    const auto radii = wulff_radii(state, profile);
    rec.r_in_w = radii.lower;
    rec.r_out_w = radii.upper;

    const double wa = profile.wulff_area;
    const double gap = radii.upper - radii.lower;
    rec.margins.minkowski = 4.0 * wa * rec.area * rec.deficit;
    rec.margins.wulff_gage = rec.lambda - wa * rec.aniso_length / rec.area;
    rec.margins.bonnesen = rec.deficit - wa / (4.0 * rec.area) * gap * gap;
    rec.margins.lambda_lo = rec.lambda - 4.0 * wa * wa / l0;
    rec.margins.lambda_hi = 2.0 * wa * rec.k_max - rec.lambda;
    return rec;
}

EnvelopeReport decay_envelope_check(std::span<const DiagnosticsRecord> records, const AnisotropyProfile& profile,
                                    const EnvelopeOptions& options) {
    if (records.size() < 2) throw Error(ErrorCode::InvalidArgument, "envelope check needs at least two records");
    EnvelopeReport report;
    const auto& first = records.front();
    const double l0 = first.aniso_length;
    report.rate = 8.0 * profile.wulff_area * profile.wulff_area / (l0 * l0);
    report.radii_note = "wulff radii: Steiner-centred surrogate (translation not optimised)";

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        const double envelope = first.deficit * std::exp(-report.rate * (rec.t - first.t));
        const double bound = envelope * (1.0 + options.relative) + options.absolute;
        if (envelope > 0.0) report.worst_ratio = std::max(report.worst_ratio, rec.deficit / envelope);
        if (rec.deficit > bound) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "record " << i << " at t = " << rec.t << ": deficit " << rec.deficit << " exceeds envelope "
                << envelope;
            throw Error(ErrorCode::EnvelopeViolated, msg.str());
        }
        if (i > 0) {
            const double prev = records[i - 1].deficit;
            if (rec.deficit > prev * (1.0 + options.monotone) + options.absolute) {
                std::ostringstream msg;
                msg.precision(12);
                msg << "record " << i << " at t = " << rec.t << ": deficit increased from " << prev << " to "
                    << rec.deficit;
                throw Error(ErrorCode::EnvelopeViolated, msg.str());
            }
        }
        ++report.records_checked;
    }
    return report;
}

} // namespace wulff
