#include "wulff/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wulff {

namespace {

struct CurvatureStats {
    double k_min = 0.0;
    double k_max = 0.0;
    double diffusion = 0.0; // max p̃φκ²
};

// Evaluates ∂p/∂t with preallocated buffers so the time loop never allocates.
class RhsEvaluator {
public:
    explicit RhsEvaluator(const AnisotropyProfile& profile)
        : profile_(profile), ws_(profile.grid->make_workspace()),
          rho_(static_cast<std::size_t>(profile.grid_n)) {
        // ½Σp̃φh equals Ã up to rounding; using this discrete pairing makes
        // d𝓛/dt vanish exactly in the semi-discrete system.
        double pairing = 0.0;
        for (int j = 0; j < profile.grid_n; ++j) {
            pairing += profile.p_tilde[static_cast<std::size_t>(j)] * profile.phi[static_cast<std::size_t>(j)];
        }
        two_wulff_area_ = pairing * profile.grid->spacing();
    }

    // Fills out with ∂p/∂t and returns λ. Throws ConvexityLost.
    double operator()(std::span<const double> p, std::span<double> out, double time,
                      CurvatureStats* stats = nullptr) {
        profile_.grid->derivative(p, 2, rho_, ws_);
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < rho_.size(); ++j) {
            rho_[j] += p[j];
            lo = std::min(lo, rho_[j]);
        }
        if (!(lo > kConvexityEpsilon)) {
            throw Error(ErrorCode::ConvexityLost,
                        "min (p + p'') = " + std::to_string(lo) + " at t = " + std::to_string(time));
        }
        double lam = 0.0;
        double kmin = std::numeric_limits<double>::infinity();
        double kmax = 0.0;
        double diff = 0.0;
        for (std::size_t j = 0; j < rho_.size(); ++j) {
            const double aniso_k = profile_.phi[j] / rho_[j];
            out[j] = aniso_k; // stash 𝒦 until λ is known
            lam += profile_.p_tilde[j] * profile_.phi[j] * aniso_k;
            kmin = std::min(kmin, aniso_k);
            kmax = std::max(kmax, aniso_k);
            diff = std::max(diff, profile_.p_tilde[j] * aniso_k / rho_[j]);
        }
        lam *= profile_.grid->spacing();
        const double forcing = lam / two_wulff_area_;
        for (std::size_t j = 0; j < rho_.size(); ++j) out[j] = -profile_.p_tilde[j] * (out[j] - forcing);
        if (stats) *stats = {kmin, kmax, diff};
        return lam;
    }

private:
    const AnisotropyProfile& profile_;
    SpectralWorkspace ws_;
    std::vector<double> rho_;
    double two_wulff_area_ = 0.0;
};

class Rk4Stepper {
public:
    explicit Rk4Stepper(const AnisotropyProfile& profile)
        : eval_(profile), k1_(n(profile)), k2_(n(profile)), k3_(n(profile)), k4_(n(profile)),
          stage_(n(profile)) {}

    // Stage 1 is split out so the caller can read curvature statistics of the
    // current state before choosing dt.
    CurvatureStats begin(const CurveState& state) {
        CurvatureStats stats;
        eval_(state.p, k1_, state.time, &stats);
        return stats;
    }

    void finish(CurveState& state, double dt) {
        const std::size_t m = state.p.size();
        for (std::size_t j = 0; j < m; ++j) stage_[j] = state.p[j] + 0.5 * dt * k1_[j];
        eval_(stage_, k2_, state.time + 0.5 * dt);
        for (std::size_t j = 0; j < m; ++j) stage_[j] = state.p[j] + 0.5 * dt * k2_[j];
        eval_(stage_, k3_, state.time + 0.5 * dt);
        for (std::size_t j = 0; j < m; ++j) stage_[j] = state.p[j] + dt * k3_[j];
        eval_(stage_, k4_, state.time + dt);
        for (std::size_t j = 0; j < m; ++j) {
            state.p[j] += dt / 6.0 * (k1_[j] + 2.0 * k2_[j] + 2.0 * k3_[j] + k4_[j]);
        }
        state.time += dt;
    }

private:
    static std::size_t n(const AnisotropyProfile& profile) { return static_cast<std::size_t>(profile.grid_n); }

    RhsEvaluator eval_;
    std::vector<double> k1_, k2_, k3_, k4_, stage_;
};

double dt_from_diffusion(double diffusion, int grid_n, double safety, double dt_max) {
    const double kmax = 0.5 * grid_n;
    return std::min(dt_max, safety / (diffusion * kmax * kmax));
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace

void FlowConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
    if (grid_n < 16 || grid_n % 2 != 0) fail("grid_n must be even and >= 16");
    if (!(t_end > 0.0)) fail("t_end must be positive");
    if (!(safety > 0.0 && safety <= 1.0)) fail("safety must lie in (0, 1]");
    if (!(dt_max > 0.0)) fail("dt_max must be positive");
    if (!(conv_tol > 0.0)) fail("conv_tol must be positive");
    if (record_every < 1) fail("record_every must be >= 1");
    for (double ts : snapshot_times) {
        if (!(ts >= 0.0 && ts <= t_end)) fail("snapshot time " + std::to_string(ts) + " outside [0, t_end]");
    }
}

std::string_view stop_reason_name(StopReason reason) noexcept {
    switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::ReachedEnd: return "reached t_end";
    }
    return "unknown";
}

FlowAborted::FlowAborted(ErrorCode code, const std::string& detail, Trajectory partial, double time)
    : Error(code, detail), partial_(std::move(partial)), time_(time) {}

double lambda(const CurveState& state, const AnisotropyProfile& profile) {
    check_grid(state, profile);
    const auto k = curvature(state);
    double sum = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) sum += profile.p_tilde[j] * profile.phi[j] * profile.phi[j] * k[j];
    return sum * profile.grid->spacing();
}

std::vector<double> rhs(const CurveState& state, const AnisotropyProfile& profile) {
    check_grid(state, profile);
    RhsEvaluator eval(profile);
    std::vector<double> out(state.p.size());
    eval(state.p, out, state.time);
    return out;
}

double area_rate(const CurveState& state, const AnisotropyProfile& profile) {
    const double two_a = 2.0 * profile.wulff_area;
    return -two_a + anisotropic_length(state, profile) * lambda(state, profile) / two_a;
}

double stable_dt(const CurveState& state, const AnisotropyProfile& profile, const FlowConfig& cfg) {
    check_grid(state, profile);
    const auto k = curvature(state);
    double diffusion = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        diffusion = std::max(diffusion, profile.p_tilde[j] * profile.phi[j] * k[j] * k[j]);
    }
    return dt_from_diffusion(diffusion, state.grid_n(), cfg.safety, cfg.dt_max);
}

CurveState step(const CurveState& state, const AnisotropyProfile& profile, double dt) {
    check_grid(state, profile);
    Rk4Stepper stepper(profile);
    CurveState next = state;
    (void)stepper.begin(next);
    stepper.finish(next, dt);
    if (!all_finite(next.p)) throw Error(ErrorCode::NonFiniteState, "non-finite sample after step");
    require_convex(next);
    return next;
}

CurveState integrate_fixed(const CurveState& state, const AnisotropyProfile& profile, double dt, double duration) {
    check_grid(state, profile);
    const auto steps = static_cast<long>(std::llround(duration / dt));
    Rk4Stepper stepper(profile);
    CurveState cur = state;
    for (long i = 0; i < steps; ++i) {
        (void)stepper.begin(cur);
        stepper.finish(cur, dt);
    }
    if (!all_finite(cur.p)) throw Error(ErrorCode::NonFiniteState, "non-finite sample after integration");
    return cur;
}

Trajectory run(const CurveState& initial, const AnisotropyProfile& profile, const FlowConfig& cfg) {
    cfg.validate();
    check_grid(initial, profile);
    if (cfg.grid_n != profile.grid_n) {
        throw Error(ErrorCode::GridMismatch, "flow grid_n differs from profile grid");
    }
    if (!profile.symmetric && !cfg.allow_asymmetric) {
        throw Error(ErrorCode::AsymmetricAnisotropy, "run requires a centrally symmetric anisotropy");
    }
    if (!all_finite(initial.p)) throw Error(ErrorCode::NonFiniteState, "non-finite initial sample");
    require_convex(initial);

    Trajectory traj;
    traj.l0 = anisotropic_length(initial, profile);
    const double target = 2.0 * profile.wulff_area / traj.l0;

    std::vector<double> pending = cfg.snapshot_times;
    std::sort(pending.begin(), pending.end());
    std::size_t next_snap = 0;

    CurveState state = initial;
    auto take_snapshots = [&] {
        while (next_snap < pending.size() && pending[next_snap] <= state.time) {
            traj.snapshots.push_back(state);
            ++next_snap;
        }
    };

    traj.records.push_back(make_record(state, profile, traj.l0));
    take_snapshots();

    Rk4Stepper stepper(profile);
    try {
        for (;;) {
            const auto stats = stepper.begin(state);
            const double k_dev = std::max(stats.k_max - target, target - stats.k_min);
            if (k_dev < cfg.conv_tol) {
                traj.stop = StopReason::Converged;
                break;
            }
            const double remaining = cfg.t_end - state.time;
            if (remaining <= 1e-12 * cfg.t_end) {
                traj.stop = StopReason::ReachedEnd;
                break;
            }
            double dt = dt_from_diffusion(stats.diffusion, cfg.grid_n, cfg.safety, cfg.dt_max);
            double land_on = cfg.t_end;
            if (next_snap < pending.size()) land_on = std::min(land_on, pending[next_snap]);
            const bool lands = state.time + dt >= land_on;
            if (lands) dt = land_on - state.time;

            stepper.finish(state, dt);
            if (lands) state.time = land_on;
            ++traj.steps;

            if (!all_finite(state.p)) {
                throw Error(ErrorCode::NonFiniteState, "non-finite sample at t = " + std::to_string(state.time));
            }
            if (cfg.renormalize) {
                const double factor = traj.l0 / anisotropic_length(state, profile);
                for (double& v : state.p) v *= factor;
            }
            if (traj.steps % static_cast<std::size_t>(cfg.record_every) == 0) {
                traj.records.push_back(make_record(state, profile, traj.l0));
            }
            take_snapshots();
        }
    } catch (const Error& e) {
        traj.final_state = state;
        throw FlowAborted(e.code(), e.detail(), std::move(traj), state.time);
    }

    if (traj.records.back().t < state.time) traj.records.push_back(make_record(state, profile, traj.l0));
    traj.final_state = state;
    return traj;
}

} // namespace wulff
