#pragma once

#include "wulff/anisotropy.hpp"
#include "wulff/curve.hpp"
#include "wulff/diagnostics.hpp"
#include "wulff/errors.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace wulff {

struct FlowConfig {
    int grid_n = 256;
    double t_end = 100.0;
    double safety = 0.25;
    double dt_max = 1e-3;
    double conv_tol = 1e-5;
    bool renormalize = false;
    int record_every = 1000;
    bool allow_asymmetric = false;
    std::vector<double> snapshot_times;

    // Throws InvalidArgument.
    void validate() const;
};

enum class StopReason { Converged, ReachedEnd };

[[nodiscard]] std::string_view stop_reason_name(StopReason reason) noexcept;

struct Trajectory {
    std::vector<DiagnosticsRecord> records;
    std::vector<CurveState> snapshots;
    CurveState final_state;
    double l0 = 0.0;
    std::size_t steps = 0;
    StopReason stop = StopReason::ReachedEnd;
};

// Raised by run() when the integration cannot continue; carries everything
// recorded up to the failure.
class FlowAborted : public Error {
public:
    FlowAborted(ErrorCode code, const std::string& detail, Trajectory partial, double time);

    [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }
    [[nodiscard]] double time() const noexcept { return time_; }

private:
    Trajectory partial_;
    double time_;
};

// λ = ∫p̃𝒦²ds = ∫p̃φ²κ dψ.
[[nodiscard]] double lambda(const CurveState& state, const AnisotropyProfile& profile);

// ∂p/∂t = −p̃(𝒦 − λ/2Ã).
[[nodiscard]] std::vector<double> rhs(const CurveState& state, const AnisotropyProfile& profile);

// dA/dt = −2Ã + 𝓛λ/2Ã.
[[nodiscard]] double area_rate(const CurveState& state, const AnisotropyProfile& profile);

// min(dt_max, safety/(D·(N/2)²)), D = max p̃φκ².
[[nodiscard]] double stable_dt(const CurveState& state, const AnisotropyProfile& profile, const FlowConfig& cfg);

// One classical RK4 step with λ re-evaluated in every stage.
[[nodiscard]] CurveState step(const CurveState& state, const AnisotropyProfile& profile, double dt);

// Fixed-step RK4 over [state.time, state.time + duration] in round(duration/dt) steps.
[[nodiscard]] CurveState integrate_fixed(const CurveState& state, const AnisotropyProfile& profile, double dt,
                                         double duration);

[[nodiscard]] Trajectory run(const CurveState& initial, const AnisotropyProfile& profile, const FlowConfig& cfg);

} // namespace wulff
