#pragma once

#include "wulff/anisotropy.hpp"
#include "wulff/curve.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace wulff {

// Random convex curves around a base support function b:
//   p = b + translation + Σ_{k=2}^{K} c_k·(u_k cos kψ + v_k sin kψ),
//   c_k = s·amplitude·decay^{k-2}/(k²-1),
// with u_k, v_k uniform in [-1, 1] and one strength s uniform in [0, 1] per draw,
// so both near-homothetic and strongly distorted curves occur. Draws with
// min(p + p'') below convexity_margin are rejected and redrawn.
struct RandomCurveOptions {
    int max_harmonic = 8;
    double amplitude = 0.6;
    double decay = 0.7;
    double translation = 0.5;
    double convexity_margin = 0.05;
};

[[nodiscard]] CurveState random_convex_state(std::mt19937_64& rng, const TrigSeries& base, int grid_n,
                                             const RandomCurveOptions& options = {});

struct InequalityTally {
    std::size_t violations = 0;
    double worst = 0.0; // smallest margin seen (most negative is worst)
};

struct AuditReport {
    std::size_t trials = 0;
    bool symmetric_checks = true; // Wulff-Gage and Bonnesen need a symmetric p̃
    InequalityTally minkowski;
    InequalityTally wulff_gage;
    InequalityTally identity; // margin is −|∫p̃𝒦ds − 2Ã|
    InequalityTally bonnesen;

    [[nodiscard]] std::size_t total_violations() const noexcept {
        return minkowski.violations + wulff_gage.violations + identity.violations + bonnesen.violations;
    }
};

// Random curves are drawn around the Wulff shape of the profile itself.
[[nodiscard]] AuditReport run_inequality_audit(const AnisotropyProfile& profile, std::size_t trials,
                                               std::uint64_t seed, const RandomCurveOptions& options = {});

} // namespace wulff
