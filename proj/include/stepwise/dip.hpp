// dip.hpp — Discrete isothermal process: exact-Gibbs bookkeeping of heat and
// entropy, and the analytic entropy-generation formulas.

#pragma once

#include <optional>
#include <vector>

#include "stepwise/core_model.hpp"

namespace stepwise {

// Moments of the per-step tuning speeds v_m^(j) = eps_m^(j)/tau.  The bar is
// an average over levels, the angle brackets an average over steps:
//   v_bar_mean    = < mean_m v >
//   v_sq_mean     = < mean_m v^2 >
//   v_bar_sq_mean = < (mean_m v)^2 >
struct SpeedMoments {
    double v_bar_mean{0.0};
    double v_sq_mean{0.0};
    double v_bar_sq_mean{0.0};
};

SpeedMoments tuning_speed_moments(const EnergyLevelSchedule& schedule);

struct TrajectoryPoint {
    Eigen::VectorXd energies;
    ThermalState state;
};

struct DipResult {
    double delta_Q{0.0};      // heat absorbed by the system
    double delta_S{0.0};      // Shannon entropy change
    double s_ir{0.0};         // irreversible entropy generation, delta_S - beta*delta_Q
    double theta{0.0};        // endpoint factor beta^2 * mean(Delta)^2 / 2
    std::optional<double> xi; // control-scheme factor; empty when mean(Delta) = 0
    SpeedMoments moments{};
    std::vector<TrajectoryPoint> trajectory;  // N+1 entries, entry 0 is the initial state
};

/// Runs the process with ideal full thermalization: every dwell ends in the
/// Gibbs state of the current spectrum.  No high-temperature expansion; the
/// heat is summed step by step and the entropies are evaluated exactly.
DipResult run_dip_exact(const EnergyLevelSchedule& schedule, const BathSpec& bath,
                        const ThermalState& initial_state);

/// Same, starting from the Gibbs state of the initial spectrum.
DipResult run_dip_exact(const EnergyLevelSchedule& schedule, const BathSpec& bath);

struct AnalyticSir {
    double value{0.0};
    // Set when max |beta*E| on the grid exceeds 0.3: the leading-order
    // expansion behind the formula is then only qualitative.
    bool beyond_expansion_regime{false};
};

/// Leading-order entropy generation
///   beta^2/(2M) * sum_j [ sum_m eps^2 - (sum_m eps)^2 / M ].
AnalyticSir s_ir_analytic_general(const EnergyLevelSchedule& schedule, const BathSpec& bath);

struct SpeedFormResult {
    double s_ir{0.0};
    double theta{0.0};
    std::optional<double> xi;  // empty for degenerate schedules (mean(Delta) = 0)
    SpeedMoments moments{};
};

/// The same quantity written through the speed moments: s_ir = Theta*xi/N with
/// Theta = beta^2 mean(Delta)^2/2 and xi the normalized speed fluctuation.
/// Algebraically identical to s_ir_analytic_general; for a degenerate schedule
/// (mean(Delta) = 0) xi is undefined and the direct formula value is reported.
SpeedFormResult s_ir_speed_form(const EnergyLevelSchedule& schedule, const BathSpec& bath);

/// Large-N closed forms of xi for the two-level named families:
///   power law n       -> n^2/(2n-1)            (requires n > 1/2)
///   exponential b     -> (1/2 + b/Delta) ln(Delta/b + 1)
///   logarithmic a     -> sinh^2(x)/x^2 with x = Delta/(2a)
double xi_closed_form(const ControlFunction& control, double delta);

/// Two-level reduction with a fixed ground level:
///   s_ir = beta^2 Delta^2/(8N) * <v^2>/<v>^2
/// over the excited-level speeds.  Rejects schedules that are not two-level or
/// whose ground level moves.
double two_level_s_ir(const EnergyLevelSchedule& schedule, const BathSpec& bath);

// Expansion-validity threshold shared by the analytic routes.
inline constexpr double high_beta_energy_threshold = 0.3;

}  // namespace stepwise
