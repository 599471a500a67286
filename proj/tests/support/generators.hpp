// generators.hpp — shared random-input builders for property tests.

#pragma once

#include <cmath>

#include "stepwise/core_model.hpp"
#include "stepwise/cycle.hpp"
#include "support/oracles.hpp"

namespace oracle {

// Random M-level grid with uniform per-step shifts in [-1, 1].  Base levels
// are spaced far enough apart that no drift over <= 60 steps can cross them.
inline stepwise::EnergyLevelSchedule random_schedule(Rng& rng, int max_levels = 6,
                                                     int max_steps = 50) {
    const int m = rng.uniform_int(2, max_levels);
    const int n = rng.uniform_int(1, max_steps);
    Eigen::MatrixXd grid(m, n + 1);
    for (int i = 0; i < m; ++i) grid(i, 0) = 150.0 * i + rng.uniform(-1.0, 1.0);
    for (int j = 1; j <= n; ++j)
        for (int i = 0; i < m; ++i) grid(i, j) = grid(i, j - 1) + rng.uniform(-1.0, 1.0);
    return stepwise::EnergyLevelSchedule(std::move(grid), 1.0);
}

// Random engine spec: hot expansion (E_H0 > E_HN) with any of the named
// monotone control families on each branch.
inline stepwise::CycleSpec random_engine_spec(Rng& rng) {
    using stepwise::BathSpec;
    using stepwise::ControlFunction;
    stepwise::CycleSpec spec;
    const double t_hot = rng.uniform(0.5, 5.0);
    const double t_cold = t_hot * rng.uniform(0.2, 0.95);
    spec.hot = BathSpec::from_temperature(t_hot, rng.uniform(0.2, 5.0));
    spec.cold = BathSpec::from_temperature(t_cold, rng.uniform(0.2, 5.0));
    spec.E_H0 = rng.uniform(0.5, 10.0);
    spec.E_HN = spec.E_H0 * rng.uniform(0.3, 0.95);
    spec.N_H = rng.uniform_int(1, 60);
    spec.N_C = rng.uniform_int(1, 60);
    // Shape parameters must track the sign of the branch's own level change.
    const auto pick_control = [&](double delta) {
        switch (rng.uniform_int(0, 2)) {
            case 0:
                return ControlFunction::power_law(rng.uniform(0.6, 5.0));
            case 1:
                return ControlFunction::exponential(delta *
                                                    std::pow(10.0, rng.uniform(-0.5, 1.0)));
            default:
                return ControlFunction::logarithmic(
                    delta / (2.0 * std::pow(10.0, rng.uniform(-0.5, 0.5))));
        }
    };
    const stepwise::ColdEndpoints cold =
        stepwise::adiabat_endpoints(spec.hot.beta, spec.cold.beta, spec.E_H0, spec.E_HN);
    spec.control_H = pick_control(spec.E_HN - spec.E_H0);
    spec.control_C = pick_control(cold.end - cold.start);
    return spec;
}

}  // namespace oracle
