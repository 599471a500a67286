// dynamics.hpp — Two-level master-equation evolution during isochoric dwells:
// piecewise-exact propagation, step-time selection, thermalization residuals.

#pragma once

#include "stepwise/core_model.hpp"
#include "stepwise/dip.hpp"

namespace stepwise {

// One dwell at fixed level splitting E in contact with a bath.  The excited
// population relaxes exponentially toward p_star at the given rate; both are
// set by the bath occupation n_th = 1/(e^{beta E} - 1).
struct RelaxationStep {
    double energy;  // level splitting during the dwell, > 0
    double n_th;    // bath occupation at this splitting
    double rate;    // gamma * (2 n_th + 1)
    double p_star;  // asymptotic excited population n_th/(1 + 2 n_th)

    RelaxationStep(double energy, const BathSpec& bath);
};

/// Closed-form dwell propagation p(t) = p_star + (p0 - p_star) e^{-rate t}.
/// The coefficients are constant within a dwell, so no ODE stepping is needed.
double propagate_dwell(const RelaxationStep& step, double p0, double t);

/// Runs a two-level process under the master equation: instantaneous quenches
/// (populations frozen) alternating with dwells of length tau.  The ground
/// level must stay constant; populations and heat depend only on the gap.
/// Heat is accumulated as sum_j E^(j) (p^(j) - p^(j-1)).
DipResult run_dip_dynamics(const EnergyLevelSchedule& schedule, const BathSpec& bath,
                           double initial_excited_population);

/// Same, starting from the Gibbs population of the initial gap.
DipResult run_dip_dynamics(const EnergyLevelSchedule& schedule, const BathSpec& bath);

struct DefaultStepTime {
    double tau;
    bool beyond_expansion_regime;  // set when beta*E0 > 0.3
};

/// Step time tau = beta*E0/gamma (two relaxation times of the effective rate
/// 2 gamma/(beta E0)), leaving a per-step thermalization residual of order e^-2.
DefaultStepTime default_step_time(const BathSpec& bath, double initial_energy);

struct ResidualRatio {
    double exact;          // |p(t) - p_star| / |p0 - p_star| = e^{-rate t}
    double high_t_approx;  // e^{-2 gamma t/(beta E)}
};

/// Both residual ratios for a dwell of length t; {0, 0} when p0 = p_star.
ResidualRatio thermalization_residual(const RelaxationStep& step, double p0, double t);

}  // namespace stepwise
