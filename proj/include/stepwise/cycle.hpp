// cycle.hpp — Stepwise Carnot-like cycle: branch assembly, work, power and
// efficiency bookkeeping, efficiency at maximum power, optimal branch times.

#pragma once

#include <optional>

#include "stepwise/core_model.hpp"
#include "stepwise/dip.hpp"

namespace stepwise {

enum class SimulationMode { exact, dynamics };

inline const char* to_string(SimulationMode mode) {
    return mode == SimulationMode::exact ? "exact" : "dynamics";
}

// A two-level engine: ground level fixed at 0, excited level tuned between
// E_H0 and E_HN while in contact with the hot bath.  The cold-branch endpoints
// are derived from the adiabat continuity conditions, never stored.
struct CycleSpec {
    BathSpec hot;
    BathSpec cold;
    double E_H0{0.0};  // hot-branch excited-level start
    double E_HN{0.0};  // hot-branch excited-level end
    int N_H{1};
    int N_C{1};
    ControlFunction control_H{ControlFunction::power_law(1.0)};
    ControlFunction control_C{ControlFunction::power_law(1.0)};
    std::optional<double> tau_H;  // empty: beta * max gap / gamma, per branch
    std::optional<double> tau_C;

    void validate() const;
};

struct ColdEndpoints {
    double start;  // beta_C * start = beta_H * E_HN  (hot->cold adiabat)
    double end;    // beta_C * end   = beta_H * E_H0  (cold->hot adiabat)
};

/// Population continuity across both instantaneous adiabats fixes the cold
/// endpoints; the reversible per-branch entropy changes then match in
/// magnitude and the adiabats carry no entropy jump.
ColdEndpoints adiabat_endpoints(double beta_H, double beta_C, double E_H0, double E_HN);
ColdEndpoints adiabat_endpoints(const CycleSpec& spec);

struct BranchSchedules {
    EnergyLevelSchedule hot;
    EnergyLevelSchedule cold;
};

/// Both branch schedules with the step times resolved (auto step time is two
/// relaxation times at the branch's largest splitting).
BranchSchedules build_branch_schedules(const CycleSpec& spec);

/// Per-branch dissipation coefficient Sigma = xi * Theta * tau, so that the
/// branch entropy generation is Sigma / t for a branch of duration t.
double dissipation_coefficient(double xi, double theta, double tau);
double dissipation_coefficient(const DipResult& branch, double tau);

double carnot_efficiency(double T_H, double T_C);
double curzon_ahlborn_efficiency(double eta_C);   // 1 - sqrt(1 - eta_C)
double emp_upper_bound(double eta_C);             // eta_C / (2 - eta_C)

/// Efficiency at maximum power of a low-dissipation engine with per-branch
/// coefficients Sigma_H, Sigma_C.
double emp_full(double sigma_H, double sigma_C, double T_H, double T_C);

struct EmpPowerLaw {
    double exact;   // eta_C (1 + s) / (2 - eta_C + 2 s),  s = sqrt(2 T_C/(n_H T_H))
    double approx;  // eta_+ (1 - eta_+ s)
};

/// EMP for a power-law hot control with a linear cold branch and equal
/// couplings, in the n_H >> 1 regime where xi_H ~ n_H/2.
EmpPowerLaw emp_powerlaw(double n_H, double eta_C);

struct OptimalTimes {
    double t_H;
    double t_C;
};

/// Branch durations that maximize the low-dissipation power
///   P = [eta_C T_H dS - T_H Sigma_H/t_H - T_C Sigma_C/t_C] / (t_H + t_C).
OptimalTimes optimal_times(double sigma_H, double sigma_C, double T_H, double T_C,
                           double delta_S);

/// The power attained at those durations.
double max_power(double sigma_H, double sigma_C, double T_H, double T_C, double delta_S);

struct EngineReport {
    double W{0.0};               // net work per cycle, Q_H - Q_C
    double Q_H{0.0};             // heat absorbed from the hot bath
    double Q_C{0.0};             // heat released to the cold bath
    double P{0.0};               // W / (t_H + t_C)
    double eta{0.0};             // W / Q_H
    double t_H{0.0};
    double t_C{0.0};
    double sigma_H{0.0};
    double sigma_C{0.0};
    double eta_emp{0.0};
    double eta_plus{0.0};
    double eta_ca{0.0};
    double P_max{0.0};
    double delta_S{0.0};         // reversible per-branch entropy change
    double closure_defect{0.0};  // population mismatch after one full cycle
    SimulationMode mode{SimulationMode::exact};
};

/// Runs hot branch, instantaneous adiabat, cold branch, adiabat.  In exact
/// mode the cycle closes identically; in dynamics mode the closure defect is
/// reported.  eta_emp is taken from the EMP formula with the branch-measured
/// xi; with optimize_times set (dynamics mode only) the branch durations are
/// instead grid-optimized around the predicted optimum and eta_emp is the
/// measured efficiency at the measured maximum power.
EngineReport simulate_cycle(const CycleSpec& spec, SimulationMode mode,
                            bool optimize_times = false);

}  // namespace stepwise
