// cycle.cpp

#include "stepwise/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "stepwise/dynamics.hpp"

namespace stepwise {

void CycleSpec::validate() const {
    hot.validate();
    cold.validate();
    if (!(hot.T > cold.T))
        throw std::invalid_argument("CycleSpec: requires T_H > T_C");
    if (!(E_H0 > 0.0) || !(E_HN > 0.0))
        throw std::invalid_argument("CycleSpec: excited-level endpoints must be positive");
    if (E_H0 == E_HN)
        throw std::invalid_argument("CycleSpec: degenerate cycle (E_H0 == E_HN)");
    if (N_H < 1 || N_C < 1)
        throw std::invalid_argument("CycleSpec: step counts must be at least 1");
    if ((tau_H && !(*tau_H > 0.0)) || (tau_C && !(*tau_C > 0.0)))
        throw std::invalid_argument("CycleSpec: explicit step times must be positive");
}

ColdEndpoints adiabat_endpoints(double beta_H, double beta_C, double E_H0, double E_HN) {
    if (!(beta_H > 0.0) || !(beta_C > 0.0))
        throw std::invalid_argument("adiabat_endpoints: inverse temperatures must be positive");
    return ColdEndpoints{beta_H * E_HN / beta_C, beta_H * E_H0 / beta_C};
}

ColdEndpoints adiabat_endpoints(const CycleSpec& spec) {
    return adiabat_endpoints(spec.hot.beta, spec.cold.beta, spec.E_H0, spec.E_HN);
}

BranchSchedules build_branch_schedules(const CycleSpec& spec) {
    spec.validate();
    const ColdEndpoints cold = adiabat_endpoints(spec);
    const double tau_H = spec.tau_H.value_or(
        spec.hot.beta * std::max(spec.E_H0, spec.E_HN) / spec.hot.gamma);
    const double tau_C = spec.tau_C.value_or(
        spec.cold.beta * std::max(cold.start, cold.end) / spec.cold.gamma);
    return BranchSchedules{
        two_level_schedule(spec.E_H0, spec.E_HN, spec.control_H, spec.N_H, tau_H),
        two_level_schedule(cold.start, cold.end, spec.control_C, spec.N_C, tau_C)};
}

double dissipation_coefficient(double xi, double theta, double tau) {
    if (!(xi >= 0.0) || !(theta >= 0.0) || !(tau > 0.0))
        throw std::invalid_argument("dissipation_coefficient: invalid arguments");
    return xi * theta * tau;
}

double dissipation_coefficient(const DipResult& branch, double tau) {
    if (!branch.xi)
        throw std::invalid_argument(
            "dissipation_coefficient: xi undefined for a degenerate schedule");
    return dissipation_coefficient(*branch.xi, branch.theta, tau);
}

double carnot_efficiency(double T_H, double T_C) {
    if (!(T_H > 0.0) || !(T_C > 0.0) || T_C > T_H)
        throw std::invalid_argument("carnot_efficiency: requires T_H >= T_C > 0");
    return 1.0 - T_C / T_H;
}

double curzon_ahlborn_efficiency(double eta_C) { return 1.0 - std::sqrt(1.0 - eta_C); }

double emp_upper_bound(double eta_C) { return eta_C / (2.0 - eta_C); }

double emp_full(double sigma_H, double sigma_C, double T_H, double T_C) {
    if (!(sigma_H > 0.0) || !(sigma_C > 0.0))
        throw std::invalid_argument("emp_full: dissipation coefficients must be positive");
    const double eta_C = carnot_efficiency(T_H, T_C);
    const double root = std::sqrt(T_C * sigma_C / (T_H * sigma_H));
    return eta_C * (1.0 + root) /
           ((1.0 + root) * (1.0 + root) + (T_C / T_H) * (1.0 - sigma_C / sigma_H));
}

EmpPowerLaw emp_powerlaw(double n_H, double eta_C) {
    if (!(n_H >= 1.0))
        throw std::invalid_argument("emp_powerlaw: requires n_H >= 1");
    if (!(eta_C > 0.0 && eta_C < 1.0))
        throw std::invalid_argument("emp_powerlaw: requires 0 < eta_C < 1");
    const double s = std::sqrt(2.0 * (1.0 - eta_C) / n_H);
    const double eta_plus = emp_upper_bound(eta_C);
    return EmpPowerLaw{eta_C * (1.0 + s) / (2.0 - eta_C + 2.0 * s),
                       eta_plus * (1.0 - eta_plus * s)};
}

OptimalTimes optimal_times(double sigma_H, double sigma_C, double T_H, double T_C,
                           double delta_S) {
    if (!(sigma_H > 0.0) || !(sigma_C > 0.0))
        throw std::invalid_argument("optimal_times: dissipation coefficients must be positive");
    if (!(delta_S > 0.0))
        throw std::invalid_argument("optimal_times: requires delta_S > 0");
    const double eta_C = carnot_efficiency(T_H, T_C);
    const double root = std::sqrt(T_C * sigma_C / (T_H * sigma_H));
    const double t_H = 2.0 * sigma_H * (1.0 + root) / (eta_C * delta_S);
    return OptimalTimes{t_H, t_H * root};
}

double max_power(double sigma_H, double sigma_C, double T_H, double T_C, double delta_S) {
    if (!(sigma_H > 0.0) || !(sigma_C > 0.0))
        throw std::invalid_argument("max_power: dissipation coefficients must be positive");
    if (!(delta_S > 0.0))
        throw std::invalid_argument("max_power: requires delta_S > 0");
    const double eta_C = carnot_efficiency(T_H, T_C);
    const double denom = std::sqrt(T_H * sigma_H) + std::sqrt(T_C * sigma_C);
    const double num = eta_C * T_H * delta_S;
    return num * num / (4.0 * denom * denom);
}

namespace {

struct BranchRuns {
    DipResult hot;
    DipResult cold;
    double closure_defect;
};

BranchRuns run_branches(const CycleSpec& spec, const EnergyLevelSchedule& hot_schedule,
                        const EnergyLevelSchedule& cold_schedule, SimulationMode mode) {
    BranchRuns runs{DipResult{}, DipResult{}, 0.0};
    if (mode == SimulationMode::exact) {
        runs.hot = run_dip_exact(hot_schedule, spec.hot);
        const ThermalState& at_b = runs.hot.trajectory.back().state;
        // The adiabat freezes populations; the cold branch must start from the
        // matching cold-bath Gibbs state or the endpoints are inconsistent.
        const ThermalState cold_start =
            gibbs_populations(cold_schedule.levels_at(0), spec.cold.beta);
        if ((at_b.p - cold_start.p).cwiseAbs().maxCoeff() > 1e-9)
            throw std::invalid_argument(
                "simulate_cycle: population continuity fails at the hot->cold adiabat");
        runs.cold = run_dip_exact(cold_schedule, spec.cold, at_b);
        runs.closure_defect = (runs.cold.trajectory.back().state.p -
                               runs.hot.trajectory.front().state.p)
                                  .cwiseAbs()
                                  .maxCoeff();
    } else {
        runs.hot = run_dip_dynamics(hot_schedule, spec.hot);
        const double pe_b = runs.hot.trajectory.back().state.p(1);
        runs.cold = run_dip_dynamics(cold_schedule, spec.cold, pe_b);
        runs.closure_defect = std::abs(runs.cold.trajectory.back().state.p(1) -
                                       runs.hot.trajectory.front().state.p(1));
    }
    return runs;
}

std::vector<int> log_grid_around(int center, double span_factor, int points) {
    std::vector<int> grid;
    grid.reserve(static_cast<std::size_t>(points));
    const double log_span = std::log(span_factor);
    for (int k = 0; k < points; ++k) {
        const double f = std::exp(log_span * (2.0 * k / (points - 1) - 1.0));
        const int n = std::max(1, static_cast<int>(std::llround(center * f)));
        if (grid.empty() || grid.back() != n) grid.push_back(n);
    }
    return grid;
}

}  // namespace

EngineReport simulate_cycle(const CycleSpec& spec, SimulationMode mode, bool optimize_times) {
    spec.validate();
    if (optimize_times && mode != SimulationMode::dynamics)
        throw std::invalid_argument("simulate_cycle: time optimization requires dynamics mode");

    const BranchSchedules schedules = build_branch_schedules(spec);
    const double T_H = spec.hot.T;
    const double T_C = spec.cold.T;

    // Reversible per-branch entropy change, from the equilibrium endpoints.
    const double delta_S =
        shannon_entropy(gibbs_populations(schedules.hot.levels_at(spec.N_H), spec.hot.beta)) -
        shannon_entropy(gibbs_populations(schedules.hot.levels_at(0), spec.hot.beta));

    EngineReport report;
    report.mode = mode;
    report.delta_S = delta_S;
    report.eta_plus = emp_upper_bound(carnot_efficiency(T_H, T_C));
    report.eta_ca = curzon_ahlborn_efficiency(carnot_efficiency(T_H, T_C));

    const auto fill_measurements = [&](const EnergyLevelSchedule& hot_s,
                                       const EnergyLevelSchedule& cold_s) {
        const BranchRuns runs = run_branches(spec, hot_s, cold_s, mode);
        report.Q_H = runs.hot.delta_Q;
        report.Q_C = -runs.cold.delta_Q;
        report.W = report.Q_H - report.Q_C;
        report.t_H = hot_s.total_time();
        report.t_C = cold_s.total_time();
        report.P = report.W / (report.t_H + report.t_C);
        report.eta = report.W / report.Q_H;
        report.sigma_H = dissipation_coefficient(runs.hot, hot_s.tau());
        report.sigma_C = dissipation_coefficient(runs.cold, cold_s.tau());
        report.closure_defect = runs.closure_defect;
    };

    fill_measurements(schedules.hot, schedules.cold);
    report.eta_emp = emp_full(report.sigma_H, report.sigma_C, T_H, T_C);
    report.P_max = max_power(report.sigma_H, report.sigma_C, T_H, T_C, delta_S);

    if (optimize_times) {
        const OptimalTimes target =
            optimal_times(report.sigma_H, report.sigma_C, T_H, T_C, delta_S);
        const int center_H =
            std::max(1, static_cast<int>(std::llround(target.t_H / schedules.hot.tau())));
        const int center_C =
            std::max(1, static_cast<int>(std::llround(target.t_C / schedules.cold.tau())));

        const ColdEndpoints cold = adiabat_endpoints(spec);
        double best_power = report.P;
        std::pair<int, int> best{spec.N_H, spec.N_C};
        for (int nh : log_grid_around(center_H, 1.5, 15)) {
            const auto hot_s = two_level_schedule(spec.E_H0, spec.E_HN, spec.control_H, nh,
                                                  schedules.hot.tau());
            for (int nc : log_grid_around(center_C, 1.5, 15)) {
                const auto cold_s = two_level_schedule(cold.start, cold.end, spec.control_C,
                                                       nc, schedules.cold.tau());
                const BranchRuns runs = run_branches(spec, hot_s, cold_s, mode);
                const double w = runs.hot.delta_Q + runs.cold.delta_Q;
                const double power = w / (hot_s.total_time() + cold_s.total_time());
                if (power > best_power) {
                    best_power = power;
                    best = {nh, nc};
                }
            }
        }
        const auto hot_s = two_level_schedule(spec.E_H0, spec.E_HN, spec.control_H,
                                              best.first, schedules.hot.tau());
        const auto cold_s = two_level_schedule(cold.start, cold.end, spec.control_C,
                                               best.second, schedules.cold.tau());
        fill_measurements(hot_s, cold_s);
        report.eta_emp = report.eta;  // measured efficiency at the measured maximum power
    }
    return report;
}

}  // namespace stepwise
