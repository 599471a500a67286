// dynamics.cpp

#include "stepwise/dynamics.hpp"

namespace stepwise {

RelaxationStep::RelaxationStep(double energy, const BathSpec& bath) : energy(energy) {
    bath.validate();
    if (!(energy > 0.0) || !std::isfinite(energy))
        throw std::invalid_argument("RelaxationStep: level splitting must be positive");
    n_th = 1.0 / std::expm1(bath.beta * energy);
    rate = bath.gamma * (2.0 * n_th + 1.0);
    p_star = n_th / (1.0 + 2.0 * n_th);
}

double propagate_dwell(const RelaxationStep& step, double p0, double t) {
    if (!(p0 >= 0.0 && p0 <= 1.0))
        throw std::invalid_argument("propagate_dwell: population must lie in [0,1]");
    if (!(t >= 0.0))
        throw std::invalid_argument("propagate_dwell: dwell time must be nonnegative");
    return step.p_star + (p0 - step.p_star) * std::exp(-step.rate * t);
}

namespace {

double binary_entropy(double p) {
    double s = 0.0;
    if (p > 0.0) s -= p * std::log(p);
    if (p < 1.0) s -= (1.0 - p) * std::log(1.0 - p);
    return s;
}

}  // namespace

DipResult run_dip_dynamics(const EnergyLevelSchedule& schedule, const BathSpec& bath,
                           double initial_excited_population) {
    bath.validate();
    if (schedule.level_count() != 2)
        throw std::invalid_argument("run_dip_dynamics: schedule must have exactly two levels");
    if (!(initial_excited_population >= 0.0 && initial_excited_population <= 1.0))
        throw std::invalid_argument("run_dip_dynamics: population must lie in [0,1]");

    const Eigen::Index ground = schedule.energies()(0, 0) <= schedule.energies()(1, 0) ? 0 : 1;
    const Eigen::Index excited = 1 - ground;
    if ((schedule.steps().row(ground).array() != 0.0).any())
        throw std::invalid_argument("run_dip_dynamics: ground level must stay constant");

    const int N = schedule.step_count();
    const auto state_at = [&](Eigen::Index j, double pe) {
        Eigen::VectorXd p(2);
        p(ground) = 1.0 - pe;
        p(excited) = pe;
        return TrajectoryPoint{schedule.levels_at(j), ThermalState{std::move(p)}};
    };

    DipResult out;
    out.trajectory.reserve(static_cast<std::size_t>(N) + 1);
    out.trajectory.push_back(state_at(0, initial_excited_population));

    double pe = initial_excited_population;
    double heat = 0.0;
    for (int j = 1; j <= N; ++j) {
        const double gap = schedule.energies()(excited, j) - schedule.energies()(ground, j);
        const RelaxationStep step(gap, bath);
        const double pe_next = propagate_dwell(step, pe, schedule.tau());
        heat += gap * (pe_next - pe);  // the ground level is constant, so only the gap enters
        pe = pe_next;
        out.trajectory.push_back(state_at(j, pe));
    }

    out.delta_Q = heat;
    out.delta_S = binary_entropy(pe) - binary_entropy(initial_excited_population);
    out.s_ir = out.delta_S - bath.beta * out.delta_Q;

    const SpeedFormResult sf = s_ir_speed_form(schedule, bath);
    out.theta = sf.theta;
    out.xi = sf.xi;
    out.moments = sf.moments;
    return out;
}

DipResult run_dip_dynamics(const EnergyLevelSchedule& schedule, const BathSpec& bath) {
    const ThermalState g = gibbs_populations(schedule.levels_at(0), bath.beta);
    const Eigen::Index excited =
        schedule.energies()(0, 0) <= schedule.energies()(1, 0) ? 1 : 0;
    return run_dip_dynamics(schedule, bath, g.p(excited));
}

DefaultStepTime default_step_time(const BathSpec& bath, double initial_energy) {
    bath.validate();
    if (!(initial_energy > 0.0) || !std::isfinite(initial_energy))
        throw std::invalid_argument("default_step_time: initial energy must be positive");
    const double beta_e = bath.beta * initial_energy;
    return DefaultStepTime{beta_e / bath.gamma, beta_e > high_beta_energy_threshold};
}

ResidualRatio thermalization_residual(const RelaxationStep& step, double p0, double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("thermalization_residual: time must be nonnegative");
    if (p0 == step.p_star) return {0.0, 0.0};
    // gamma and beta*E are recovered exactly from the stored rate and n_th.
    const double gamma = step.rate / (2.0 * step.n_th + 1.0);
    const double beta_e = std::log1p(1.0 / step.n_th);
    return ResidualRatio{std::exp(-step.rate * t), std::exp(-2.0 * gamma * t / beta_e)};
}

}  // namespace stepwise
