// dip.cpp

#include "stepwise/dip.hpp"

namespace stepwise {

SpeedMoments tuning_speed_moments(const EnergyLevelSchedule& schedule) {
    const Eigen::MatrixXd v = schedule.steps() / schedule.tau();
    SpeedMoments m;
    m.v_bar_mean = v.mean();
    m.v_sq_mean = v.array().square().mean();
    m.v_bar_sq_mean = v.colwise().mean().array().square().mean();
    return m;
}

namespace {

// Theta, xi and the moments are schedule properties shared by every route.
void fill_speed_factors(const EnergyLevelSchedule& schedule, const BathSpec& bath,
                        double& theta, std::optional<double>& xi, SpeedMoments& moments) {
    moments = tuning_speed_moments(schedule);
    const double delta_bar = schedule.mean_level_change();
    theta = 0.5 * bath.beta * bath.beta * delta_bar * delta_bar;
    if (delta_bar == 0.0 || moments.v_bar_mean == 0.0) {
        xi.reset();
    } else {
        xi = (moments.v_sq_mean - moments.v_bar_sq_mean) /
             (moments.v_bar_mean * moments.v_bar_mean);
    }
}

}  // namespace

DipResult run_dip_exact(const EnergyLevelSchedule& schedule, const BathSpec& bath,
                        const ThermalState& initial_state) {
    bath.validate();
    initial_state.validate();
    if (initial_state.p.size() != schedule.level_count())
        throw std::invalid_argument("run_dip_exact: state/schedule level counts differ");

    const int N = schedule.step_count();
    DipResult out;
    out.trajectory.reserve(static_cast<std::size_t>(N) + 1);
    out.trajectory.push_back({schedule.levels_at(0), initial_state});

    ThermalState state = initial_state;
    double heat = 0.0;
    for (int j = 1; j <= N; ++j) {
        const Eigen::VectorXd levels = schedule.levels_at(j);
        ThermalState relaxed = gibbs_populations(levels, bath.beta);
        heat += levels.dot(relaxed.p - state.p);
        state = std::move(relaxed);
        out.trajectory.push_back({levels, state});
    }

    out.delta_Q = heat;
    out.delta_S = shannon_entropy(state) - shannon_entropy(initial_state);
    out.s_ir = out.delta_S - bath.beta * out.delta_Q;
    fill_speed_factors(schedule, bath, out.theta, out.xi, out.moments);
    return out;
}

DipResult run_dip_exact(const EnergyLevelSchedule& schedule, const BathSpec& bath) {
    return run_dip_exact(schedule, bath, gibbs_populations(schedule.levels_at(0), bath.beta));
}

AnalyticSir s_ir_analytic_general(const EnergyLevelSchedule& schedule, const BathSpec& bath) {
    bath.validate();
    const Eigen::MatrixXd eps = schedule.steps();
    const double M = static_cast<double>(schedule.level_count());
    const double per_step_sum = (eps.array().square().colwise().sum() -
                                 eps.colwise().sum().array().square() / M)
                                    .sum();
    AnalyticSir out;
    out.value = bath.beta * bath.beta / (2.0 * M) * per_step_sum;
    out.beyond_expansion_regime =
        (bath.beta * schedule.energies().array().abs().maxCoeff()) > high_beta_energy_threshold;
    return out;
}

SpeedFormResult s_ir_speed_form(const EnergyLevelSchedule& schedule, const BathSpec& bath) {
    bath.validate();
    SpeedFormResult out;
    fill_speed_factors(schedule, bath, out.theta, out.xi, out.moments);
    if (out.xi) {
        out.s_ir = out.theta * *out.xi / (schedule.total_time() / schedule.tau());
    } else {
        out.s_ir = s_ir_analytic_general(schedule, bath).value;
    }
    return out;
}

double xi_closed_form(const ControlFunction& control, double delta) {
    return std::visit(
        [&](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, ControlFunction::PowerLaw>) {
                if (!(f.n > 0.5))
                    throw std::domain_error(
                        "xi_closed_form: power law requires n > 1/2 for a finite value");
                return f.n * f.n / (2.0 * f.n - 1.0);
            } else if constexpr (std::is_same_v<F, ControlFunction::Exponential>) {
                if (delta == 0.0)
                    throw std::domain_error("xi_closed_form: exponential requires delta != 0");
                const double r = delta / f.b;
                if (r <= -1.0)
                    throw std::domain_error("xi_closed_form: requires Delta/b > -1");
                return (0.5 + f.b / delta) * std::log1p(r);
            } else if constexpr (std::is_same_v<F, ControlFunction::Logarithmic>) {
                if (delta == 0.0)
                    throw std::domain_error("xi_closed_form: logarithmic requires delta != 0");
                const double x = delta / (2.0 * f.a);
                if (std::abs(x) > 350.0)
                    throw std::domain_error("xi_closed_form: |Delta/2a| too large");
                if (x == 0.0) return 1.0;
                const double s = std::sinh(x) / x;
                return s * s;
            } else {
                throw std::domain_error("xi_closed_form: no closed form for tabulated controls");
            }
        },
        control.family());
}

double two_level_s_ir(const EnergyLevelSchedule& schedule, const BathSpec& bath) {
    bath.validate();
    if (schedule.level_count() != 2)
        throw std::invalid_argument("two_level_s_ir: schedule must have exactly two levels");

    const Eigen::Index ground = schedule.energies()(0, 0) <= schedule.energies()(1, 0) ? 0 : 1;
    const Eigen::Index excited = 1 - ground;
    const Eigen::MatrixXd eps = schedule.steps();
    if ((eps.row(ground).array() != 0.0).any())
        throw std::invalid_argument("two_level_s_ir: ground level must stay constant");

    const int N = schedule.step_count();
    const Eigen::ArrayXd v = eps.row(excited).array() / schedule.tau();
    const double v_mean = v.mean();
    const double v_sq_mean = v.square().mean();
    if (v_mean == 0.0) {
        if ((v == 0.0).all()) return 0.0;
        throw std::domain_error("two_level_s_ir: <v> = 0 with moving excited level");
    }
    const double delta = schedule.level_changes()(excited);
    return bath.beta * bath.beta * delta * delta / (8.0 * N) * v_sq_mean / (v_mean * v_mean);
}

}  // namespace stepwise
