// core_model.cpp

#include "stepwise/core_model.hpp"

#include <algorithm>
#include <string>

namespace stepwise {

// ---------------------------------------------------------------- BathSpec --

BathSpec BathSpec::from_temperature(double T, double gamma) {
    BathSpec bath{T, 1.0 / T, gamma};
    bath.validate();
    return bath;
}

BathSpec BathSpec::from_beta(double beta, double gamma) {
    BathSpec bath{1.0 / beta, beta, gamma};
    bath.validate();
    return bath;
}

double BathSpec::gamma_tilde(double energy) const {
    if (!(energy > 0.0))
        throw std::invalid_argument("BathSpec::gamma_tilde: level splitting must be positive");
    return 2.0 * gamma / (beta * energy);
}

void BathSpec::validate() const {
    if (!(T > 0.0) || !std::isfinite(T))
        throw std::invalid_argument("BathSpec: T must be positive and finite");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("BathSpec: beta must be positive and finite");
    if (std::abs(beta * T - 1.0) > 1e-12)
        throw std::invalid_argument("BathSpec: beta and T are inconsistent (beta*T != 1)");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("BathSpec: gamma must be positive and finite");
}

// ---------------------------------------------------------- ControlFunction --

namespace {

// Steepness guard for the exponential/logarithmic profiles: beyond this the
// normalized profile is numerically degenerate (exp overflow).
constexpr double max_log_steepness = 700.0;

}  // namespace

const char* ControlFunction::family_name() const {
    return std::visit(
        [](const auto& f) -> const char* {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, PowerLaw>) return "power";
            if constexpr (std::is_same_v<F, Exponential>) return "exponential";
            if constexpr (std::is_same_v<F, Logarithmic>) return "logarithmic";
            return "tabulated";
        },
        family_);
}

void ControlFunction::check_parameters() const {
    std::visit(
        [](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, PowerLaw>) {
                if (!(f.n > 0.0) || !std::isfinite(f.n))
                    throw std::invalid_argument("ControlFunction: power law: n > 0 required");
            } else if constexpr (std::is_same_v<F, Exponential>) {
                if (f.b == 0.0 || !std::isfinite(f.b))
                    throw std::invalid_argument(
                        "ControlFunction: exponential: b must be nonzero and finite");
            } else if constexpr (std::is_same_v<F, Logarithmic>) {
                if (f.a == 0.0 || !std::isfinite(f.a))
                    throw std::invalid_argument(
                        "ControlFunction: logarithmic: a must be nonzero and finite");
            } else {
                if (f.values.empty() || f.values.front() != 0.0)
                    throw std::invalid_argument(
                        "ControlFunction: tabulated: first sample must be 0");
                for (double v : f.values)
                    if (!std::isfinite(v))
                        throw std::invalid_argument(
                            "ControlFunction: tabulated: samples must be finite");
            }
        },
        family_);
}

void ControlFunction::validate(int steps) const {
    check_parameters();
    if (const auto* tab = std::get_if<Tabulated>(&family_)) {
        if (static_cast<int>(tab->values.size()) != steps + 1)
            throw std::invalid_argument(
                "ControlFunction: tabulated: expected " + std::to_string(steps + 1) +
                " samples, got " + std::to_string(tab->values.size()));
    }
}

double ControlFunction::normalized(int j, int steps, double delta) const {
    if (j < 0 || j > steps)
        throw std::invalid_argument("ControlFunction::normalized: step index out of range");
    const double u = static_cast<double>(j) / steps;
    return std::visit(
        [&](const auto& f) -> double {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, PowerLaw>) {
                return std::pow(u, f.n);
            } else if constexpr (std::is_same_v<F, Exponential>) {
                const double r = delta / f.b;
                if (r <= -1.0)
                    throw std::domain_error(
                        "ControlFunction: exponential: requires Delta/b > -1");
                const double L = std::log1p(r);  // a*N for the raw form b(e^{ak}-1)
                if (L == 0.0) return u;
                return std::expm1(L * u) / std::expm1(L);
            } else if constexpr (std::is_same_v<F, Logarithmic>) {
                const double d = delta / f.a;  // ln(bN + 1) for the raw form a ln(bk+1)
                if (std::abs(d) > max_log_steepness)
                    throw std::domain_error(
                        "ControlFunction: logarithmic: profile too steep (|Delta/a| too large)");
                if (d == 0.0) return u;
                return std::log1p(std::expm1(d) * u) / d;
            } else {
                if (j == steps) return 1.0;
                const double last = f.values.back();
                if (last == 0.0)
                    throw std::domain_error(
                        "ControlFunction: tabulated: final sample is 0, cannot normalize");
                return f.values[static_cast<std::size_t>(j)] / last;
            }
        },
        family_);
}

// ------------------------------------------------------------ ThermalState --

void ThermalState::validate() const {
    if (p.size() == 0)
        throw std::invalid_argument("ThermalState: empty distribution");
    if (!p.allFinite() || (p.array() < 0.0).any() || (p.array() > 1.0).any())
        throw std::invalid_argument("ThermalState: probabilities must lie in [0,1]");
    if (std::abs(p.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("ThermalState: probabilities must sum to 1");
}

double shannon_entropy(const ThermalState& state) {
    state.validate();
    double s = 0.0;
    for (Eigen::Index m = 0; m < state.p.size(); ++m) {
        const double pm = state.p(m);
        if (pm > 0.0) s -= pm * std::log(pm);
    }
    return s;
}

// ----------------------------------------------------- EnergyLevelSchedule --

EnergyLevelSchedule::EnergyLevelSchedule(Eigen::MatrixXd energies, double tau)
    : energies_(std::move(energies)), tau_(tau) {
    if (energies_.rows() < 1 || energies_.cols() < 2)
        throw std::invalid_argument(
            "EnergyLevelSchedule: need at least one level and one step");
    if (!(tau_ > 0.0) || !std::isfinite(tau_))
        throw std::invalid_argument("EnergyLevelSchedule: tau must be positive and finite");
    if (!energies_.allFinite())
        throw std::invalid_argument("EnergyLevelSchedule: energies must be finite");

    const Eigen::Index M = energies_.rows();
    const Eigen::Index cols = energies_.cols();
    for (Eigen::Index m = 0; m < M; ++m) {
        for (Eigen::Index l = m + 1; l < M; ++l) {
            const double ref = energies_(m, 0) - energies_(l, 0);
            const int sign0 = (ref > 0.0) - (ref < 0.0);
            for (Eigen::Index j = 1; j < cols; ++j) {
                const double d = energies_(m, j) - energies_(l, j);
                const int sign = (d > 0.0) - (d < 0.0);
                if (sign != sign0)
                    throw std::invalid_argument(
                        "EnergyLevelSchedule: level crossing between levels " +
                        std::to_string(m) + " and " + std::to_string(l) + " at step " +
                        std::to_string(j));
            }
        }
    }
}

// -------------------------------------------------------------- primitives --

EnergyLevelSchedule build_schedule(const Eigen::VectorXd& initial_levels,
                                   const Eigen::VectorXd& final_levels,
                                   const std::vector<ControlFunction>& controls,
                                   int steps, double tau) {
    const Eigen::Index M = initial_levels.size();
    if (M == 0)
        throw std::invalid_argument("build_schedule: empty level list");
    if (final_levels.size() != M)
        throw std::invalid_argument("build_schedule: initial/final level counts differ");
    if (static_cast<Eigen::Index>(controls.size()) != M)
        throw std::invalid_argument("build_schedule: need one control per level");
    if (steps < 1)
        throw std::invalid_argument("build_schedule: need at least one step");

    Eigen::MatrixXd grid(M, steps + 1);
    for (Eigen::Index m = 0; m < M; ++m) {
        const double e0 = initial_levels(m);
        const double delta = final_levels(m) - e0;
        controls[static_cast<std::size_t>(m)].validate(steps);
        grid(m, 0) = e0;
        grid(m, steps) = final_levels(m);
        for (int j = 1; j < steps; ++j) {
            grid(m, j) = delta == 0.0
                             ? e0
                             : e0 + delta * controls[static_cast<std::size_t>(m)].normalized(
                                                j, steps, delta);
        }
    }
    return EnergyLevelSchedule(std::move(grid), tau);
}

EnergyLevelSchedule build_schedule(const Eigen::VectorXd& initial_levels,
                                   const Eigen::VectorXd& final_levels,
                                   const ControlFunction& control,
                                   int steps, double tau) {
    std::vector<ControlFunction> controls(static_cast<std::size_t>(initial_levels.size()),
                                          control);
    return build_schedule(initial_levels, final_levels, controls, steps, tau);
}

EnergyLevelSchedule two_level_schedule(double gap_start, double gap_end,
                                       const ControlFunction& control,
                                       int steps, double tau) {
    Eigen::VectorXd e0(2), en(2);
    e0 << 0.0, gap_start;
    en << 0.0, gap_end;
    return build_schedule(e0, en, control, steps, tau);
}

}  // namespace stepwise
