// core_model.hpp — Domain types and stateless primitives: baths, control
// functions, energy-level schedules, Gibbs states and Shannon entropy.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

namespace stepwise {

// Natural units throughout: k_B = hbar = 1.

// ---------------------------------------------------------------- BathSpec --

struct BathSpec {
    double T{1.0};      // temperature
    double beta{1.0};   // inverse temperature, 1/T
    double gamma{1.0};  // system-bath coupling rate

    static BathSpec from_temperature(double T, double gamma);
    static BathSpec from_beta(double beta, double gamma);

    // Effective relaxation rate 2*gamma/(beta*E) of a dwell at level splitting E.
    double gamma_tilde(double energy) const;

    void validate() const;
};

// ---------------------------------------------------------- ControlFunction --

// A control function fixes the normalized profile fhat(j) along which a level
// is pulled from its initial to its final energy: E(j) = E(0) + Delta*fhat(j),
// with fhat(0) = 0 and fhat(N) = 1 exactly.  Families whose raw form carries a
// second parameter have it pinned by the endpoint constraint f(N) = Delta, so
// each family keeps a single shape parameter.
class ControlFunction {
public:
    struct PowerLaw {
        double n;  // f(k) ~ k^n, n > 0
    };
    struct Exponential {
        double b;  // f(k) = b(e^{ak} - 1); a is set by f(N) = Delta, requires Delta/b > -1
    };
    struct Logarithmic {
        double a;  // f(k) = a ln(bk + 1); b is set by f(N) = Delta
    };
    struct Tabulated {
        std::vector<double> values;  // N+1 samples of f(k), values[0] must be 0
    };
    using Family = std::variant<PowerLaw, Exponential, Logarithmic, Tabulated>;

    static ControlFunction power_law(double n) { return ControlFunction{PowerLaw{n}}; }
    static ControlFunction exponential(double b) { return ControlFunction{Exponential{b}}; }
    static ControlFunction logarithmic(double a) { return ControlFunction{Logarithmic{a}}; }
    static ControlFunction tabulated(std::vector<double> values) {
        return ControlFunction{Tabulated{std::move(values)}};
    }

    explicit ControlFunction(Family family) : family_(std::move(family)) { check_parameters(); }

    const Family& family() const { return family_; }
    const char* family_name() const;

    // Normalized profile fhat(j) for a level changing by delta over N steps.
    double normalized(int j, int steps, double delta) const;

    // Parameter sanity plus the per-schedule requirements (tabulated length).
    void validate(int steps) const;

private:
    void check_parameters() const;

    Family family_;
};

// ------------------------------------------------------------ ThermalState --

struct ThermalState {
    Eigen::VectorXd p;  // occupation per level

    void validate() const;
};

// ----------------------------------------------------- EnergyLevelSchedule --

// The grid E_m^(j) of M level energies over N steps (columns j = 0..N), with a
// fixed dwell time tau per step.  Construction rejects level crossings: the
// pairwise ordering of the levels at every column must match column 0.
class EnergyLevelSchedule {
public:
    EnergyLevelSchedule(Eigen::MatrixXd energies, double tau);

    Eigen::Index level_count() const { return energies_.rows(); }
    int step_count() const { return static_cast<int>(energies_.cols()) - 1; }
    double tau() const { return tau_; }
    double total_time() const { return step_count() * tau_; }

    const Eigen::MatrixXd& energies() const { return energies_; }
    Eigen::MatrixXd::ConstColXpr levels_at(Eigen::Index j) const { return energies_.col(j); }

    // Per-step level shifts eps_m^(j) = E_m^(j) - E_m^(j-1), an M x N matrix.
    Eigen::MatrixXd steps() const {
        const auto n = step_count();
        return energies_.rightCols(n) - energies_.leftCols(n);
    }

    // Net level changes Delta_m = E_m^(N) - E_m^(0) and their mean over levels.
    Eigen::VectorXd level_changes() const {
        return energies_.col(step_count()) - energies_.col(0);
    }
    double mean_level_change() const { return level_changes().mean(); }

private:
    Eigen::MatrixXd energies_;  // M x (N+1)
    double tau_;
};

// -------------------------------------------------------------- primitives --

/// Gibbs occupation probabilities exp(-beta*E_m)/Z, overflow-safe for any
/// energy scale (the smallest energy is subtracted before exponentiating).
template <typename Derived>
ThermalState gibbs_populations(const Eigen::MatrixBase<Derived>& energies, double beta) {
    if (energies.size() == 0)
        throw std::invalid_argument("gibbs_populations: empty level list");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("gibbs_populations: beta must be positive and finite");
    Eigen::VectorXd e = energies;
    if (!e.allFinite())
        throw std::invalid_argument("gibbs_populations: energies must be finite");
    Eigen::VectorXd w = (-beta * (e.array() - e.minCoeff())).exp().matrix();
    w /= w.sum();
    return ThermalState{std::move(w)};
}

/// Shannon entropy -sum p ln p (k_B = 1), with 0 ln 0 := 0.
double shannon_entropy(const ThermalState& state);

/// Schedule construction: E_m^(j) = E_m^(0) + Delta_m * fhat_m(j), one control
/// per level.  Levels with Delta_m = 0 stay put regardless of their control.
EnergyLevelSchedule build_schedule(const Eigen::VectorXd& initial_levels,
                                   const Eigen::VectorXd& final_levels,
                                   const std::vector<ControlFunction>& controls,
                                   int steps, double tau);

/// Same control applied to every level.
EnergyLevelSchedule build_schedule(const Eigen::VectorXd& initial_levels,
                                   const Eigen::VectorXd& final_levels,
                                   const ControlFunction& control,
                                   int steps, double tau);

/// Two-level convenience: ground level fixed at 0, excited level tuned from
/// gap_start to gap_end.
EnergyLevelSchedule two_level_schedule(double gap_start, double gap_end,
                                       const ControlFunction& control,
                                       int steps, double tau);

}  // namespace stepwise
