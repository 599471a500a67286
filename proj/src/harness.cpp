// harness.cpp

#include "stepwise/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>

#include "stepwise/dip.hpp"
#include "stepwise/dynamics.hpp"

namespace stepwise::harness {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& message) {
    throw std::invalid_argument("config: " + message);
}

// Strict view over the flat JSON document: every key must be consumed by the
// selected experiment kind, anything left over is an unknown-key error.
class ConfigReader {
public:
    explicit ConfigReader(const ordered_json& doc) : doc_(doc) {
        if (!doc_.is_object()) config_error("top-level document must be a JSON object");
    }

    bool has(const std::string& key) const { return doc_.contains(key); }

    double number(const std::string& key) {
        const auto& v = fetch(key);
        if (!v.is_number()) config_error("field '" + key + "': expected a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    int integer(const std::string& key) {
        const auto& v = fetch(key);
        if (!v.is_number_integer()) config_error("field '" + key + "': expected an integer");
        return v.get<int>();
    }

    int integer_or(const std::string& key, int fallback) {
        return has(key) ? integer(key) : fallback;
    }

    std::uint64_t uinteger_or(const std::string& key, std::uint64_t fallback) {
        if (!has(key)) return fallback;
        const auto& v = fetch(key);
        if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0 &&
                                       !v.is_number_unsigned()))
            config_error("field '" + key + "': expected a nonnegative integer");
        return v.get<std::uint64_t>();
    }

    std::string text(const std::string& key) {
        const auto& v = fetch(key);
        if (!v.is_string()) config_error("field '" + key + "': expected a string");
        return v.get<std::string>();
    }

    std::string text_or(const std::string& key, std::string fallback) {
        return has(key) ? text(key) : std::move(fallback);
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const auto& v = fetch(key);
        if (!v.is_boolean()) config_error("field '" + key + "': expected a boolean");
        return v.get<bool>();
    }

    std::vector<double> number_list(const std::string& key) {
        const auto& v = fetch(key);
        if (!v.is_array() || v.empty())
            config_error("field '" + key + "': expected a non-empty array");
        std::vector<double> out;
        out.reserve(v.size());
        for (const auto& el : v) {
            if (!el.is_number())
                config_error("field '" + key + "': expected an array of numbers");
            out.push_back(el.get<double>());
        }
        return out;
    }

    std::vector<int> integer_list(const std::string& key) {
        const auto& v = fetch(key);
        if (!v.is_array() || v.empty())
            config_error("field '" + key + "': expected a non-empty array");
        std::vector<int> out;
        out.reserve(v.size());
        for (const auto& el : v) {
            if (!el.is_number_integer())
                config_error("field '" + key + "': expected an array of integers");
            out.push_back(el.get<int>());
        }
        return out;
    }

    // "auto" or a positive number; absent means auto as well.
    std::optional<double> auto_or_number(const std::string& key) {
        if (!has(key)) return std::nullopt;
        const auto& v = fetch(key);
        if (v.is_string()) {
            if (v.get<std::string>() != "auto")
                config_error("field '" + key + "': expected a positive number or \"auto\"");
            return std::nullopt;
        }
        if (!v.is_number() || !(v.get<double>() > 0.0))
            config_error("field '" + key + "': expected a positive number or \"auto\"");
        return v.get<double>();
    }

    void finish() const {
        std::string unknown;
        for (const auto& item : doc_.items()) {
            if (consumed_.count(item.key())) continue;
            if (!unknown.empty()) unknown += ", ";
            unknown += "'" + item.key() + "'";
        }
        if (!unknown.empty())
            config_error("unknown key(s) for this experiment kind: " + unknown);
    }

private:
    const ordered_json& fetch(const std::string& key) {
        const auto it = doc_.find(key);
        if (it == doc_.end()) config_error("missing required field '" + key + "'");
        consumed_.insert(key);
        return *it;
    }

    const ordered_json& doc_;
    std::set<std::string> consumed_;
};

void require_positive(double v, const std::string& key) {
    if (!(v > 0.0) || !std::isfinite(v))
        config_error("field '" + key + "': must be positive and finite");
}

void require_increasing(const std::vector<double>& v, const std::string& key) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            config_error("field '" + key + "': values must be strictly increasing");
}

void require_increasing(const std::vector<int>& v, const std::string& key) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1]))
            config_error("field '" + key + "': values must be strictly increasing");
}

BathSpec parse_bath(ConfigReader& r, const std::string& beta_key, const std::string& t_key,
                    const std::string& gamma_key,
                    std::optional<double> gamma_default = std::nullopt) {
    const bool has_beta = r.has(beta_key);
    const bool has_t = r.has(t_key);
    if (has_beta == has_t)
        config_error("exactly one of '" + beta_key + "' and '" + t_key + "' is required");
    const double gamma = gamma_default ? r.number_or(gamma_key, *gamma_default)
                                       : r.number(gamma_key);
    try {
        return has_beta ? BathSpec::from_beta(r.number(beta_key), gamma)
                        : BathSpec::from_temperature(r.number(t_key), gamma);
    } catch (const std::invalid_argument& e) {
        config_error(e.what());
    }
}

ControlFunction parse_control(ConfigReader& r, const std::string& suffix) {
    const std::string family_key = "control" + suffix;
    const std::string family = r.text(family_key);
    try {
        if (family == "power")
            return ControlFunction::power_law(r.number("n" + suffix));
        if (family == "exponential")
            return ControlFunction::exponential(r.number("b" + suffix));
        if (family == "logarithmic")
            return ControlFunction::logarithmic(r.number("a" + suffix));
        if (family == "tabulated")
            return ControlFunction::tabulated(r.number_list("values" + suffix));
    } catch (const std::invalid_argument& e) {
        config_error(e.what());
    }
    config_error("field '" + family_key + "': unknown family '" + family +
                 "' (power | exponential | logarithmic | tabulated)");
}

// The endpoint-dependent families have domain constraints (e.g. Delta/b > -1)
// that are already decidable here; surface them as validation errors rather
// than run-time failures.
void check_control_profile(const ControlFunction& control, int steps, double delta,
                           const std::string& field) {
    if (delta == 0.0) return;
    try {
        control.normalized(0, steps, delta);
    } catch (const std::exception& e) {
        config_error("field '" + field + "': " + e.what());
    }
}

std::optional<double> control_shape_param(const ControlFunction& control) {
    return std::visit(
        [](const auto& f) -> std::optional<double> {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, ControlFunction::PowerLaw>) return f.n;
            else if constexpr (std::is_same_v<F, ControlFunction::Exponential>) return f.b;
            else if constexpr (std::is_same_v<F, ControlFunction::Logarithmic>) return f.a;
            else return std::nullopt;
        },
        control.family());
}

CycleSpec parse_cycle_spec(ConfigReader& r, bool with_hot_control) {
    CycleSpec spec;
    spec.hot = parse_bath(r, "beta_H", "T_H", "gamma_H");
    spec.cold = parse_bath(r, "beta_C", "T_C", "gamma_C");
    spec.E_H0 = r.number("E_H0");
    spec.E_HN = r.number("E_HN");
    spec.N_H = r.integer("N_H");
    spec.N_C = r.integer("N_C");
    if (with_hot_control) spec.control_H = parse_control(r, "_H");
    spec.control_C = parse_control(r, "_C");
    spec.tau_H = r.auto_or_number("tau_H");
    spec.tau_C = r.auto_or_number("tau_C");
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        config_error(e.what());
    }
    const ColdEndpoints cold = adiabat_endpoints(spec);
    if (with_hot_control)
        check_control_profile(spec.control_H, spec.N_H, spec.E_HN - spec.E_H0, "control_H");
    check_control_profile(spec.control_C, spec.N_C, cold.end - cold.start, "control_C");
    return spec;
}

}  // namespace

const char* RunConfig::kind_name() const {
    return std::visit(
        [](const auto& e) -> const char* {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, DipExperiment>) return "dip";
            else if constexpr (std::is_same_v<E, CycleExperiment>) return "cycle";
            else if constexpr (std::is_same_v<E, SweepNExperiment>) return "sweep-n";
            else if constexpr (std::is_same_v<E, SweepNhExperiment>) return "sweep-nh";
            else return "emp-curve";
        },
        experiment);
}

RunConfig parse_config(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    ConfigReader r(doc);

    RunConfig cfg;
    const std::string kind = r.text("kind");

    const std::string mode = r.text_or("mode", "exact");
    if (mode == "exact") cfg.mode = SimulationMode::exact;
    else if (mode == "dynamics") cfg.mode = SimulationMode::dynamics;
    else config_error("field 'mode': expected \"exact\" or \"dynamics\"");

    const std::string format = r.text_or("format", "csv");
    if (format == "csv") cfg.format = OutputFormat::csv;
    else if (format == "json") cfg.format = OutputFormat::json;
    else config_error("field 'format': expected \"csv\" or \"json\"");

    const std::string policy = r.text_or("on_error", "fail-fast");
    if (policy == "fail-fast") cfg.on_error = ErrorPolicy::fail_fast;
    else if (policy == "collect-errors") cfg.on_error = ErrorPolicy::collect_errors;
    else config_error("field 'on_error': expected \"fail-fast\" or \"collect-errors\"");

    cfg.out = r.text_or("out", "");
    cfg.seed = r.uinteger_or("seed", 0);

    if (kind == "dip") {
        DipExperiment e;
        e.bath = parse_bath(r, "beta", "T", "gamma", 1.0);
        e.E0 = r.number("E0");
        e.EN = r.number("EN");
        require_positive(e.E0, "E0");
        require_positive(e.EN, "EN");
        e.N = r.integer("N");
        if (e.N < 1) config_error("field 'N': must be >= 1");
        e.tau = r.auto_or_number("tau");
        e.control = parse_control(r, "");
        if (const auto* tab = std::get_if<ControlFunction::Tabulated>(&e.control.family())) {
            if (static_cast<int>(tab->values.size()) != e.N + 1)
                config_error("field 'values': tabulated control needs N+1 samples");
        }
        check_control_profile(e.control, e.N, e.EN - e.E0, "control");
        cfg.experiment = std::move(e);
    } else if (kind == "sweep-n") {
        SweepNExperiment e;
        e.bath = parse_bath(r, "beta", "T", "gamma", 1.0);
        e.E0 = r.number("E0");
        e.EN = r.number("EN");
        require_positive(e.E0, "E0");
        require_positive(e.EN, "EN");
        e.tau = r.auto_or_number("tau");
        const std::vector<int> n_values_int = r.integer_list("N_values");
        for (int n : n_values_int)
            if (n < 1) config_error("field 'N_values': entries must be >= 1");
        require_increasing(n_values_int, "N_values");
        e.N_values = n_values_int;

        const std::string family = r.text("control");
        if (family == "power") {
            std::vector<double> exponents;
            if (r.has("n_values") && r.has("n"))
                config_error("give either 'n' or 'n_values', not both");
            if (r.has("n_values")) {
                exponents = r.number_list("n_values");
                require_increasing(exponents, "n_values");
            } else {
                exponents.push_back(r.number("n"));
            }
            for (double n : exponents) {
                try {
                    e.curves.emplace_back(n, ControlFunction::power_law(n));
                } catch (const std::invalid_argument& err) {
                    config_error(err.what());
                }
            }
        } else if (family == "exponential" || family == "logarithmic") {
            const std::string key = family == "exponential" ? "b" : "a";
            const double p = r.number(key);
            try {
                e.curves.emplace_back(p, family == "exponential"
                                             ? ControlFunction::exponential(p)
                                             : ControlFunction::logarithmic(p));
            } catch (const std::invalid_argument& err) {
                config_error(err.what());
            }
        } else if (family == "tabulated") {
            config_error("field 'control': tabulated controls cannot be swept over N");
        } else {
            config_error("field 'control': unknown family '" + family + "'");
        }
        for (const auto& [param, control] : e.curves)
            check_control_profile(control, e.N_values.front(), e.EN - e.E0, "control");
        cfg.experiment = std::move(e);
    } else if (kind == "cycle") {
        CycleExperiment e;
        e.spec = parse_cycle_spec(r, true);
        e.optimize = r.boolean_or("optimize", false);
        if (e.optimize && cfg.mode != SimulationMode::dynamics)
            config_error("field 'optimize': requires mode \"dynamics\"");
        cfg.experiment = std::move(e);
    } else if (kind == "sweep-nh") {
        SweepNhExperiment e;
        e.base = parse_cycle_spec(r, false);
        e.nH_values = r.number_list("nH_values");
        require_increasing(e.nH_values, "nH_values");
        for (double n : e.nH_values)
            if (!(n > 0.0)) config_error("field 'nH_values': n > 0 required");
        e.optimize = r.boolean_or("optimize", false);
        if (e.optimize && cfg.mode != SimulationMode::dynamics)
            config_error("field 'optimize': requires mode \"dynamics\"");
        cfg.experiment = std::move(e);
    } else if (kind == "emp-curve") {
        EmpCurveExperiment e;
        e.etaC_values = r.number_list("etaC_values");
        require_increasing(e.etaC_values, "etaC_values");
        for (double x : e.etaC_values)
            if (!(x > 0.0 && x < 1.0))
                config_error("field 'etaC_values': entries must lie in (0,1)");
        if (r.has("nH_values")) {
            e.nH_values = r.number_list("nH_values");
            require_increasing(e.nH_values, "nH_values");
            for (double n : e.nH_values)
                if (!(n > 0.0)) config_error("field 'nH_values': n > 0 required");
        }
        e.n_C = r.number_or("n_C", 1.0);
        if (!(e.n_C > 0.0)) config_error("field 'n_C': n > 0 required");
        e.gamma_ratio = r.number_or("gamma_ratio", 1.0);
        require_positive(e.gamma_ratio, "gamma_ratio");
        e.profile_steps = r.integer_or("N", 10000);
        if (e.profile_steps < 2) config_error("field 'N': must be >= 2");
        const bool dynamics = cfg.mode == SimulationMode::dynamics;
        for (const char* key : {"T_H", "E_H0", "E_HN", "gamma_H"}) {
            if (r.has(key) && !dynamics)
                config_error(std::string("field '") + key +
                             "': only applies to emp-curve in dynamics mode");
        }
        if (dynamics) {
            e.T_H = r.number_or("T_H", 10.0);
            require_positive(e.T_H, "T_H");
            e.E_H0 = r.number_or("E_H0", e.T_H);
            e.E_HN = r.number_or("E_HN", 0.6 * e.T_H);
            require_positive(e.E_H0, "E_H0");
            require_positive(e.E_HN, "E_HN");
            if (e.E_H0 == e.E_HN) config_error("field 'E_HN': must differ from E_H0");
            e.gamma_H = r.number_or("gamma_H", 1.0);
            require_positive(e.gamma_H, "gamma_H");
        }
        cfg.experiment = std::move(e);
    } else {
        config_error("field 'kind': unknown experiment kind '" + kind +
                     "' (dip | cycle | sweep-n | sweep-nh | emp-curve)");
    }

    r.finish();
    return cfg;
}

// ------------------------------------------------------------------ running --

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

CellValue cell(double v) { return v; }
CellValue cell(std::int64_t v) { return v; }
CellValue cell(const char* v) { return std::string(v); }
CellValue cell(std::optional<double> v) { return v ? *v : nan_value; }

template <typename MakeRow>
void collect_rows(const RunConfig& cfg, std::size_t count, ResultTable& table,
                  MakeRow&& make_row) {
    for (std::size_t i = 0; i < count; ++i) {
        try {
            table.rows.push_back(make_row(i));
        } catch (const std::exception& e) {
            if (cfg.on_error == ErrorPolicy::fail_fast) throw;
            table.row_errors.push_back("row " + std::to_string(i) + ": " + e.what());
        }
    }
}

ResultTable run_dip_kind(const RunConfig& cfg, const DipExperiment& e) {
    ResultTable t;
    t.columns = {"beta",     "gamma",      "E0",       "EN",
                 "N",        "tau",        "control",  "control_param",
                 "delta_Q",  "delta_S",    "s_ir",     "s_ir_analytic",
                 "theta",    "xi",         "v_bar_mean", "v_sq_mean",
                 "v_bar_sq_mean", "mode"};
    collect_rows(cfg, 1, t, [&](std::size_t) {
        const double tau = e.tau ? *e.tau : default_step_time(e.bath, e.E0).tau;
        const auto schedule = two_level_schedule(e.E0, e.EN, e.control, e.N, tau);
        const DipResult r = cfg.mode == SimulationMode::exact
                                ? run_dip_exact(schedule, e.bath)
                                : run_dip_dynamics(schedule, e.bath);
        const SpeedFormResult analytic = s_ir_speed_form(schedule, e.bath);
        return std::vector<CellValue>{
            cell(e.bath.beta), cell(e.bath.gamma), cell(e.E0), cell(e.EN),
            cell(static_cast<std::int64_t>(e.N)), cell(tau), cell(e.control.family_name()),
            cell(control_shape_param(e.control)), cell(r.delta_Q), cell(r.delta_S),
            cell(r.s_ir), cell(analytic.s_ir), cell(r.theta), cell(r.xi),
            cell(r.moments.v_bar_mean), cell(r.moments.v_sq_mean),
            cell(r.moments.v_bar_sq_mean), cell(to_string(cfg.mode))};
    });
    return t;
}

ResultTable run_sweep_n(const RunConfig& cfg, const SweepNExperiment& e) {
    ResultTable t;
    t.columns = {"beta", "gamma", "E0",           "EN",            "tau",
                 "control", "n",  "N",            "s_ir_numeric",  "s_ir_analytic",
                 "s_ir_times_N", "mode"};
    const double tau = e.tau ? *e.tau : default_step_time(e.bath, e.E0).tau;
    const std::size_t per_curve = e.N_values.size();
    collect_rows(cfg, e.curves.size() * per_curve, t, [&](std::size_t i) {
        const auto& [param, control] = e.curves[i / per_curve];
        const int steps = e.N_values[i % per_curve];
        const auto schedule = two_level_schedule(e.E0, e.EN, control, steps, tau);
        const double numeric = cfg.mode == SimulationMode::exact
                                   ? run_dip_exact(schedule, e.bath).s_ir
                                   : run_dip_dynamics(schedule, e.bath).s_ir;
        const double analytic = s_ir_speed_form(schedule, e.bath).s_ir;
        return std::vector<CellValue>{
            cell(e.bath.beta), cell(e.bath.gamma), cell(e.E0), cell(e.EN), cell(tau),
            cell(control.family_name()), cell(param), cell(static_cast<std::int64_t>(steps)),
            cell(numeric), cell(analytic), cell(numeric * steps), cell(to_string(cfg.mode))};
    });
    return t;
}

std::vector<std::string> cycle_columns() {
    return {"eta_C", "n_H",  "n_C",     "gamma_ratio", "sigma_H", "sigma_C",
            "t_H",   "t_C",  "Q_H",     "Q_C",         "W",       "P",
            "eta",   "eta_emp", "eta_plus", "eta_ca",  "P_max",   "mode"};
}

std::vector<CellValue> cycle_row(const CycleSpec& spec, const EngineReport& report,
                                 bool optimized) {
    const auto power_exponent = [](const ControlFunction& c) -> std::optional<double> {
        if (const auto* p = std::get_if<ControlFunction::PowerLaw>(&c.family())) return p->n;
        return std::nullopt;
    };
    return {cell(carnot_efficiency(spec.hot.T, spec.cold.T)),
            cell(power_exponent(spec.control_H)),
            cell(power_exponent(spec.control_C)),
            cell(spec.hot.gamma / spec.cold.gamma),
            cell(report.sigma_H),
            cell(report.sigma_C),
            cell(report.t_H),
            cell(report.t_C),
            cell(report.Q_H),
            cell(report.Q_C),
            cell(report.W),
            cell(report.P),
            cell(report.eta),
            cell(report.eta_emp),
            cell(report.eta_plus),
            cell(report.eta_ca),
            cell(report.P_max),
            cell(optimized ? "dynamics-opt" : to_string(report.mode))};
}

ResultTable run_cycle_kind(const RunConfig& cfg, const CycleExperiment& e) {
    ResultTable t;
    t.columns = cycle_columns();
    collect_rows(cfg, 1, t, [&](std::size_t) {
        const EngineReport report = simulate_cycle(e.spec, cfg.mode, e.optimize);
        return cycle_row(e.spec, report, e.optimize);
    });
    return t;
}

ResultTable run_sweep_nh(const RunConfig& cfg, const SweepNhExperiment& e) {
    ResultTable t;
    t.columns = cycle_columns();
    t.columns.insert(t.columns.end() - 1, "delta_S");
    t.columns.insert(t.columns.end() - 1, "closure_defect");
    collect_rows(cfg, e.nH_values.size(), t, [&](std::size_t i) {
        CycleSpec spec = e.base;
        spec.control_H = ControlFunction::power_law(e.nH_values[i]);
        const EngineReport report = simulate_cycle(spec, cfg.mode, e.optimize);
        auto row = cycle_row(spec, report, e.optimize);
        row.insert(row.end() - 1, cell(report.delta_S));
        row.insert(row.end() - 1, cell(report.closure_defect));
        return row;
    });
    return t;
}

// xi measured from the discrete profile; power-law profiles do not depend on
// the endpoints, so a fixed reference gap is used.
double measured_profile_xi(const ControlFunction& control, int steps) {
    const auto schedule = two_level_schedule(2.0, 1.0, control, steps, 1.0);
    const auto sf = s_ir_speed_form(schedule, BathSpec::from_beta(1.0, 1.0));
    return *sf.xi;
}

ResultTable run_emp_curve(const RunConfig& cfg, const EmpCurveExperiment& e) {
    ResultTable t;
    t.columns = {"eta_C",   "n_H",     "n_C",          "gamma_ratio",
                 "xi_H",    "xi_C",    "sigma_ratio",  "eta_emp",
                 "eta_emp_measured",   "eta_ca",       "eta_plus",
                 "mode"};
    const double xi_C = measured_profile_xi(ControlFunction::power_law(e.n_C), e.profile_steps);
    std::vector<double> xi_H(e.nH_values.size());
    for (std::size_t k = 0; k < e.nH_values.size(); ++k)
        xi_H[k] = measured_profile_xi(ControlFunction::power_law(e.nH_values[k]),
                                      e.profile_steps);

    const std::size_t per_curve = e.etaC_values.size();
    collect_rows(cfg, e.nH_values.size() * per_curve, t, [&](std::size_t i) {
        const std::size_t k = i / per_curve;
        const double n_H = e.nH_values[k];
        const double eta_C = e.etaC_values[i % per_curve];
        const double sigma_ratio = (xi_C / xi_H[k]) * e.gamma_ratio;  // Sigma_C / Sigma_H
        const double eta_emp = emp_full(1.0, sigma_ratio, 1.0, 1.0 - eta_C);

        double measured = nan_value;
        if (cfg.mode == SimulationMode::dynamics) {
            CycleSpec spec;
            spec.hot = BathSpec::from_temperature(e.T_H, e.gamma_H);
            spec.cold = BathSpec::from_temperature((1.0 - eta_C) * e.T_H,
                                                   e.gamma_H / e.gamma_ratio);
            spec.E_H0 = e.E_H0;
            spec.E_HN = e.E_HN;
            spec.N_H = spec.N_C = 64;
            spec.control_H = ControlFunction::power_law(n_H);
            spec.control_C = ControlFunction::power_law(e.n_C);
            measured = simulate_cycle(spec, SimulationMode::dynamics, true).eta_emp;
        }
        return std::vector<CellValue>{
            cell(eta_C), cell(n_H), cell(e.n_C), cell(e.gamma_ratio), cell(xi_H[k]),
            cell(xi_C), cell(sigma_ratio), cell(eta_emp), cell(measured),
            cell(curzon_ahlborn_efficiency(eta_C)), cell(emp_upper_bound(eta_C)),
            cell(to_string(cfg.mode))};
    });
    return t;
}

}  // namespace

ResultTable run_experiment(const RunConfig& config) {
    return std::visit(
        [&](const auto& e) -> ResultTable {
            using E = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<E, DipExperiment>) return run_dip_kind(config, e);
            else if constexpr (std::is_same_v<E, CycleExperiment>) return run_cycle_kind(config, e);
            else if constexpr (std::is_same_v<E, SweepNExperiment>) return run_sweep_n(config, e);
            else if constexpr (std::is_same_v<E, SweepNhExperiment>) return run_sweep_nh(config, e);
            else return run_emp_curve(config, e);
        },
        config.experiment);
}

// ----------------------------------------------------------------- emission --

namespace {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_field(const CellValue& value) {
    if (const auto* d = std::get_if<double>(&value)) return format_double(*d);
    if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
    const std::string& s = std::get<std::string>(value);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void check_table(const ResultTable& table) {
    if (table.rows.empty())
        throw std::invalid_argument("emit: no rows to emit");
    for (const auto& row : table.rows)
        if (row.size() != table.columns.size())
            throw std::invalid_argument("emit: row width does not match the column set");
}

}  // namespace

std::string render_csv(const ResultTable& table) {
    check_table(table);
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += csv_field(CellValue{table.columns[c]});
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += csv_field(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const ResultTable& table) {
    check_table(table);
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json obj = ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto& name = table.columns[c];
            if (const auto* d = std::get_if<double>(&row[c])) obj[name] = *d;
            else if (const auto* i = std::get_if<std::int64_t>(&row[c])) obj[name] = *i;
            else obj[name] = std::get<std::string>(row[c]);
        }
        rows.push_back(std::move(obj));
    }
    return rows.dump(2) + "\n";
}

void emit(const ResultTable& table, OutputFormat format, const std::string& path) {
    const std::string payload =
        format == OutputFormat::csv ? render_csv(table) : render_json(table);
    if (path.empty() || path == "-") {
        std::cout << payload;
        if (!std::cout) throw std::runtime_error("emit: write to stdout failed");
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    file << payload;
    file.flush();
    if (!file) throw std::runtime_error("emit: write failed for '" + path + "'");
}

}  // namespace stepwise::harness
