// harness.hpp — Experiment configuration, orchestration, CSV/JSON emission.

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "stepwise/core_model.hpp"
#include "stepwise/cycle.hpp"

namespace stepwise::harness {

enum class OutputFormat { csv, json };
enum class ErrorPolicy { fail_fast, collect_errors };

struct DipExperiment {
    BathSpec bath;
    double E0{0.0};
    double EN{0.0};
    int N{1};
    std::optional<double> tau;  // empty: beta*E0/gamma
    ControlFunction control{ControlFunction::power_law(1.0)};
};

struct SweepNExperiment {
    BathSpec bath;
    double E0{0.0};
    double EN{0.0};
    std::optional<double> tau;
    // One curve per control; the double is the shape parameter shown in the
    // "n" column (power exponent, or b / a for the other families).
    std::vector<std::pair<double, ControlFunction>> curves;
    std::vector<int> N_values;
};

struct CycleExperiment {
    CycleSpec spec;
    bool optimize{false};
};

struct SweepNhExperiment {
    CycleSpec base;  // control_H is replaced per row
    std::vector<double> nH_values;
    bool optimize{false};
};

struct EmpCurveExperiment {
    std::vector<double> etaC_values;
    std::vector<double> nH_values{1.0};
    double n_C{1.0};
    double gamma_ratio{1.0};   // gamma_H / gamma_C
    int profile_steps{10000};  // N used to measure xi from the discrete profile
    // Absolute scales, used only for the dynamics-route measurement.
    double T_H{10.0};
    double E_H0{10.0};
    double E_HN{6.0};
    double gamma_H{1.0};
};

struct RunConfig {
    SimulationMode mode{SimulationMode::exact};
    OutputFormat format{OutputFormat::csv};
    ErrorPolicy on_error{ErrorPolicy::fail_fast};
    std::string out;  // empty: stdout
    std::uint64_t seed{0};
    std::variant<DipExperiment, CycleExperiment, SweepNExperiment, SweepNhExperiment,
                 EmpCurveExperiment>
        experiment{DipExperiment{}};

    const char* kind_name() const;
};

using CellValue = std::variant<double, std::int64_t, std::string>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<CellValue>> rows;
    std::vector<std::string> row_errors;  // collect-errors mode only
};

/// Parses and fully validates a flat JSON configuration document.  Unknown
/// keys, keys that do not apply to the experiment kind, and out-of-range
/// values are hard errors naming the offending field.
RunConfig parse_config(const std::string& text);

/// Runs the configured experiment.  Deterministic for a fixed config and
/// seed: rows follow the declared grid order.
ResultTable run_experiment(const RunConfig& config);

/// Writes the table to `path` (empty or "-": stdout).  CSV: RFC 4180 quoting,
/// '\n' line endings, doubles with 17 significant digits.  JSON: array of
/// flat objects with the same field names.
void emit(const ResultTable& table, OutputFormat format, const std::string& path);

std::string render_csv(const ResultTable& table);
std::string render_json(const ResultTable& table);

}  // namespace stepwise::harness
