#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qric/model.hpp"
#include "qric/riccati.hpp"
#include "qric/tolerances.hpp"

namespace qric {

enum class SolverChoice { invariant_subspace, newton, analytic, all };

std::string to_string(SolverChoice s);
SolverChoice solver_from_string(const std::string& s);

// Fully explicit model: the caller supplies the qubit operator, the
// environment operator, and the coupling terms as matrices.
struct CustomTermsParams {
    Matrix2c h_q;
    ComplexMatrix h_env;
    std::vector<SystemTerm> couplings;
};

struct SweepSpec {
    std::string param;           // must exist for the chosen model
    std::vector<double> values;  // nonempty
};

// One batch-run description, deserialized from the JSON config format:
//
//   {"model": "spin_boson" | "commuting" | "custom_terms",
//    "params": {...},
//    "solver": "invariant_subspace" | "newton" | "analytic" | "all",
//    "strategy": "spectral_bottom" | "max_invertibility" | "exhaustive",
//    "tolerances": {"tol_acc": 1e-8, ...},
//    "times": [0.1, 1, 10, 100],
//    "sweep": {"param": "g", "values": [...]},
//    "seed": 42, "out": "report.json", "csv": "sweep.csv", "workers": 1}
//
// Complex scalars are two-element arrays [re, im] (plain numbers accepted as
// real); matrices are row-major nested arrays of complex scalars.
struct RunConfig {
    std::variant<SpinBosonParams, CommutingParams, CustomTermsParams> params;
    SolverChoice solver = SolverChoice::invariant_subspace;
    SelectionStrategy strategy = SelectionStrategy::max_invertibility;
    Tolerances tolerances;
    std::vector<double> times{0.1, 1.0, 10.0, 100.0};
    std::optional<SweepSpec> sweep;
    std::uint64_t seed = 42;
    std::string out = "report.json";
    std::optional<std::string> csv;
    int workers = 1;

    std::string model_name() const;  // "spin_boson" / "commuting" / "custom_terms"
};

// Throws InvalidConfig on malformed JSON, unknown keys where a strict set is
// expected, parameter invariant violations, unknown tolerance names, empty or
// non-positive entries, or a sweep parameter the model does not have.
RunConfig parse_config_text(const std::string& json_text);
RunConfig load_config_file(const std::string& path);

// Canonical JSON echo of a parsed config. parse_config_text(to_json_text(c))
// reproduces c exactly (doubles round-trip losslessly).
std::string to_json_text(const RunConfig& cfg);

// Copy of `base` with the swept parameter set to `value` and the sweep block
// cleared; used once per sweep point.
RunConfig with_sweep_value(const RunConfig& base, double value);

}  // namespace qric
