#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qric/config.hpp"
#include "qric/stationary.hpp"
#include "qric/verify.hpp"

namespace qric {

// One solution as reported: the matrix plus its certification numbers.
struct SolutionRecord {
    int index = 0;
    RiccatiSolution solution;
};

// One stationary state as reported. `r` (= 2 Re rho_01, the coherence in the
// sigma_x parametrization rho = (I + r sigma_x)/2 of the parity states) is
// attached for spin-boson runs only.
struct StateRecord {
    int solution_index = 0;
    int state_index = 0;  // position in the flattened state list
    Matrix2c rho;
    double eigenvalue = 0.0;
    VectorKind kind = VectorKind::graph;
    std::optional<double> r;
    bool in_cluster = false;
    double stationarity_defect = 0.0;  // carried into the sweep CSV
};

struct RunReport {
    std::string config_echo;  // canonical JSON text of the executed config
    std::vector<SolutionRecord> solutions;
    std::vector<StateRecord> states;
    VerificationReport verification;
    std::vector<std::pair<std::string, double>> timing;  // phase -> seconds
    bool overall_pass = false;
};

// Serializes the report (complex scalars as [re, im], matrices row-major).
std::string report_to_json(const RunReport& report);

// Combined sweep table. Rows are sorted by (sweep value, eigenvalue, state
// index); columns: sweep_value, state_index, eigenvalue, r_real, defect.
// r_real falls back to 2 Re rho_01 when no r was attached.
std::string sweep_csv(const std::vector<std::pair<double, RunReport>>& runs);

}  // namespace qric
