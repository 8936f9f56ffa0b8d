#include "qric/report.hpp"

#include <algorithm>
#include <cstdio>

#include "json_io.hpp"

namespace qric {

using jio::json;

namespace {

json solution_to_json(const SolutionRecord& rec) {
    json j;
    j["index"] = rec.index;
    j["method"] = to_string(rec.solution.method);
    j["residual_primal"] = rec.solution.residual_primal;
    j["residual_dual"] = rec.solution.residual_dual;
    j["cluster_split"] = rec.solution.cluster_split;
    if (rec.solution.selection) j["selection"] = *rec.solution.selection;
    if (!rec.solution.residual_history.empty())
        j["residual_history"] = rec.solution.residual_history;
    j["x"] = jio::matrix_to(rec.solution.x);
    return j;
}

json state_to_json(const StateRecord& rec) {
    json j;
    j["solution_index"] = rec.solution_index;
    j["state_index"] = rec.state_index;
    j["kind"] = to_string(rec.kind);
    j["eigenvalue"] = rec.eigenvalue;
    j["rho"] = jio::matrix_to(rec.rho);
    if (rec.r) j["r"] = *rec.r;
    j["in_cluster"] = rec.in_cluster;
    j["stationarity_defect"] = rec.stationarity_defect;
    return j;
}

json verification_to_json(const VerificationReport& v) {
    json checks = json::array();
    for (const CheckRecord& c : v.checks)
        checks.push_back(json{{"name", c.name},
                              {"defect", c.defect},
                              {"threshold", c.threshold},
                              {"pass", c.pass}});
    return json{{"overall_pass", v.overall_pass},
                {"times_sampled", v.times_sampled},
                {"checks", std::move(checks)}};
}

// Shortest-exact decimal form so CSV files are byte-stable across runs and
// lossless to re-read.
std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
    json j;
    j["config"] = json::parse(report.config_echo);
    json solutions = json::array();
    for (const SolutionRecord& rec : report.solutions)
        solutions.push_back(solution_to_json(rec));
    j["solutions"] = std::move(solutions);
    json states = json::array();
    for (const StateRecord& rec : report.states) states.push_back(state_to_json(rec));
    j["states"] = std::move(states);
    j["verification"] = verification_to_json(report.verification);
    json timing = json::object();
    for (const auto& [phase, seconds] : report.timing) timing[phase] = seconds;
    j["timing"] = std::move(timing);
    j["overall_pass"] = report.overall_pass;
    return j.dump(2);
}

std::string sweep_csv(const std::vector<std::pair<double, RunReport>>& runs) {
    struct Row {
        double sweep_value;
        int state_index;
        double eigenvalue;
        double r_real;
        double defect;
    };
    std::vector<Row> rows;
    for (const auto& [value, report] : runs) {
        for (const StateRecord& s : report.states) {
            const double r = s.r ? *s.r : 2.0 * s.rho(0, 1).real();
            rows.push_back({value, s.state_index, s.eigenvalue, r, s.stationarity_defect});
        }
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
        if (a.eigenvalue != b.eigenvalue) return a.eigenvalue < b.eigenvalue;
        return a.state_index < b.state_index;
    });

    std::string out = "sweep_value,state_index,eigenvalue,r_real,defect\n";
    for (const Row& row : rows) {
        out += format_double(row.sweep_value);
        out += ',';
        out += std::to_string(row.state_index);
        out += ',';
        out += format_double(row.eigenvalue);
        out += ',';
        out += format_double(row.r_real);
        out += ',';
        out += format_double(row.defect);
        out += '\n';
    }
    return out;
}

}  // namespace qric
