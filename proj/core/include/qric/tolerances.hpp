#pragma once

#include <map>
#include <string>

#include "qric/errors.hpp"

namespace qric {

// One bag of knobs for the whole pipeline. Every threshold used anywhere in
// the library lives here so a run is fully described by its config.
//
// Scale conventions:
//   *_rel   multiplied by a Frobenius norm of the operator it gates,
//   tol_eig multiplied by the matrix dimension,
//   the rest are absolute.
struct Tolerances {
    double tol_eig = 1e-11;          // eigh accuracy, per dimension
    double tol_herm = 1e-10;         // Hermiticity precondition, relative
    double tol_solve = 1e-10;        // linear solve residual, relative
    double tol_cluster = 1e-9;       // eigenvalue cluster gap, x ||A||_F
    double tol_acc = 1e-8;           // Riccati residual acceptance, x ||H||_F
    double tol_sylv = 1e-10;         // Sylvester residual, x (||A||+||B||)||D||
    double kappa_floor = 1e-12;      // linear solve singularity gate, x sigma_max
    double w1_floor = 1e-8;          // sigma_min(W1) for a usable graph selection
    double gap_min = 1e-10;          // Sylvester spectra separation, x (||A||+||B||)
    double dedup = 1e-6;             // Frobenius distance below which X's are "the same"
    double sim_defect = 1e-8;        // Hermiticity of the weighted similarity, relative
    double defect_threshold = 1e-8;  // verification defects
    double control_min = 1e-3;       // minimum deviation a useful negative control shows

    double eig_abs(long dim) const { return tol_eig * static_cast<double>(dim); }
    double acc_abs(double h_norm) const { return tol_acc * h_norm; }

    // Named access for config files and --tol KEY=VAL overrides.
    void set(const std::string& name, double value);
    double get(const std::string& name) const;
    static const std::map<std::string, double Tolerances::*>& fields();
};

inline const std::map<std::string, double Tolerances::*>& Tolerances::fields() {
    static const std::map<std::string, double Tolerances::*> m = {
        {"tol_eig", &Tolerances::tol_eig},
        {"tol_herm", &Tolerances::tol_herm},
        {"tol_solve", &Tolerances::tol_solve},
        {"tol_cluster", &Tolerances::tol_cluster},
        {"tol_acc", &Tolerances::tol_acc},
        {"tol_sylv", &Tolerances::tol_sylv},
        {"kappa_floor", &Tolerances::kappa_floor},
        {"w1_floor", &Tolerances::w1_floor},
        {"gap_min", &Tolerances::gap_min},
        {"dedup", &Tolerances::dedup},
        {"sim_defect", &Tolerances::sim_defect},
        {"defect_threshold", &Tolerances::defect_threshold},
        {"control_min", &Tolerances::control_min},
    };
    return m;
}

inline void Tolerances::set(const std::string& name, double value) {
    auto it = fields().find(name);
    if (it == fields().end()) throw InvalidConfig("unknown tolerance: " + name);
    if (!(value > 0.0)) throw InvalidConfig("tolerance " + name + " must be > 0");
    this->*(it->second) = value;
}

inline double Tolerances::get(const std::string& name) const {
    auto it = fields().find(name);
    if (it == fields().end()) throw InvalidConfig("unknown tolerance: " + name);
    return this->*(it->second);
}

}  // namespace qric
