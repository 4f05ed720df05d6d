#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pscl {

/// Everything a batch run needs; recorded verbatim in every report so a
/// rerun with the same manifest reproduces the output byte for byte.
struct RunManifest {
    std::string model_path;
    std::string command;              // check | laws | riccati | bench
    int n_laws = 6;
    bool mirror = false;              // laws: also emit the swapped hierarchy
    std::vector<double> etas{1.0, 3.0, 10.0};
    double grid_length = 40.0;        // bench: periodic domain length L
    int grid_points = 512;            // bench: grid size N
    bool grid_default = true;         // false once --grid is given explicitly
    double t_max = 1.0;
    double dt = 1e-3;
    int save_every = 100;
    std::string init = "default";     // bench: gaussian | solution | exact
    std::string out_dir;              // empty: stream output only
    unsigned long seed = 12345;
};

/// Exit codes shared by all commands:
///   0 pass, 1 check failure, 2 input error, 3 numeric failure.
int run_check(const RunManifest& man, std::ostream& out, std::ostream& err);
int run_laws(const RunManifest& man, std::ostream& out, std::ostream& err);
int run_riccati(const RunManifest& man, std::ostream& out, std::ostream& err);
int run_bench(const RunManifest& man, std::ostream& out, std::ostream& err);

/// Dispatch on man.command, mapping thrown errors to the exit codes above.
int run_command(const RunManifest& man, std::ostream& out, std::ostream& err);

}  // namespace pscl
