#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pscl/cli.hpp"
#include "pscl/report.hpp"

namespace {

// "40x512" -> length 40, 512 points
bool parse_grid(const std::string& s, double& length, int& points) {
    auto x = s.find('x');
    if (x == std::string::npos) return false;
    try {
        length = std::stod(s.substr(0, x));
        points = std::stoi(s.substr(x + 1));
    } catch (...) {
        return false;
    }
    return length > 0 && points > 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudospherical-surface toolkit: structure checks, "
                 "conservation-law hierarchies, Riccati/linear flow equivalences, "
                 "and conserved-integral drift benches"};
    app.set_version_flag("--version", pscl::tool_version());
    app.require_subcommand(1);

    pscl::RunManifest man;
    std::string grid;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--model", man.model_path, "model file")->required();
        sub->add_option("--out", man.out_dir, "directory for report files");
        sub->add_option("--seed", man.seed, "seed for numeric probe points");
    };

    CLI::App* check = app.add_subcommand("check", "verify the structure equations");
    add_common(check);

    CLI::App* laws = app.add_subcommand("laws", "emit and verify the conservation-law hierarchy");
    add_common(laws);
    laws->add_option("--n", man.n_laws, "number of laws to generate");
    laws->add_flag("--mirror", man.mirror, "also emit the role-swapped hierarchy");

    CLI::App* riccati = app.add_subcommand("riccati", "flow equivalence and closedness checks");
    add_common(riccati);
    riccati->add_option("--eta", man.etas, "spectral parameter values");

    CLI::App* bench = app.add_subcommand("bench", "evolve and measure conserved-integral drift");
    add_common(bench);
    bench->add_option("--n", man.n_laws, "number of laws to track");
    bench->add_option("--grid", grid, "periodic grid as LxN, e.g. 40x512");
    bench->add_option("--tmax", man.t_max, "final time");
    bench->add_option("--dt", man.dt, "time step");
    bench->add_option("--save-every", man.save_every, "steps between saved frames");
    bench->add_option("--init", man.init, "initial data: gaussian | solution | exact");

    CLI11_PARSE(app, argc, argv);

    if (!grid.empty()) {
        if (!parse_grid(grid, man.grid_length, man.grid_points)) {
            std::cerr << "bad --grid value, expected LxN\n";
            return 2;
        }
        man.grid_default = false;
    }
    man.command = app.get_subcommands().front()->get_name();
    return pscl::run_command(man, std::cout, std::cerr);
}
