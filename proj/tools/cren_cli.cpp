// cren: negativity and convex-roof extended negativity of bipartite states.
//
//   cren measure <file> --measure <negativity|cren-pure|cren-opt|concurrence|...>
//   cren family <isotropic|werner> --d D --param P --out FILE
//   cren sweep <isotropic|werner> --d D --grid a:b:step --mode <closed|optimized|both> --out FILE

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cren/commands.hpp"

namespace {

int emit(const cren::CommandOutput& result) {
    std::cout << result.out;
    std::cerr << result.err;
    return result.exit_code;
}

void add_optimizer_flags(CLI::App* cmd, cren::OptimizerConfig& cfg) {
    cmd->add_option("--restarts", cfg.restarts, "Random restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", cfg.max_iterations, "Iteration cap per refinement stage")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--ensemble-size", cfg.ensemble_size,
                    "Decomposition size K (0 = min(2r, r+4))")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Negativity and convex-roof extended negativity of bipartite quantum states"};
    app.require_subcommand(1);

    cren::MeasureOptions measure;
    std::string measure_file;
    std::string measure_name = "negativity";
    auto* m = app.add_subcommand("measure", "Evaluate a measure on a state file");
    m->add_option("file", measure_file, "State file (JSON)")->required();
    m->add_option("--measure", measure_name,
                  "negativity | cren-pure | cren-opt | concurrence | cren-isotropic | cren-werner")
        ->capture_default_str();
    m->add_flag("--strict", measure.strict, "Exit 4 if the optimizer does not converge");
    add_optimizer_flags(m, measure.optimizer);

    std::string family_kind;
    int family_d = 2;
    double family_param = 0.0;
    std::string family_out;
    auto* f = app.add_subcommand("family", "Write an isotropic or Werner state file");
    f->add_option("family", family_kind, "isotropic | werner")->required();
    f->add_option("--d", family_d, "Local dimension")->required();
    f->add_option("--param", family_param, "F (isotropic) or W (Werner)")->required();
    f->add_option("--out", family_out, "Output file")->required();

    std::string sweep_kind;
    int sweep_d = 2;
    std::string sweep_grid;
    std::string sweep_mode = "closed";
    std::string sweep_out;
    cren::OptimizerConfig sweep_cfg;
    auto* s = app.add_subcommand("sweep", "Tabulate negativity against CREN over a parameter grid");
    s->add_option("family", sweep_kind, "isotropic | werner")->required();
    s->add_option("--d", sweep_d, "Local dimension")->required();
    s->add_option("--grid", sweep_grid, "start:stop:step")->required();
    s->add_option("--mode", sweep_mode, "closed | optimized | both")->capture_default_str();
    s->add_option("--out", sweep_out, "Output CSV")->required();
    add_optimizer_flags(s, sweep_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cren::kExitInputError;
    }

    if (m->parsed()) {
        const auto kind = cren::parse_measure_kind(measure_name);
        if (!kind) {
            std::cerr << "error: unknown measure '" << measure_name << "'\n";
            return cren::kExitInputError;
        }
        measure.measure = *kind;
        return emit(cren::cmd_measure(measure_file, measure));
    }
    if (f->parsed()) {
        const auto family = cren::parse_family(family_kind);
        if (!family) {
            std::cerr << "error: unknown family '" << family_kind << "'\n";
            return cren::kExitInputError;
        }
        return emit(cren::cmd_family(*family, family_d, family_param, family_out));
    }
    if (s->parsed()) {
        const auto family = cren::parse_family(sweep_kind);
        if (!family) {
            std::cerr << "error: unknown family '" << sweep_kind << "'\n";
            return cren::kExitInputError;
        }
        const auto mode = cren::parse_sweep_mode(sweep_mode);
        if (!mode) {
            std::cerr << "error: unknown mode '" << sweep_mode << "'\n";
            return cren::kExitInputError;
        }
        return emit(cren::cmd_sweep(*family, sweep_d, sweep_grid, *mode, sweep_out, sweep_cfg));
    }
    return cren::kExitInputError;
}
