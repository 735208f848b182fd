#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mldiff/assemble.hpp"
#include "mldiff/config.hpp"
#include "mldiff/errors.hpp"
#include "mldiff/mesh.hpp"
#include "mldiff/output.hpp"
#include "mldiff/stability.hpp"
#include "mldiff/stepper.hpp"
#include "mldiff/unknowns.hpp"
#include "mldiff/verify.hpp"

namespace {

using namespace mldiff;
namespace fs = std::filesystem;

constexpr int kExitConfigError = 2;
constexpr int kExitStabilityAbort = 3;
constexpr int kExitNumericalFailure = 4;

struct StabilityAbort : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergedRun : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    bool allow_unstable = false;
    std::string preset = "paper";
};

struct Built {
    RunConfig config;
    Mesh mesh;
    UnknownMap map;
    SemiDiscreteSystem system;
};

Built build(const Options& options) {
    Built built{load_config(options.config_path), {}, {}, {}};
    built.mesh = build_mesh(built.config.problem, built.config.n);
    built.map = index_unknowns(built.config.problem, built.mesh);
    built.system = assemble(built.config.problem, built.mesh, built.map);
    return built;
}

std::ofstream open_out(const Options& options, const std::string& name) {
    fs::create_directories(options.out_dir);
    const fs::path path = fs::path(options.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

int cmd_solve(const Options& options) {
    Built built = build(options);
    const RunConfig& config = built.config;
    if (!config.t_end) throw ConfigError("solve: config needs t_end");

    const StabilityReport report =
        analyze_stability(config.problem, built.mesh, built.system, config.tau);
    double tau = 0.0;
    if (config.tau_is_auto) {
        // largest step <= 0.95 * tau_max that divides t_end and every
        // snapshot evenly: take K as a multiple of the smallest M for which
        // all snapshot/t_end ratios are fractions with denominator M
        long long granularity = 1;
        for (; granularity <= 1000000; ++granularity) {
            bool fits = true;
            for (double t : config.snapshots) {
                const double k = t / *config.t_end * static_cast<double>(granularity);
                if (std::abs(k - std::llround(k)) > 1e-9) fits = false;
            }
            if (fits) break;
        }
        if (granularity > 1000000)
            throw ConfigError("solve: snapshot times are not commensurate with t_end; "
                              "give tau explicitly");
        const double cap = 0.95 * report.table.tau_max;
        const auto blocks = static_cast<long long>(
            std::ceil(*config.t_end / (cap * static_cast<double>(granularity))));
        tau = *config.t_end / static_cast<double>(std::max<long long>(blocks, 1) * granularity);
    } else if (config.tau) {
        tau = *config.tau;
    } else {
        throw ConfigError("solve: config needs tau (a number or \"auto\")");
    }

    if (config.scheme == SchemeId::ForwardEuler && tau > report.table.tau_max &&
        !options.allow_unstable) {
        throw StabilityAbort("forward Euler with tau = " + format_number(tau) +
                             " exceeds the stability bound " +
                             format_number(report.table.tau_max) + " (binding: " +
                             report.table.entries[report.table.binding].label +
                             "); rerun with --allow-unstable to force");
    }

    std::vector<double> snapshots = config.snapshots;
    if (snapshots.empty()) snapshots.push_back(*config.t_end);

    const MarchResult run =
        march(built.system, sample_initial(config.problem, built.mesh, built.map), tau,
              *config.t_end, config.scheme, snapshots, built.map, config.problem);

    for (std::size_t s = 0; s < run.times.size(); ++s) {
        auto out = open_out(options, "solution_" + format_number(run.times[s]) + ".csv");
        write_solution_csv(out, built.mesh, run.states[s]);
    }

    nlohmann::json meta{{"schema_version", 1},
                        {"command", "solve"},
                        {"scheme", scheme_name(config.scheme)},
                        {"tau", tau},
                        {"tau_auto", config.tau_is_auto},
                        {"t_end", *config.t_end},
                        {"n", config.n},
                        {"unknowns", built.map.count},
                        {"gi_eliminations", built.map.gi_eliminations},
                        {"dirichlet_eliminations", built.map.dirichlet_eliminations},
                        {"snapshots", run.times},
                        {"steps", run.step_count},
                        {"diverged", run.diverged}};
    if (run.diverged) meta["diverged_at_step"] = run.diverged_at_step;
    meta["stability"] = {{"tau_max_table", report.table.tau_max},
                         {"binding_constraint", report.table.entries[report.table.binding].label},
                         {"tau_max_gershgorin", report.gershgorin.tau_max},
                         {"tau_max_exact_forward_euler", report.tau_max_exact}};
    if (config.scheme == SchemeId::ForwardEuler) {
        const SpectralVerdict v = verdict_from_spectrum(report.spectrum, tau);
        meta["stability"]["rho_forward"] = v.rho_forward;
        meta["stability"]["stable_forward"] = v.stable_forward;
    }
    {
        auto out = open_out(options, "run_meta.json");
        out << meta.dump(2) << '\n';
    }
    if (run.diverged)
        throw DivergedRun("march diverged at step " + std::to_string(run.diverged_at_step) +
                          "; outputs were written to " + options.out_dir);
    std::cout << "solve: " << run.step_count << " steps of " << scheme_name(config.scheme)
              << " at tau = " << format_number(tau) << ", " << run.times.size()
              << " snapshot(s) written to " << options.out_dir << '\n';
    return 0;
}

int cmd_steady(const Options& options) {
    Built built = build(options);
    const std::vector<double> u = steady_state(built.system);
    const std::vector<double> full = reconstruct_full(built.map, u, built.config.problem);
    auto out = open_out(options, "steady.csv");
    write_solution_csv(out, built.mesh, full);
    std::cout << "steady: profile written to " << options.out_dir << "/steady.csv\n";
    return 0;
}

int cmd_stability(const Options& options) {
    Built built = build(options);
    std::optional<double> tau = built.config.tau;
    if (built.config.tau_is_auto) tau.reset();
    const StabilityReport report =
        analyze_stability(built.config.problem, built.mesh, built.system, tau);
    {
        auto out = open_out(options, "stability_report.json");
        out << stability_report_json(report).dump(2) << '\n';
    }
    std::cout << stability_table_text(report);
    return 0;
}

int cmd_convergence(const Options& options) {
    Built built = build(options);
    const RunConfig& config = built.config;
    if (!config.study) throw ConfigError("convergence: config needs a study section");
    const StudyConfig& study = *config.study;
    const double tau = study.tau.value_or(options.preset == "ci" ? 1e-5 : 1e-7);

    StudyResults results;
    for (SchemeId scheme : study.schemes)
        results.emplace_back(scheme, convergence_study(config.problem, tau, study.h_list,
                                                       study.t_eval, scheme));
    {
        auto out = open_out(options, "convergence.csv");
        write_convergence_csv(out, results);
    }
    std::cout << "grid refinement study at tau = " << format_number(tau) << ", t = "
              << format_number(study.t_eval) << '\n'
              << convergence_table_text(results);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite volume solver for one-dimensional multilayer diffusion"};
    app.require_subcommand(1);

    Options options;
    auto add_common = [&options](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "JSON config file")->required();
        cmd->add_option("--out", options.out_dir, "output directory (default: .)");
        cmd->add_flag("--allow-unstable", options.allow_unstable,
                      "run forward Euler past the stability bound");
        cmd->add_option("--preset", options.preset, "study preset: paper or ci")
            ->check(CLI::IsMember({"paper", "ci"}));
    };

    CLI::App* solve = app.add_subcommand("solve", "time-march and write solution snapshots");
    CLI::App* steady = app.add_subcommand("steady", "write the steady-state profile");
    CLI::App* stability = app.add_subcommand("stability", "report step bounds and spectral radii");
    CLI::App* convergence = app.add_subcommand("convergence", "grid refinement study");
    for (CLI::App* cmd : {solve, steady, stability, convergence}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(options);
        if (steady->parsed()) return cmd_steady(options);
        if (stability->parsed()) return cmd_stability(options);
        if (convergence->parsed()) return cmd_convergence(options);
    } catch (const StabilityAbort& e) {
        std::cerr << "stability abort: " << e.what() << '\n';
        return kExitStabilityAbort;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const DivergedRun& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
