// Command-line front end: simulate phase histories, form PFA images, refocus
// moving-target subimages, and export results for inspection.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "sarmt/echo_sim.hpp"
#include "sarmt/error_model.hpp"
#include "sarmt/export_image.hpp"
#include "sarmt/grid_io.hpp"
#include "sarmt/metrics.hpp"
#include "sarmt/pfa.hpp"
#include "sarmt/refocus.hpp"
#include "sarmt/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

using namespace sarmt;

void require_file(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw CLI::ValidationError("input file does not exist: " + path);
}

Scenario load_and_build(const std::string& path) {
    Scenario sc = build_scenario(load_scenario(path));
    for (const auto& w : sc.warnings) std::cerr << "warning: " << w << "\n";
    return sc;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_path) {
    const Scenario sc = load_and_build(scenario_path);
    const PhaseHistory ph =
        simulate(sc.params, sc.geometry, sc.targets, sc.noise ? &*sc.noise : nullptr);
    const SpatialFrequencyGrid grid = make_spatial_frequency_grid(sc.params, sc.geometry);
    GridFile g = to_grid_file(ph, &grid);
    g.provenance = {"simulate"};
    write_grid_file(g, out_path);
    std::cout << "wrote " << out_path << " (" << g.rows << " pulses x " << g.cols
              << " frequencies)\n";
    return kExitOk;
}

int cmd_pfa(const std::string& scenario_path, const std::string& in_path,
            const std::string& out_path, const std::string& stage_dir) {
    const Scenario sc = load_and_build(scenario_path);
    const GridFile in = read_grid_file(in_path);
    const PhaseHistory ph = as_phase_history(in);

    const bool keep = !stage_dir.empty();
    PfaResult result = run_pfa(ph, sc.params, sc.geometry, keep);
    if (keep) {
        std::filesystem::create_directories(stage_dir);
        const SpatialFrequencyGrid grid = make_spatial_frequency_grid(sc.params, sc.geometry);
        for (const auto& stage : result.stages) {
            GridFile g = to_grid_file(stage, &grid);
            g.provenance = {"pfa_stage"};
            write_grid_file(g, std::filesystem::path(stage_dir) /
                                   (stage_name(stage.stage) + ".grid"));
        }
    }
    write_grid_file(to_grid_file(result.image), out_path);
    std::cout << "wrote " << out_path << "\n"
              << "zero_filled_fraction=" << result.stats.zero_fraction() << "\n";
    return kExitOk;
}

int cmd_refocus(const std::string& in_path, const std::vector<std::size_t>& roi_vals,
                const std::string& estimator, const std::string& out_path,
                const std::string& report_path, int passes) {
    const ComplexImage image = as_image(read_grid_file(in_path));
    RegionOfInterest roi{roi_vals[0], roi_vals[1], roi_vals[2], roi_vals[3]};

    RefocusConfig config;
    config.estimator = (estimator == "minentropy") ? RefocusConfig::Estimator::MinEntropy
                                                   : RefocusConfig::Estimator::Pga;
    config.max_passes = passes;
    const RefocusResult result = refocus_pipeline(image, roi, config);

    std::cout << result.report.to_text();
    if (!out_path.empty()) write_grid_file(to_grid_file(result.corrected), out_path);
    if (!report_path.empty()) {
        std::ofstream rep(report_path, std::ios::trunc);
        if (!rep) throw std::runtime_error("cannot open report file: " + report_path);
        rep << result.report.to_text();
    }
    return result.report.estimation_failed ? kExitError : kExitOk;
}

int cmd_metrics(const std::string& in_path) {
    const ComplexImage image = as_image(read_grid_file(in_path));
    std::cout.precision(12);
    std::cout << "entropy=" << entropy(image) << "\n"
              << "contrast=" << image_contrast(image.data) << "\n"
              << "azimuth_width_px=" << azimuth_peak_width(image.data) << "\n";
    const RcmTrack t = residual_rcm(image);
    if (t.flagged)
        std::cout << "rcm_span_cells=untracked\n";
    else
        std::cout << "rcm_span_cells=" << t.span_cells << "\n";
    return kExitOk;
}

int cmd_export(const std::string& in_path, const std::string& out_path, double dr_db) {
    const ComplexImage image = as_image(read_grid_file(in_path));
    export_magnitude(image, out_path, dr_db);
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int cmd_inspect(const std::string& in_path) {
    std::cout << describe_grid_file(in_path);
    return kExitOk;
}

int cmd_oracle(const std::string& scenario_path, std::size_t target_index,
               const std::string& phi0_path, const std::string& surface_path) {
    const Scenario sc = load_and_build(scenario_path);
    if (target_index >= sc.targets.size())
        throw std::runtime_error("oracle: target index out of range");

    const AzimuthWarp warp = build_azimuth_warp(sc.geometry);
    const auto r_m = target_range(sc.targets[target_index].trajectory, sc.geometry.platform);
    PhaseErrorModel model = eta_from_geometry(sc.geometry, r_m, warp);
    decompose_eta(model);
    if (model.order_insufficient)
        std::cerr << "warning: eta polynomial fit residual above tolerance (rms "
                  << model.fit_rms << " m)\n";

    const SpatialFrequencyGrid grid = make_spatial_frequency_grid(sc.params, sc.geometry);
    if (!phi0_path.empty()) {
        const ApeProfile ape = ape_profile(model, grid);
        write_grid_file(profile_grid_file(ape.x_axis, ape.phi0), phi0_path);
        std::cout << "wrote " << phi0_path << "\n";
    }
    if (!surface_path.empty()) {
        const PhaseErrorSurface s = exact_surface(model, grid);
        write_grid_file(to_grid_file(s), surface_path);
        std::cout << "wrote " << surface_path << "\n";
    }
    std::cout.precision(12);
    std::cout << "a0_m=" << model.a0 << "\n"
              << "a1_mps=" << model.a1 << "\n"
              << "fit_rms_m=" << model.fit_rms << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spotlight-SAR moving-target simulation and refocusing toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, in_path, out_path, report_path, stage_dir, estimator = "pga";
    std::vector<std::size_t> roi_vals;
    std::size_t target_index = 0;
    double dr_db = 40.0;
    int passes = 2;
    std::string phi0_path, surface_path;

    auto* sim = app.add_subcommand("simulate", "generate a raw phase history from a scenario");
    sim->add_option("--scenario", scenario_path, "scenario JSON")->required()->check(CLI::ExistingFile);
    sim->add_option("--out", out_path, "output grid file")->required();

    auto* pfa_cmd = app.add_subcommand("pfa", "polar-format image formation");
    pfa_cmd->add_option("--scenario", scenario_path, "scenario JSON")->required()->check(CLI::ExistingFile);
    pfa_cmd->add_option("--in", in_path, "raw phase history grid")->required();
    pfa_cmd->add_option("--out", out_path, "output image grid")->required();
    pfa_cmd->add_option("--stage-dir", stage_dir, "directory for intermediate stage grids");

    auto* ref = app.add_subcommand("refocus", "refocus a moving-target subimage");
    ref->add_option("--in", in_path, "input image grid")->required();
    ref->add_option("--roi", roi_vals, "az_offset,rg_offset,az_extent,rg_extent")
        ->required()->delimiter(',')->expected(4);
    ref->add_option("--estimator", estimator, "pga | minentropy")
        ->check(CLI::IsMember({"pga", "minentropy"}));
    ref->add_option("--out", out_path, "corrected subimage grid");
    ref->add_option("--report", report_path, "report text file");
    ref->add_option("--passes", passes, "maximum estimate/correct passes")->check(CLI::Range(1, 4));

    auto* met = app.add_subcommand("metrics", "print focus metrics of an image");
    met->add_option("--in", in_path, "input image grid")->required();

    auto* exp = app.add_subcommand("export", "export a grayscale magnitude image (PGM)");
    exp->add_option("--in", in_path, "input image grid")->required();
    exp->add_option("--out", out_path, "output .pgm path")->required();
    exp->add_option("--dynamic-range-db", dr_db, "display dynamic range in dB");

    auto* ins = app.add_subcommand("inspect", "print a grid file header");
    ins->add_option("--in", in_path, "grid file")->required();

    auto* ora = app.add_subcommand("oracle", "ground-truth phase error for a scenario target");
    ora->add_option("--scenario", scenario_path, "scenario JSON")->required()->check(CLI::ExistingFile);
    ora->add_option("--target", target_index, "target index");
    ora->add_option("--phi0-out", phi0_path, "azimuth phase error profile grid");
    ora->add_option("--surface-out", surface_path, "2-D phase error surface grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return (e.get_exit_code() == 0) ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) return cmd_simulate(scenario_path, out_path);
        if (pfa_cmd->parsed()) {
            require_file(in_path);
            return cmd_pfa(scenario_path, in_path, out_path, stage_dir);
        }
        if (ref->parsed()) {
            require_file(in_path);
            return cmd_refocus(in_path, roi_vals, estimator, out_path, report_path, passes);
        }
        if (met->parsed()) {
            require_file(in_path);
            return cmd_metrics(in_path);
        }
        if (exp->parsed()) {
            require_file(in_path);
            return cmd_export(in_path, out_path, dr_db);
        }
        if (ins->parsed()) {
            require_file(in_path);
            return cmd_inspect(in_path);
        }
        if (ora->parsed()) return cmd_oracle(scenario_path, target_index, phi0_path, surface_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
