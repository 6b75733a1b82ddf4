#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "vptz/harness.hpp"
#include "vptz/log.hpp"
#include "vptz/panorama.hpp"

namespace {

int cmd_run(vptz::RunConfig cfg, const std::string& tau_p_arg,
            std::vector<double> tau_c_args) {
    if (!tau_c_args.empty())
        cfg.tau_c_list = std::move(tau_c_args);
    for (double t : cfg.tau_c_list)
        if (t < 0.0) {
            std::fprintf(stderr, "error: tau-c must be >= 0\n");
            return 2;
        }
    if (tau_p_arg == "measured") {
        cfg.tau_p_mode = vptz::DelayConfig::TauPMode::measured;
    } else if (tau_p_arg.rfind("fixed:", 0) == 0) {
        cfg.tau_p_mode = vptz::DelayConfig::TauPMode::fixed;
        try {
            cfg.tau_p_fixed = std::stod(tau_p_arg.substr(6));
        } catch (const std::exception&) {
            std::fprintf(stderr, "error: bad --tau-p value '%s'\n", tau_p_arg.c_str());
            return 2;
        }
        if (cfg.tau_p_fixed < 0.0) {
            std::fprintf(stderr, "error: fixed tau-p must be >= 0\n");
            return 2;
        }
    } else {
        std::fprintf(stderr, "error: --tau-p expects 'fixed:<seconds>' or 'measured'\n");
        return 2;
    }

    try {
        const auto results = vptz::run_all(cfg);
        vptz::emit_reports(results, cfg);
        for (const auto& r : results) {
            std::printf("tau_c=%-6g frames=%-5d cle=%-9s or=%.3f tce=%-9s tf=%.3f\n",
                        r.tau_c, r.aggregates.processed_frames,
                        r.aggregates.mean_cle
                            ? std::to_string(*r.aggregates.mean_cle).c_str()
                            : "n/a",
                        r.aggregates.mean_or,
                        r.aggregates.mean_tce
                            ? std::to_string(*r.aggregates.mean_tce).c_str()
                            : "n/a",
                        r.aggregates.tf_ratio);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::printf("reports written to %s\n", cfg.out_dir.c_str());
    return 0;
}

int cmd_synth(const vptz::SyntheticPathSpec& spec, const std::string& out_dir) {
    try {
        const auto scenario = vptz::generate_synthetic_scenario(spec, out_dir);
        std::printf("wrote %d frames (%dx%d @ %g fps) and GT to %s\n",
                    scenario.manifest.frame_count, scenario.manifest.pano_width,
                    scenario.manifest.pano_height, scenario.manifest.fps,
                    out_dir.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"virtual PTZ tracking simulator and evaluator"};
    app.require_subcommand(1);

    // --- run ---
    auto* run = app.add_subcommand("run", "evaluate a tracker on a scenario");
    vptz::RunConfig cfg;
    std::vector<double> tau_c_args;
    std::string tau_p_arg = "fixed:0";
    run->add_option("--scenario", cfg.scenario_path, "scenario.json path or its directory")
        ->required();
    run->add_option("--gt", cfg.gt_path, "basic ground-truth file (.vgt)")->required();
    run->add_option("--meta", cfg.meta_path, "sequence metadata JSON (difficulty tags)");
    run->add_option("--tracker", cfg.tracker, "tracker name (camshift|oracle|static)")
        ->default_val("camshift");
    run->add_option("--tau-c", tau_c_args,
                    "communication delay in seconds, repeatable (default 0 0.125 0.25 0.5)");
    run->add_option("--tau-p", tau_p_arg, "'fixed:<seconds>' or 'measured'")
        ->default_val("fixed:0");
    run->add_option("--width", cfg.width, "output image width")->default_val(640);
    run->add_option("--height", cfg.height, "output image height")->default_val(480);
    run->add_option("--vfov", cfg.vfov_deg, "vertical FOV in degrees")->default_val(90.0);
    run->add_option("--speed", cfg.speed_deg_s, "max motor speed in deg/s")
        ->default_val(300.0);
    run->add_option("--out", cfg.out_dir, "output directory")->required();
    run->add_option("--jobs", cfg.jobs, "parallel runs")->default_val(1);
    run->add_option("--seed", cfg.seed, "random seed recorded in the summary")
        ->default_val(0);
    run->add_flag("--dump-overlays", cfg.dump_overlays,
                  "write per-frame overlay PNGs (GT box, prediction, center cross)");

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "generate a synthetic scenario");
    vptz::SyntheticPathSpec spec;
    std::string synth_out;
    double start_tilt_deg = 90.0, start_pan_deg = 0.0;
    std::vector<int> disc_rgb;
    std::string background = "gradient";
    synth->add_option("--duration", spec.duration_s, "seconds")->default_val(10.0);
    synth->add_option("--fps", spec.fps, "frames per second")->default_val(16.0);
    synth->add_option("--radius-deg", spec.disc_radius_deg, "disc angular radius")
        ->default_val(5.0);
    synth->add_option("--omega-deg-s", spec.angular_velocity_deg_s,
                      "target angular velocity")
        ->default_val(20.0);
    synth->add_option("--phase-deg", spec.phase_deg, "path phase offset")->default_val(0.0);
    synth->add_option("--start-tilt-deg", start_tilt_deg, "path start tilt")
        ->default_val(90.0);
    synth->add_option("--start-pan-deg", start_pan_deg, "path start pan")->default_val(0.0);
    synth->add_option("--pano-width", spec.pano_width, "panorama width")->default_val(1024);
    synth->add_option("--pano-height", spec.pano_height, "panorama height")
        ->default_val(512);
    synth->add_option("--color", disc_rgb, "disc color as R G B")->expected(3);
    synth->add_option("--background", background, "solid|gradient|checker")
        ->default_val("gradient");
    synth->add_option("--ann-vfov", spec.annotation.vfov_deg,
                      "annotation camera vertical FOV (deg)")
        ->default_val(90.0);
    synth->add_option("--ann-width", spec.annotation.width, "annotation camera width")
        ->default_val(480);
    synth->add_option("--ann-height", spec.annotation.height, "annotation camera height")
        ->default_val(480);
    synth->add_option("--out", synth_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return cmd_run(cfg, tau_p_arg, tau_c_args);

    spec.start = vptz::Direction{vptz::deg_to_rad(start_tilt_deg),
                                 vptz::deg_to_rad(start_pan_deg)}
                     .normalized();
    if (!disc_rgb.empty())
        spec.disc_color = {std::uint8_t(disc_rgb[0]), std::uint8_t(disc_rgb[1]),
                           std::uint8_t(disc_rgb[2])};
    if (background == "solid")
        spec.background = vptz::SyntheticPathSpec::Background::solid;
    else if (background == "checker")
        spec.background = vptz::SyntheticPathSpec::Background::checker;
    else if (background != "gradient") {
        std::fprintf(stderr, "error: unknown background '%s'\n", background.c_str());
        return 2;
    }
    return cmd_synth(spec, synth_out);
}
