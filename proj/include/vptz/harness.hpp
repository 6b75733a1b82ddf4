#pragma once

#include <string>
#include <vector>

#include "vptz/camera.hpp"
#include "vptz/evaluator.hpp"
#include "vptz/groundtruth.hpp"
#include "vptz/panorama.hpp"
#include "vptz/tracker.hpp"

namespace vptz {

/// Batch-run configuration; defaults follow the baseline protocol
/// (640x480, 90 degree vertical FOV, 300 deg/s motors, four comm delays).
struct RunConfig {
    std::string scenario_path;
    std::string gt_path;
    std::string meta_path; // optional sidecar with difficulty tags
    std::string tracker = "camshift";
    int width = 640;
    int height = 480;
    double vfov_deg = 90.0;
    std::vector<double> tau_c_list = {0.0, 0.125, 0.25, 0.5};
    DelayConfig::TauPMode tau_p_mode = DelayConfig::TauPMode::fixed;
    double tau_p_fixed = 0.0;
    double speed_deg_s = 300.0;
    std::string out_dir;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool dump_overlays = false;
};

/// One tracker-camera-evaluator run at a single communication delay.
struct SequenceResult {
    double tau_c = 0.0;
    std::vector<MetricSample> samples;
    Aggregates aggregates;
    std::vector<std::string> difficulty_tags;
};

/// Difficulty tags from the sidecar metadata file; empty when absent.
std::vector<std::string> load_difficulty_tags(const std::string& meta_path);

/// Runs one sequence: the camera starts aimed at the first annotated
/// direction, the tracker is initialized with the first adjusted box, and
/// the loop acquires, adjusts GT, scores, and executes the tracker command
/// until the scenario ends.
SequenceResult run_sequence(const RunConfig& cfg, double tau_c);

/// Runs the whole tau_c grid, optionally in parallel (`jobs`).
std::vector<SequenceResult> run_all(const RunConfig& cfg);

/// Writes summary.json, per-delay metric CSVs, and the difficulty x delay
/// aggregate tables (text + CSV) under cfg.out_dir.
void emit_reports(const std::vector<SequenceResult>& results, const RunConfig& cfg);

} // namespace vptz
