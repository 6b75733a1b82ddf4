#pragma once

#include <memory>
#include <string>
#include <vector>

#include "vptz/camera.hpp"
#include "vptz/geometry.hpp"
#include "vptz/groundtruth.hpp"
#include "vptz/image.hpp"

namespace vptz {

/// What a tracker sees each cycle. Box and point coordinates exchanged with
/// trackers are bottom-up, like everything outside raster pixel I/O.
struct TrackerObservation {
    const Image* image = nullptr;
    Direction pose;
    CameraIntrinsics intr;
    double scenario_clock = 0.0;
};

struct TrackerDecision {
    Rect predicted_box;
    ImagePoint predicted_center;
    CameraCommand command;
    bool lost = false;
};

class Tracker {
public:
    virtual ~Tracker() = default;
    /// Builds the target model from the initialization box (bottom-up coords).
    virtual void init(const TrackerObservation& obs, const Rect& init_box) = 0;
    virtual TrackerDecision step(const TrackerObservation& obs) = 0;
    /// Adjusted ground truth for the current frame plus the direction of the
    /// next annotated frame. Only oracle-style trackers consume this.
    virtual void observe_gt(const AdjustedGt& /*current*/,
                            const Direction* /*next_direction*/) {}
};

/// Hue/saturation/value with h in [0, 360) and s, v in [0, 1].
struct Hsv {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};
Hsv rgb_to_hsv(Rgb c);

struct CamshiftParams {
    int hue_bins = 16;
    double saturation_min = 0.2; // pixels below are hue-unreliable
    double value_min = 0.12;
    double value_max = 1.0;
    int max_iterations = 20;
    double epsilon_px = 1.0;
    double lost_threshold = 0.05; // mean back-projection weight over the window
    double window_gain = 1.4;     // box side ~ gain * sqrt(zeroth moment)
    double max_scale_step = 1.25; // per-frame window scale clamp
    double min_window_px = 8.0;
};

/// Color-histogram mean-shift tracker with moment-based window adaptation,
/// recentering the camera on the target's previous position every cycle.
class CamshiftTracker : public Tracker {
public:
    explicit CamshiftTracker(const CamshiftParams& params = {});

    void init(const TrackerObservation& obs, const Rect& init_box) override;
    TrackerDecision step(const TrackerObservation& obs) override;

    /// Per-pixel model likelihood in [0, 1], raster layout.
    std::vector<float> back_project(const Image& img) const;
    /// Window centers visited by the last step's mean-shift iterations
    /// (raster coordinates).
    const std::vector<ImagePoint>& last_iteration_centers() const {
        return iteration_centers_;
    }

private:
    int hue_bin(double hue) const;

    CamshiftParams params_;
    std::vector<double> histogram_;
    bool initialized_ = false;
    Rect window_;     // raster coordinates
    double aspect_ = 1.0;
    TrackerDecision last_decision_;
    std::vector<ImagePoint> iteration_centers_;
};

/// Perfect-information tracker used by the acceptance suite: reports the
/// adjusted ground truth verbatim and aims the camera at the next annotated
/// target direction so the target sits dead center on the next acquisition.
class OracleTracker : public Tracker {
public:
    void init(const TrackerObservation& obs, const Rect& init_box) override;
    TrackerDecision step(const TrackerObservation& obs) override;
    void observe_gt(const AdjustedGt& current, const Direction* next_direction) override;

private:
    AdjustedGt current_;
    std::optional<Direction> next_direction_;
    TrackerDecision last_decision_;
};

/// Degenerate baseline: repeats the initialization box and never moves the
/// camera.
class StaticTracker : public Tracker {
public:
    void init(const TrackerObservation& obs, const Rect& init_box) override;
    TrackerDecision step(const TrackerObservation& obs) override;

private:
    TrackerDecision decision_;
};

/// Tracker registry for CLI selection: camshift, oracle, static.
std::unique_ptr<Tracker> make_tracker(const std::string& name);
std::vector<std::string> tracker_names();

} // namespace vptz
