#pragma once

#include "vptz/geometry.hpp"
#include "vptz/image.hpp"
#include "vptz/panorama.hpp"

namespace vptz {

/// Simulated delay configuration. The motion delay tau_m always comes from
/// the command amplitude; tau_p is either fixed (reproducible) or measured
/// from the tracker's wall-clock execution time.
struct DelayConfig {
    double tau_c = 0.0; // communication delay, seconds, user-fixed
    enum class TauPMode { fixed, measured };
    TauPMode tau_p_mode = TauPMode::fixed;
    double tau_p_fixed = 0.0;
};

struct CameraCommand {
    enum class Kind { hold, go_to_angles, recenter_on_pixel, set_zoom };
    Kind kind = Kind::hold;
    Direction target;  // go_to_angles
    ImagePoint pixel;  // recenter_on_pixel, bottom-up image coordinates
    double vfov = 0.0; // set_zoom, radians

    static CameraCommand hold() { return {}; }
    static CameraCommand go_to(const Direction& d) {
        return {Kind::go_to_angles, d, {}, 0.0};
    }
    static CameraCommand recenter(const ImagePoint& p) {
        return {Kind::recenter_on_pixel, {}, p, 0.0};
    }
    static CameraCommand zoom(double vfov_rad) {
        return {Kind::set_zoom, {}, {}, vfov_rad};
    }
};

/// Time to reorient between two poses. Pan and tilt motors run
/// simultaneously, so the slower axis dominates; the pan difference takes
/// the shorter wrap direction.
double motion_delay(const Direction& from, const Direction& to, double max_speed_deg_s);

struct ZoomLimits {
    double min_vfov = deg_to_rad(10.0);
    double max_vfov = deg_to_rad(120.0);
};

/// The virtual PTZ camera: executes commands with finite motor speed,
/// acquires viewports only when still, and advances scenario time by
/// skipping frames to realize tau = tau_m + tau_p + tau_c.
///
/// The frame index always derives from the continuous clock
/// (frame = floor(clock x fps)), so repeated steps accumulate no rounding.
class PtzCamera {
public:
    PtzCamera(const Scenario& scenario, const Direction& pose,
              const CameraIntrinsics& intr, double max_speed_deg_s = 300.0,
              const DelayConfig& delays = {}, const ZoomLimits& limits = {});

    const Direction& pose() const { return pose_; }
    const CameraIntrinsics& intrinsics() const { return intr_; }
    double clock_s() const { return clock_s_; }
    int current_frame() const { return frame_; }
    double max_speed_deg_s() const { return max_speed_; }
    bool at_end() const { return ended_; }
    /// tau_m charged by the most recent execute().
    double last_motion_delay() const { return last_tau_m_; }

    /// Renders the current frame at the current pose; only callable while
    /// the scenario is still running.
    Image acquire() const;

    /// Applies the command (recentering uses the pre-command pose), then
    /// advances the clock by tau_m + tau_p + tau_c. Returns false once the
    /// clock passes the last frame.
    bool execute(const CameraCommand& cmd, double tau_p_measured = 0.0);

    /// Guarantees at least one frame of progress per acquire-process cycle:
    /// if the clock still sits within `frame_index`, it jumps to the start
    /// of the next frame. Returns false once the scenario has ended.
    bool advance_past(int frame_index);

    /// Repositions scenario time to the start of the given frame.
    void seek(int frame_index);

private:
    void sync_frame_to_clock();

    const Scenario* scenario_;
    Direction pose_;
    CameraIntrinsics intr_;
    double max_speed_;
    DelayConfig delays_;
    ZoomLimits limits_;
    double clock_s_ = 0.0;
    int frame_ = 0;
    bool ended_ = false;
    double last_tau_m_ = 0.0;
};

} // namespace vptz
