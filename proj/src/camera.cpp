#include "vptz/camera.hpp"

namespace vptz {

double motion_delay(const Direction& from, const Direction& to, double max_speed_deg_s) {
    if (max_speed_deg_s <= 0.0)
        throw Error("camera speed must be positive");
    const double dpan = std::abs(std::remainder(to.phi - from.phi, 2.0 * kPi));
    const double dtilt = std::abs(to.theta - from.theta);
    return rad_to_deg(std::max(dpan, dtilt)) / max_speed_deg_s;
}

PtzCamera::PtzCamera(const Scenario& scenario, const Direction& pose,
                     const CameraIntrinsics& intr, double max_speed_deg_s,
                     const DelayConfig& delays, const ZoomLimits& limits)
    : scenario_(&scenario),
      pose_(pose.normalized()),
      intr_(intr),
      max_speed_(max_speed_deg_s),
      delays_(delays),
      limits_(limits) {
    if (max_speed_ <= 0.0)
        throw Error("camera speed must be positive");
    if (delays_.tau_c < 0.0 || delays_.tau_p_fixed < 0.0)
        throw Error("delays must be non-negative");
    if (intr_.vfov < limits_.min_vfov || intr_.vfov > limits_.max_vfov)
        throw Error("initial FOV outside the configured zoom limits");
}

void PtzCamera::sync_frame_to_clock() {
    const int f = int(std::floor(clock_s_ * scenario_->fps()));
    if (f >= scenario_->frame_count()) {
        frame_ = scenario_->frame_count() - 1;
        ended_ = true;
    } else {
        frame_ = std::max(f, 0);
    }
}

Image PtzCamera::acquire() const {
    if (ended_)
        throw Error("scenario has ended, no frame to acquire");
    return render_viewport(scenario_->frame(frame_), pose_, intr_);
}

bool PtzCamera::execute(const CameraCommand& cmd, double tau_p_measured) {
    const Direction before = pose_;
    switch (cmd.kind) {
    case CameraCommand::Kind::hold:
        break;
    case CameraCommand::Kind::go_to_angles:
        pose_ = cmd.target.normalized();
        break;
    case CameraCommand::Kind::recenter_on_pixel:
        pose_ = unproject_image_point(cmd.pixel, before, intr_).normalized();
        break;
    case CameraCommand::Kind::set_zoom:
        intr_ = CameraIntrinsics::from_fov(
            std::clamp(cmd.vfov, limits_.min_vfov, limits_.max_vfov),
            intr_.width, intr_.height);
        break;
    }
    // Zoom is instantaneous; only reorientation costs motor time.
    last_tau_m_ = (cmd.kind == CameraCommand::Kind::go_to_angles ||
                   cmd.kind == CameraCommand::Kind::recenter_on_pixel)
                      ? motion_delay(before, pose_, max_speed_)
                      : 0.0;
    const double tau_p = delays_.tau_p_mode == DelayConfig::TauPMode::measured
                             ? std::max(tau_p_measured, 0.0)
                             : delays_.tau_p_fixed;
    clock_s_ += last_tau_m_ + tau_p + delays_.tau_c;
    sync_frame_to_clock();
    return !ended_;
}

bool PtzCamera::advance_past(int frame_index) {
    if (!ended_ && frame_ <= frame_index) {
        clock_s_ = (frame_index + 1) / scenario_->fps();
        sync_frame_to_clock();
    }
    return !ended_;
}

void PtzCamera::seek(int frame_index) {
    if (frame_index < 0 || frame_index >= scenario_->frame_count())
        throw Error("seek index out of range");
    clock_s_ = frame_index / scenario_->fps();
    ended_ = false;
    sync_frame_to_clock();
}

} // namespace vptz
