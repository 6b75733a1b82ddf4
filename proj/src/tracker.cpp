#include "vptz/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "vptz/error.hpp"

namespace vptz {

Hsv rgb_to_hsv(Rgb c) {
    const double r = c.r / 255.0, g = c.g / 255.0, b = c.b / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double d = mx - mn;
    Hsv out;
    out.v = mx;
    out.s = mx > 0.0 ? d / mx : 0.0;
    if (d > 0.0) {
        if (mx == r)
            out.h = 60.0 * std::fmod((g - b) / d, 6.0);
        else if (mx == g)
            out.h = 60.0 * ((b - r) / d + 2.0);
        else
            out.h = 60.0 * ((r - g) / d + 4.0);
        if (out.h < 0.0)
            out.h += 360.0;
    }
    return out;
}

CamshiftTracker::CamshiftTracker(const CamshiftParams& params) : params_(params) {
    if (params_.hue_bins < 1)
        throw Error("camshift needs at least one hue bin");
}

int CamshiftTracker::hue_bin(double hue) const {
    const int b = int(hue / 360.0 * params_.hue_bins);
    return std::clamp(b, 0, params_.hue_bins - 1);
}

void CamshiftTracker::init(const TrackerObservation& obs, const Rect& init_box) {
    const Image& img = *obs.image;
    const Rect raster = flip_rect_vertical(init_box, img.height());
    const int x0 = std::clamp(int(std::floor(raster.x)), 0, img.width());
    const int y0 = std::clamp(int(std::floor(raster.y)), 0, img.height());
    const int x1 = std::clamp(int(std::ceil(raster.x + raster.width)), 0, img.width());
    const int y1 = std::clamp(int(std::ceil(raster.y + raster.height)), 0, img.height());

    histogram_.assign(std::size_t(params_.hue_bins), 0.0);
    int gated_in = 0;
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const Hsv hsv = rgb_to_hsv(img.at(x, y));
            if (hsv.s < params_.saturation_min || hsv.v < params_.value_min ||
                hsv.v > params_.value_max)
                continue;
            histogram_[std::size_t(hue_bin(hsv.h))] += 1.0;
            ++gated_in;
        }
    }
    if (gated_in == 0)
        throw TrackerInitError(
            "no pixel in the initialization box passed the color gates");
    const double peak = *std::max_element(histogram_.begin(), histogram_.end());
    for (double& h : histogram_)
        h /= peak;

    window_ = raster;
    aspect_ = init_box.width / init_box.height;
    initialized_ = true;
    last_decision_.predicted_box = init_box;
    last_decision_.predicted_center = init_box.center();
    last_decision_.command = CameraCommand::hold();
    last_decision_.lost = false;
}

std::vector<float> CamshiftTracker::back_project(const Image& img) const {
    std::vector<float> weights(std::size_t(img.width()) * img.height(), 0.0f);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const Hsv hsv = rgb_to_hsv(img.at(x, y));
            if (hsv.s < params_.saturation_min || hsv.v < params_.value_min ||
                hsv.v > params_.value_max)
                continue;
            weights[std::size_t(y) * img.width() + x] =
                float(histogram_[std::size_t(hue_bin(hsv.h))]);
        }
    }
    return weights;
}

TrackerDecision CamshiftTracker::step(const TrackerObservation& obs) {
    if (!initialized_)
        throw Error("tracker stepped before init");
    const Image& img = *obs.image;
    const std::vector<float> weights = back_project(img);
    iteration_centers_.clear();

    auto window_moments = [&](const Rect& win, double& m00, double& m10, double& m01,
                              int& count) {
        const int x0 = std::clamp(int(std::floor(win.x)), 0, img.width());
        const int y0 = std::clamp(int(std::floor(win.y)), 0, img.height());
        const int x1 = std::clamp(int(std::ceil(win.x + win.width)), 0, img.width());
        const int y1 = std::clamp(int(std::ceil(win.y + win.height)), 0, img.height());
        m00 = m10 = m01 = 0.0;
        count = std::max(0, x1 - x0) * std::max(0, y1 - y0);
        for (int y = y0; y < y1; ++y) {
            for (int x = x0; x < x1; ++x) {
                const double w = weights[std::size_t(y) * img.width() + x];
                m00 += w;
                m10 += w * (x + 0.5);
                m01 += w * (y + 0.5);
            }
        }
    };

    Rect win = window_;
    double m00 = 0.0, m10 = 0.0, m01 = 0.0;
    int count = 0;
    for (int it = 0; it < params_.max_iterations; ++it) {
        window_moments(win, m00, m10, m01, count);
        if (m00 <= 0.0)
            break;
        const ImagePoint c{m10 / m00, m01 / m00};
        iteration_centers_.push_back(c);
        const ImagePoint prev = win.center();
        win.x = c.u - win.width / 2.0;
        win.y = c.v - win.height / 2.0;
        if (c.distance_to(prev) < params_.epsilon_px)
            break;
    }

    const double mean_weight = count > 0 ? m00 / count : 0.0;
    if (m00 <= 0.0 || mean_weight < params_.lost_threshold) {
        last_decision_.lost = true;
        last_decision_.command = CameraCommand::hold();
        return last_decision_;
    }

    // Camshift window adaptation: area follows the zeroth moment, the aspect
    // ratio stays that of the initialization box, growth is damped.
    const double target_w = params_.window_gain * std::sqrt(m00 * aspect_);
    const double target_h = params_.window_gain * std::sqrt(m00 / aspect_);
    double new_w = std::clamp(target_w, win.width / params_.max_scale_step,
                              win.width * params_.max_scale_step);
    double new_h = std::clamp(target_h, win.height / params_.max_scale_step,
                              win.height * params_.max_scale_step);
    new_w = std::clamp(new_w, params_.min_window_px, double(img.width()));
    new_h = std::clamp(new_h, params_.min_window_px, double(img.height()));
    const ImagePoint c{m10 / m00, m01 / m00};
    window_ = {c.u - new_w / 2.0, c.v - new_h / 2.0, new_w, new_h};

    TrackerDecision d;
    d.predicted_box = flip_rect_vertical(window_, img.height());
    d.predicted_center = ImagePoint{c.u, raster_row_from_v(c.v, img.height())};
    d.command = CameraCommand::recenter(d.predicted_center);
    d.lost = false;
    last_decision_ = d;
    return d;
}

void OracleTracker::init(const TrackerObservation&, const Rect& init_box) {
    last_decision_.predicted_box = init_box;
    last_decision_.predicted_center = init_box.center();
    last_decision_.command = CameraCommand::hold();
}

void OracleTracker::observe_gt(const AdjustedGt& current, const Direction* next_direction) {
    current_ = current;
    next_direction_ = next_direction ? std::optional<Direction>(*next_direction)
                                     : std::nullopt;
}

TrackerDecision OracleTracker::step(const TrackerObservation&) {
    TrackerDecision d = last_decision_;
    d.lost = !current_.in_view() || !current_.box;
    if (!d.lost) {
        d.predicted_box = *current_.box;
        d.predicted_center = *current_.center;
    }
    if (next_direction_)
        d.command = CameraCommand::go_to(*next_direction_);
    else if (!d.lost)
        d.command = CameraCommand::recenter(*current_.center);
    else
        d.command = CameraCommand::hold();
    last_decision_ = d;
    return d;
}

void StaticTracker::init(const TrackerObservation&, const Rect& init_box) {
    decision_.predicted_box = init_box;
    decision_.predicted_center = init_box.center();
    decision_.command = CameraCommand::hold();
    decision_.lost = false;
}

TrackerDecision StaticTracker::step(const TrackerObservation&) { return decision_; }

std::unique_ptr<Tracker> make_tracker(const std::string& name) {
    if (name == "camshift")
        return std::make_unique<CamshiftTracker>();
    if (name == "oracle")
        return std::make_unique<OracleTracker>();
    if (name == "static")
        return std::make_unique<StaticTracker>();
    throw Error("unknown tracker '" + name + "'");
}

std::vector<std::string> tracker_names() { return {"camshift", "oracle", "static"}; }

} // namespace vptz
