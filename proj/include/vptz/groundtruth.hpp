#pragma once

#include <map>
#include <optional>
#include <string>

#include "vptz/geometry.hpp"

namespace vptz {

/// One basic ground-truth annotation: the camera direction that centers the
/// target, plus the target's box size under the annotation camera.
struct BasicGtRecord {
    int frame_index = 0;
    double pan_deg = 0.0;
    double tilt_deg = 90.0;
    double bbox_w = 0.0; // pixels, annotation camera
    double bbox_h = 0.0;

    Direction direction() const {
        return Direction{deg_to_rad(tilt_deg), deg_to_rad(pan_deg)}.normalized();
    }
};

/// Fixed camera configuration used during annotation.
struct AnnotationCameraParams {
    double vfov_deg = 90.0;
    int width = 480;
    int height = 480;

    CameraIntrinsics intrinsics() const {
        return CameraIntrinsics::from_fov(deg_to_rad(vfov_deg), width, height);
    }
};

/// Annotated sequence: sparse per-frame records under one annotation camera.
/// Frames without a record are unannotated and excluded from evaluation.
class GtSequence {
public:
    GtSequence() = default;
    GtSequence(AnnotationCameraParams cam, std::map<int, BasicGtRecord> records)
        : camera_(cam), records_(std::move(records)) {}

    static GtSequence load(const std::string& path);
    void save(const std::string& path) const;

    const AnnotationCameraParams& camera() const { return camera_; }
    const std::map<int, BasicGtRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }

    const BasicGtRecord* find(int frame_index) const {
        auto it = records_.find(frame_index);
        return it == records_.end() ? nullptr : &it->second;
    }
    const BasicGtRecord& first() const;
    /// First record strictly after the given frame, if any.
    const BasicGtRecord* find_after(int frame_index) const;

    void add(const BasicGtRecord& rec) { records_[rec.frame_index] = rec; }

private:
    AnnotationCameraParams camera_;
    std::map<int, BasicGtRecord> records_;
};

/// Ground truth reprojected into the tracker's current camera configuration.
/// The center decides visibility: no center means the target is out of view.
struct AdjustedGt {
    std::optional<ImagePoint> center;
    std::optional<Rect> box;         // bottom-up image coordinates
    bool degenerate_box = false;     // rectification collapsed near the FOV edge

    bool in_view() const { return center.has_value(); }
};

/// Projects the annotated target direction into the tracker camera.
/// Empty when behind the camera or outside the image bounds.
std::optional<ImagePoint> adjust_center(const BasicGtRecord& rec,
                                        const Direction& tracker_pose,
                                        const CameraIntrinsics& tracker_intr);

/// Reprojects the annotated box into the tracker camera: the four vertices go
/// through the inverse pipeline of the annotation camera and the forward
/// pipeline of the tracker camera, then per-side vertex-pair means rectify
/// the distorted quad into an axis-aligned box.
std::optional<Rect> adjust_bbox(const BasicGtRecord& rec,
                                const AnnotationCameraParams& ann,
                                const Direction& tracker_pose,
                                const CameraIntrinsics& tracker_intr);

/// Center and box adjustment in one step, with the degenerate-box diagnostic.
AdjustedGt adjust_gt(const BasicGtRecord& rec, const AnnotationCameraParams& ann,
                     const Direction& tracker_pose, const CameraIntrinsics& tracker_intr);

} // namespace vptz
