#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vptz/geometry.hpp"
#include "vptz/groundtruth.hpp"

namespace vptz {

inline constexpr double kInvalidMetric = -1.0;

/// Per-frame metric values. cle and tce carry the -1 sentinel when the
/// target is out of the FOV; tf = 1 exactly on those frames.
struct MetricSample {
    int frame_index = 0;
    double cle = kInvalidMetric;
    double overlap = 0.0;
    double tce = kInvalidMetric;
    int tf = 1;

    bool valid() const { return cle != kInvalidMetric; }
};

/// Intersection-over-union of two axis-aligned boxes; 0 for disjoint or
/// degenerate input.
double overlap_ratio(const Rect& a, const Rect& b);

/// Scores one frame: center location error, overlap ratio, target-to-center
/// error, and the fragmentation indicator. The ground-truth box is clipped
/// to the image before the overlap; a tracker that declared its target lost
/// scores zero overlap while keeping CLE/TCE against its reported center.
MetricSample sample_metrics(const AdjustedGt& gt, const ImagePoint& predicted_center,
                            const Rect& predicted_box, const CameraIntrinsics& intr,
                            bool lost = false);

/// Sequence-level aggregates. CLE/TCE means cover valid frames only and are
/// absent when every frame was invalid; the overlap mean covers all frames.
struct Aggregates {
    std::optional<double> mean_cle;
    double mean_or = 0.0;
    std::optional<double> mean_tce;
    double tf_ratio = 0.0;
    int processed_frames = 0;
    int valid_frames = 0;
};

Aggregates aggregate(const std::vector<MetricSample>& samples);

struct EvalReport {
    Aggregates overall;
    std::map<std::string, Aggregates> per_difficulty;
};

/// Per-frame CSV: `frame,cle,or,tce,tf` with the -1 sentinel preserved.
void write_metrics_csv(const std::vector<MetricSample>& samples, const std::string& path);
std::vector<MetricSample> read_metrics_csv(const std::string& path);

} // namespace vptz
