#include "vptz/groundtruth.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vptz {

GtSequence GtSequence::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open GT file '" + path + "'");
    std::string line;
    int line_no = 0;

    if (!std::getline(in, line))
        throw ParseError(path, 1, "empty GT file, expected 'vgt 1 <vfov> <width> <height>' header");
    ++line_no;
    AnnotationCameraParams cam;
    {
        std::istringstream hs(line);
        std::string magic;
        int version = 0;
        if (!(hs >> magic >> version >> cam.vfov_deg >> cam.width >> cam.height) ||
            magic != "vgt")
            throw ParseError(path, line_no, "malformed header '" + line + "'");
        if (version != 1)
            throw ParseError(path, line_no, "unsupported vgt version " + std::to_string(version));
        if (cam.vfov_deg <= 0.0 || cam.vfov_deg >= 180.0 || cam.width < 1 || cam.height < 1)
            throw ParseError(path, line_no, "invalid annotation camera parameters");
    }

    std::map<int, BasicGtRecord> records;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        BasicGtRecord rec;
        if (!(ls >> rec.frame_index >> rec.pan_deg >> rec.tilt_deg >> rec.bbox_w >> rec.bbox_h))
            throw ParseError(path, line_no, "malformed GT record '" + line + "'");
        if (rec.bbox_w <= 0.0 || rec.bbox_h <= 0.0)
            throw ParseError(path, line_no, "bounding box dimensions must be positive");
        if (!std::isfinite(rec.pan_deg) || !std::isfinite(rec.tilt_deg))
            throw ParseError(path, line_no, "angles must be finite");
        records[rec.frame_index] = rec;
    }
    return GtSequence(cam, std::move(records));
}

void GtSequence::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open GT file '" + path + "' for writing");
    char buf[160];
    std::snprintf(buf, sizeof(buf), "vgt 1 %.6f %d %d\n", camera_.vfov_deg,
                  camera_.width, camera_.height);
    out << buf;
    for (const auto& [idx, rec] : records_) {
        std::snprintf(buf, sizeof(buf), "%d %.6f %.6f %.6f %.6f\n", idx, rec.pan_deg,
                      rec.tilt_deg, rec.bbox_w, rec.bbox_h);
        out << buf;
    }
    if (!out)
        throw Error("failed writing GT file '" + path + "'");
}

const BasicGtRecord& GtSequence::first() const {
    if (records_.empty())
        throw Error("GT sequence has no records");
    return records_.begin()->second;
}

const BasicGtRecord* GtSequence::find_after(int frame_index) const {
    auto it = records_.upper_bound(frame_index);
    return it == records_.end() ? nullptr : &it->second;
}

std::optional<ImagePoint> adjust_center(const BasicGtRecord& rec,
                                        const Direction& tracker_pose,
                                        const CameraIntrinsics& tracker_intr) {
    const auto p = project_world_point(rec.direction().unit_vector(), tracker_pose,
                                       tracker_intr);
    if (!p || !p->inside(tracker_intr))
        return std::nullopt;
    return p;
}

std::optional<Rect> adjust_bbox(const BasicGtRecord& rec,
                                const AnnotationCameraParams& ann,
                                const Direction& tracker_pose,
                                const CameraIntrinsics& tracker_intr) {
    if (!adjust_center(rec, tracker_pose, tracker_intr))
        return std::nullopt;

    const CameraIntrinsics ann_intr = ann.intrinsics();
    const Direction ann_pose = rec.direction();
    const double left = (ann_intr.width - rec.bbox_w) / 2.0;
    const double right = (ann_intr.width + rec.bbox_w) / 2.0;
    const double bottom = (ann_intr.height - rec.bbox_h) / 2.0;
    const double top = (ann_intr.height + rec.bbox_h) / 2.0;

    // Vertex order: TL, TR, BL, BR as seen in the annotation view.
    const std::array<ImagePoint, 4> ann_vertices{
        ImagePoint{left, top}, ImagePoint{right, top},
        ImagePoint{left, bottom}, ImagePoint{right, bottom}};

    std::array<ImagePoint, 4> projected;
    for (std::size_t i = 0; i < 4; ++i) {
        const Direction dir = unproject_image_point(ann_vertices[i], ann_pose, ann_intr);
        const auto p = project_world_point(dir.unit_vector(), tracker_pose, tracker_intr);
        if (!p)
            return std::nullopt; // vertex behind the camera, box unusable
        projected[i] = *p;
    }

    // Pairwise means: sides come from the vertices that formed them originally.
    const double new_left = (projected[0].u + projected[2].u) / 2.0;
    const double new_right = (projected[1].u + projected[3].u) / 2.0;
    const double new_top = (projected[0].v + projected[1].v) / 2.0;
    const double new_bottom = (projected[2].v + projected[3].v) / 2.0;
    if (new_right <= new_left || new_top <= new_bottom)
        return std::nullopt;
    return Rect{new_left, new_bottom, new_right - new_left, new_top - new_bottom};
}

AdjustedGt adjust_gt(const BasicGtRecord& rec, const AnnotationCameraParams& ann,
                     const Direction& tracker_pose, const CameraIntrinsics& tracker_intr) {
    AdjustedGt out;
    out.center = adjust_center(rec, tracker_pose, tracker_intr);
    if (!out.center)
        return out;
    out.box = adjust_bbox(rec, ann, tracker_pose, tracker_intr);
    out.degenerate_box = !out.box.has_value();
    return out;
}

} // namespace vptz
