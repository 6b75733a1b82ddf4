#pragma once

#include <string>
#include <vector>

#include "vptz/geometry.hpp"
#include "vptz/groundtruth.hpp"
#include "vptz/image.hpp"

namespace vptz {

/// One equirectangular frame of a spherical video.
struct PanoramaFrame {
    int index = 0;
    Image image;
};

/// On-disk description of a scenario: an equirectangular PNG sequence.
struct ScenarioManifest {
    int frame_count = 0;
    double fps = 16.0;
    int pano_width = 0;
    int pano_height = 0;
    std::string frame_path_pattern; // printf-style, one integer conversion

    std::string frame_path(int index) const;
};

ScenarioManifest load_manifest(const std::string& path);
void save_manifest(const ScenarioManifest& m, const std::string& path);

/// Frame supply for the virtual camera, disk-backed or in-memory.
/// Frame access caches the last loaded frame; one owner per scenario.
class Scenario {
public:
    /// Opens `scenario.json` (path to the file or to its directory).
    static Scenario open(const std::string& path);
    static Scenario from_frames(std::vector<Image> frames, double fps);

    int frame_count() const { return manifest_.frame_count; }
    double fps() const { return manifest_.fps; }
    const ScenarioManifest& manifest() const { return manifest_; }

    const PanoramaFrame& frame(int index) const;

private:
    Scenario() = default;

    ScenarioManifest manifest_;
    std::string base_dir_;
    std::vector<Image> memory_frames_;
    mutable PanoramaFrame cache_;
    mutable bool cache_valid_ = false;
};

/// Continuous equirectangular pixel position of a sphere direction.
/// x wraps horizontally; y runs top-down with theta = 0 on row 0.
struct PanoPixel {
    double x = 0.0;
    double y = 0.0;
};
PanoPixel direction_to_pano_pixel(const Direction& d, int pano_w, int pano_h);

/// Bilinear sample with horizontal wraparound and vertical clamp;
/// texel centers sit at half-integer positions.
Rgb sample_pano_bilinear(const Image& pano, double x, double y);

/// Renders the rectilinear viewport seen by a camera with the given pose and
/// intrinsics: every output pixel is inverse-mapped to a sphere direction and
/// sampled from the panorama. Deterministic for identical inputs.
Image render_viewport(const Image& pano, const Direction& pose,
                      const CameraIntrinsics& intr);
Image render_viewport(const PanoramaFrame& frame, const Direction& pose,
                      const CameraIntrinsics& intr);

/// Synthetic scenario: a colored geodesic disc moving along a great circle
/// over a neutral background, with analytically exact ground truth.
struct SyntheticPathSpec {
    Direction start{kPi / 2.0, 0.0};      // disc center at phase 0
    double angular_velocity_deg_s = 20.0; // along the great circle
    double phase_deg = 0.0;
    double disc_radius_deg = 5.0;         // geodesic radius, (0, 45)
    Rgb disc_color{220, 40, 40};
    enum class Background { solid, gradient, checker };
    Background background = Background::gradient;
    Rgb background_color{96, 96, 96};
    double duration_s = 10.0;
    double fps = 16.0;
    int pano_width = 1024;
    int pano_height = 512;
    AnnotationCameraParams annotation;

    int frame_count() const;
    /// Disc center direction at the given frame.
    Direction center_at(int frame_index) const;
    /// Exact projected extent of the disc under the annotation camera.
    double bbox_extent_px() const;
};

/// Renders one synthetic equirectangular frame (no disk I/O).
Image render_synthetic_pano(const SyntheticPathSpec& spec, int frame_index);

/// Writes frames/, scenario.json and groundtruth.vgt under out_dir.
struct SyntheticScenario {
    ScenarioManifest manifest;
    GtSequence groundtruth;
};
SyntheticScenario generate_synthetic_scenario(const SyntheticPathSpec& spec,
                                              const std::string& out_dir);

} // namespace vptz
