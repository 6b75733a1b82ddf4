#include "vptz/panorama.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace vptz {

namespace {

/// Accepts exactly one %<flags><width>d conversion, nothing else.
void validate_pattern(const std::string& pattern) {
    int conversions = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern[i] != '%')
            continue;
        std::size_t j = i + 1;
        if (j < pattern.size() && pattern[j] == '%') { // literal percent
            i = j;
            continue;
        }
        while (j < pattern.size() && (pattern[j] == '0' || pattern[j] == '-' ||
                                      (pattern[j] >= '1' && pattern[j] <= '9')))
            ++j;
        if (j >= pattern.size() || pattern[j] != 'd')
            throw Error("frame_path_pattern must use a single %d-style conversion: '" +
                        pattern + "'");
        ++conversions;
        i = j;
    }
    if (conversions != 1)
        throw Error("frame_path_pattern must contain exactly one %d conversion: '" +
                    pattern + "'");
}

void check_pano_dims(int width, int height) {
    if (width < 2 || height < 1 || width != 2 * height)
        throw Error("panorama must be full equirectangular (width = 2 x height), got " +
                    std::to_string(width) + "x" + std::to_string(height));
}

} // namespace

std::string ScenarioManifest::frame_path(int index) const {
    validate_pattern(frame_path_pattern);
    char buf[512];
    std::snprintf(buf, sizeof(buf), frame_path_pattern.c_str(), index);
    return buf;
}

ScenarioManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open scenario manifest '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("invalid JSON in '" + path + "': " + e.what());
    }
    ScenarioManifest m;
    try {
        m.frame_count = j.at("frame_count").get<int>();
        m.fps = j.at("fps").get<double>();
        m.pano_width = j.at("pano_width").get<int>();
        m.pano_height = j.at("pano_height").get<int>();
        m.frame_path_pattern = j.at("frame_path_pattern").get<std::string>();
    } catch (const json::exception& e) {
        throw Error("invalid scenario manifest '" + path + "': " + e.what());
    }
    if (m.frame_count < 1)
        throw Error("scenario '" + path + "' must have at least one frame");
    if (m.fps <= 0.0)
        throw Error("scenario '" + path + "' must have fps > 0");
    check_pano_dims(m.pano_width, m.pano_height);
    validate_pattern(m.frame_path_pattern);
    return m;
}

void save_manifest(const ScenarioManifest& m, const std::string& path) {
    json j{{"frame_count", m.frame_count},
           {"fps", m.fps},
           {"pano_width", m.pano_width},
           {"pano_height", m.pano_height},
           {"frame_path_pattern", m.frame_path_pattern}};
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write scenario manifest '" + path + "'");
    out << j.dump(2) << "\n";
}

Scenario Scenario::open(const std::string& path) {
    fs::path p(path);
    if (fs::is_directory(p))
        p /= "scenario.json";
    Scenario s;
    s.manifest_ = load_manifest(p.string());
    s.base_dir_ = p.parent_path().string();
    return s;
}

Scenario Scenario::from_frames(std::vector<Image> frames, double fps) {
    if (frames.empty())
        throw Error("scenario must have at least one frame");
    if (fps <= 0.0)
        throw Error("scenario must have fps > 0");
    check_pano_dims(frames[0].width(), frames[0].height());
    for (const auto& f : frames)
        if (f.width() != frames[0].width() || f.height() != frames[0].height())
            throw Error("all scenario frames must share one size");
    Scenario s;
    s.manifest_.frame_count = int(frames.size());
    s.manifest_.fps = fps;
    s.manifest_.pano_width = frames[0].width();
    s.manifest_.pano_height = frames[0].height();
    s.manifest_.frame_path_pattern = "<memory>%d";
    s.memory_frames_ = std::move(frames);
    return s;
}

const PanoramaFrame& Scenario::frame(int index) const {
    if (index < 0 || index >= manifest_.frame_count)
        throw Error("frame index " + std::to_string(index) + " out of range [0, " +
                    std::to_string(manifest_.frame_count) + ")");
    if (!memory_frames_.empty()) {
        cache_.index = index;
        cache_.image = memory_frames_[std::size_t(index)];
        return cache_;
    }
    if (cache_valid_ && cache_.index == index)
        return cache_;
    const fs::path p = fs::path(base_dir_) / manifest_.frame_path(index);
    cache_.image = load_png(p.string());
    if (cache_.image.width() != manifest_.pano_width ||
        cache_.image.height() != manifest_.pano_height)
        throw Error("frame '" + p.string() + "' size does not match the manifest");
    cache_.index = index;
    cache_valid_ = true;
    return cache_;
}

PanoPixel direction_to_pano_pixel(const Direction& d, int pano_w, int pano_h) {
    double x = d.phi / (2.0 * kPi) * pano_w;
    x = std::fmod(x, double(pano_w));
    if (x < 0.0)
        x += pano_w;
    if (x >= pano_w)
        x -= pano_w;
    double y = d.theta / kPi * pano_h;
    y = std::clamp(y, 0.0, std::nextafter(double(pano_h), 0.0));
    return {x, y};
}

Rgb sample_pano_bilinear(const Image& pano, double x, double y) {
    const int w = pano.width(), h = pano.height();
    const double xf = x - 0.5, yf = y - 0.5;
    double x0d = std::floor(xf), y0d = std::floor(yf);
    const double fx = xf - x0d, fy = yf - y0d;
    int x0 = int(x0d) % w;
    if (x0 < 0)
        x0 += w;
    const int x1 = (x0 + 1) % w; // horizontal wrap
    const int y0 = std::clamp(int(y0d), 0, h - 1);
    const int y1 = std::clamp(int(y0d) + 1, 0, h - 1); // vertical clamp
    const Rgb c00 = pano.at(x0, y0), c10 = pano.at(x1, y0);
    const Rgb c01 = pano.at(x0, y1), c11 = pano.at(x1, y1);
    auto lerp2 = [&](double a, double b, double c, double d) {
        const double top = a * (1.0 - fx) + b * fx;
        const double bot = c * (1.0 - fx) + d * fx;
        return top * (1.0 - fy) + bot * fy;
    };
    return {std::uint8_t(std::lround(lerp2(c00.r, c10.r, c01.r, c11.r))),
            std::uint8_t(std::lround(lerp2(c00.g, c10.g, c01.g, c11.g))),
            std::uint8_t(std::lround(lerp2(c00.b, c10.b, c01.b, c11.b)))};
}

Image render_viewport(const Image& pano, const Direction& pose,
                      const CameraIntrinsics& intr) {
    check_pano_dims(pano.width(), pano.height());
    if (intr.vfov > deg_to_rad(150.0))
        throw Error("viewport FOV above 150 degrees is not supported");
    Image out(intr.width, intr.height);
    const RotationMatrix world_from_cam = view_matrix(pose).transposed();
    for (int v = 0; v < intr.height; ++v) {
        const int row = intr.height - 1 - v; // bottom-up v -> raster row
        for (int u = 0; u < intr.width; ++u) {
            const Vec3 ray = world_from_cam *
                             image_point_ray({u + 0.5, v + 0.5}, intr);
            const PanoPixel p =
                direction_to_pano_pixel(direction_from_point(ray),
                                        pano.width(), pano.height());
            out.set(u, row, sample_pano_bilinear(pano, p.x, p.y));
        }
    }
    return out;
}

Image render_viewport(const PanoramaFrame& frame, const Direction& pose,
                      const CameraIntrinsics& intr) {
    return render_viewport(frame.image, pose, intr);
}

int SyntheticPathSpec::frame_count() const {
    return int(std::lround(duration_s * fps));
}

Direction SyntheticPathSpec::center_at(int frame_index) const {
    const Vec3 u0 = start.unit_vector();
    // Eastward tangent; the path is the great circle through start along it.
    const Vec3 east = Vec3{0.0, 0.0, 1.0}.cross(u0).normalized();
    const double a =
        deg_to_rad(phase_deg + angular_velocity_deg_s * frame_index / fps);
    return direction_from_point(u0 * std::cos(a) + east * std::sin(a));
}

double SyntheticPathSpec::bbox_extent_px() const {
    // A geodesic disc viewed along its axis projects to a circle of slope
    // radius tan(rho); in pixels that is height * tan(rho) / tan(vfov/2).
    const double rho = deg_to_rad(disc_radius_deg);
    return annotation.height * std::tan(rho) /
           std::tan(deg_to_rad(annotation.vfov_deg) / 2.0);
}

Image render_synthetic_pano(const SyntheticPathSpec& spec, int frame_index) {
    const int w = spec.pano_width, h = spec.pano_height;
    check_pano_dims(w, h);
    const Vec3 c = spec.center_at(frame_index).unit_vector();
    const double cos_rho = std::cos(deg_to_rad(spec.disc_radius_deg));

    std::vector<double> cos_phi(w), sin_phi(w);
    for (int i = 0; i < w; ++i) {
        const double phi = (i + 0.5) / w * 2.0 * kPi;
        cos_phi[i] = std::cos(phi);
        sin_phi[i] = std::sin(phi);
    }

    Image img(w, h);
    for (int j = 0; j < h; ++j) {
        const double theta = (j + 0.5) / h * kPi;
        const double st = std::sin(theta), ct = std::cos(theta);
        for (int i = 0; i < w; ++i) {
            Rgb px;
            switch (spec.background) {
            case SyntheticPathSpec::Background::solid:
                px = spec.background_color;
                break;
            case SyntheticPathSpec::Background::gradient: {
                const double base = 40.0 + 150.0 * j / (h - 1);
                const double stripe = 25.0 * std::sin(8.0 * kPi * i / w);
                const auto g = std::uint8_t(std::clamp(base + stripe, 0.0, 255.0));
                px = {g, g, g};
                break;
            }
            case SyntheticPathSpec::Background::checker: {
                const auto g = std::uint8_t(((i / 32 + j / 32) % 2) ? 110 : 70);
                px = {g, g, g};
                break;
            }
            }
            const double dot = st * (c.x * cos_phi[i] + c.y * sin_phi[i]) + ct * c.z;
            if (dot >= cos_rho)
                px = spec.disc_color;
            img.set(i, j, px);
        }
    }
    return img;
}

SyntheticScenario generate_synthetic_scenario(const SyntheticPathSpec& spec,
                                              const std::string& out_dir) {
    if (spec.disc_radius_deg <= 0.0 || spec.disc_radius_deg >= 45.0)
        throw Error("disc radius must be in (0, 45) degrees");
    if (spec.angular_velocity_deg_s < 0.0)
        throw Error("angular velocity must be >= 0");
    if (spec.fps <= 0.0 || spec.duration_s <= 0.0)
        throw Error("fps and duration must be positive");
    const double pole_margin = deg_to_rad(1.0);
    if (spec.start.theta < pole_margin || spec.start.theta > kPi - pole_margin)
        throw Error("path start direction must be away from the poles");

    const int n = spec.frame_count();
    if (n < 1)
        throw Error("duration x fps must give at least one frame");

    const fs::path root(out_dir);
    std::error_code ec;
    fs::create_directories(root / "frames", ec);
    if (ec)
        throw Error("cannot create output directory '" + out_dir + "': " + ec.message());

    SyntheticScenario out;
    out.manifest = {n, spec.fps, spec.pano_width, spec.pano_height, "frames/%06d.png"};

    std::map<int, BasicGtRecord> records;
    const double extent = spec.bbox_extent_px();
    for (int i = 0; i < n; ++i) {
        save_png(render_synthetic_pano(spec, i),
                 (root / out.manifest.frame_path(i)).string());
        const Direction c = spec.center_at(i);
        records[i] = {i, rad_to_deg(c.phi), rad_to_deg(c.theta), extent, extent};
    }
    out.groundtruth = GtSequence(spec.annotation, std::move(records));

    save_manifest(out.manifest, (root / "scenario.json").string());
    out.groundtruth.save((root / "groundtruth.vgt").string());
    return out;
}

} // namespace vptz
