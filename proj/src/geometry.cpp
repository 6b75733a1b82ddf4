#include "vptz/geometry.hpp"

namespace vptz {

Rect intersect(const Rect& a, const Rect& b) {
    const double x0 = std::max(a.x, b.x);
    const double y0 = std::max(a.y, b.y);
    const double x1 = std::min(a.x + a.width, b.x + b.width);
    const double y1 = std::min(a.y + a.height, b.y + b.height);
    if (x1 <= x0 || y1 <= y0)
        return {x0, y0, 0.0, 0.0};
    return {x0, y0, x1 - x0, y1 - y0};
}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& o) const {
    RotationMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
    return r;
}

RotationMatrix RotationMatrix::transposed() const {
    RotationMatrix r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = m[j][i];
    return r;
}

double RotationMatrix::determinant() const {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Direction direction_from_point(const Vec3& p) {
    const double n = p.norm();
    if (n == 0.0)
        throw Error("direction of the zero vector is undefined");
    const double theta = std::acos(std::clamp(p.z / n, -1.0, 1.0));
    // phi := 0 on the poles keeps results deterministic.
    const double phi = (p.x == 0.0 && p.y == 0.0) ? 0.0 : std::atan2(p.y, p.x);
    return {theta, phi};
}

namespace {

RotationMatrix rotation_x(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    RotationMatrix r;
    r.m[1][1] = c;
    r.m[1][2] = -s;
    r.m[2][1] = s;
    r.m[2][2] = c;
    return r;
}

RotationMatrix rotation_z(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    RotationMatrix r;
    r.m[0][0] = c;
    r.m[0][1] = -s;
    r.m[1][0] = s;
    r.m[1][1] = c;
    return r;
}

} // namespace

RotationMatrix view_matrix(const Direction& d) {
    return rotation_x(d.theta - kPi) * rotation_z(kPi / 2.0 - d.phi);
}

std::optional<ImagePoint> project_camera_point(const Vec3& t_cam,
                                               const CameraIntrinsics& intr) {
    if (t_cam.z >= 0.0)
        return std::nullopt;
    const double denom = 2.0 * std::abs(t_cam.z) * intr.half_fov_slope();
    const double u = intr.width * (t_cam.x / (intr.aspect * denom) + 0.5);
    const double v = intr.height * (t_cam.y / denom + 0.5);
    return ImagePoint{u, v};
}

std::optional<ImagePoint> project_world_point(const Vec3& t, const Direction& pose,
                                              const CameraIntrinsics& intr) {
    return project_camera_point(view_matrix(pose) * t, intr);
}

Vec3 image_point_ray(const ImagePoint& p, const CameraIntrinsics& intr) {
    const double slope = intr.half_fov_slope();
    return {2.0 * intr.aspect * (p.u / intr.width - 0.5) * slope,
            2.0 * (p.v / intr.height - 0.5) * slope,
            -1.0};
}

Direction unproject_image_point(const ImagePoint& p, const Direction& pose,
                                const CameraIntrinsics& intr) {
    const Vec3 ray_world = view_matrix(pose).transposed() * image_point_ray(p, intr);
    return direction_from_point(ray_world);
}

} // namespace vptz
