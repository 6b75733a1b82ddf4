#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "vptz/error.hpp"

namespace vptz {

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// 3D point or vector in world coordinates (unit-sphere scale).
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double k) const { return {x * k, y * k, z * k}; }
};

/// Camera viewing direction on the sphere: polar (tilt) angle from the +Z
/// axis and azimuth (pan) angle in the XY plane.
struct Direction {
    double theta = kPi / 2; // [0, pi]
    double phi = 0.0;       // (-pi, pi]

    /// Unit vector pointed at by this direction.
    Vec3 unit_vector() const {
        const double st = std::sin(theta);
        return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
    }

    /// Wraps phi into (-pi, pi] and clamps theta into [0, pi].
    Direction normalized() const {
        double t = theta;
        if (t < 0.0) t = 0.0;
        if (t > kPi) t = kPi;
        double p = std::remainder(phi, 2.0 * kPi); // [-pi, pi]
        if (p <= -kPi) p = kPi;
        return {t, p};
    }

    /// Angle in radians between the two viewing directions; the atan2 form
    /// stays well-conditioned for nearly identical directions.
    double angle_to(const Direction& o) const {
        const Vec3 a = unit_vector(), b = o.unit_vector();
        return std::atan2(a.cross(b).norm(), a.dot(b));
    }
};

/// Frustum parameters of the virtual camera. The near distance is fixed to 1:
/// the image-coordinate equations are independent of it.
struct CameraIntrinsics {
    double vfov = deg_to_rad(90.0); // vertical FOV, (0, pi)
    double aspect = 1.0;            // image-plane width / height
    int width = 640;                // output image width, pixels
    int height = 480;               // output image height, pixels

    static CameraIntrinsics from_fov(double vfov_rad, int width, int height) {
        if (!(vfov_rad > 0.0 && vfov_rad < kPi))
            throw Error("vertical FOV must be in (0, pi)");
        if (width < 1 || height < 1)
            throw Error("image dimensions must be >= 1");
        return {vfov_rad, double(width) / double(height), width, height};
    }

    /// Slope of the frustum's top edge relative to the optical axis.
    double half_fov_slope() const { return std::tan(vfov / 2.0); }
};

/// 2D point on the camera image plane. v grows upward: the origin is the
/// bottom-left image corner. Conversion to raster rows happens only at
/// pixel-I/O boundaries.
struct ImagePoint {
    double u = 0.0;
    double v = 0.0;

    bool inside(const CameraIntrinsics& intr) const {
        return u >= 0.0 && u < intr.width && v >= 0.0 && v < intr.height;
    }
    double distance_to(const ImagePoint& o) const {
        return std::hypot(u - o.u, v - o.v);
    }
};

/// Axis-aligned rectangle in image coordinates; (x, y) is the corner with the
/// smallest coordinates under whatever axis convention the caller uses.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    double area() const { return width > 0.0 && height > 0.0 ? width * height : 0.0; }
    ImagePoint center() const { return {x + width / 2.0, y + height / 2.0}; }
    bool contains(const ImagePoint& p) const {
        return p.u >= x && p.u < x + width && p.v >= y && p.v < y + height;
    }
};

/// Intersection of two rectangles; empty-size result when disjoint.
Rect intersect(const Rect& a, const Rect& b);

/// 3x3 rotation matrix, row-major.
struct RotationMatrix {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }
    RotationMatrix operator*(const RotationMatrix& o) const;
    RotationMatrix transposed() const;
    /// Inverse of a rotation is its transpose.
    RotationMatrix inverse() const { return transposed(); }
    double determinant() const;
};

/// Spherical direction of a world-space point. The azimuth uses the
/// full-quadrant arctangent; by convention phi = 0 on the Z axis.
/// Scale-invariant; throws on the zero vector.
Direction direction_from_point(const Vec3& p);

/// View transformation for a camera aimed at `d`: Rx(theta - pi) * Rz(pi/2 - phi).
/// Maps world space to camera space, where the camera looks down -Z with +Y up.
RotationMatrix view_matrix(const Direction& d);

/// Perspective projection of a camera-space point onto the image plane,
/// bottom-left origin. Empty when the point is not strictly in front of the
/// camera (z >= 0); the caller decides whether that means out of view.
std::optional<ImagePoint> project_camera_point(const Vec3& t_cam,
                                               const CameraIntrinsics& intr);

/// Full forward pipeline: world point -> camera space -> image coordinates.
std::optional<ImagePoint> project_world_point(const Vec3& t, const Direction& pose,
                                              const CameraIntrinsics& intr);

/// Camera-space ray through an image point (near distance fixed to 1).
Vec3 image_point_ray(const ImagePoint& p, const CameraIntrinsics& intr);

/// Inverse pipeline: image coordinates -> camera-space ray -> world direction.
/// The point may lie outside the image bounds; extrapolation is valid.
Direction unproject_image_point(const ImagePoint& p, const Direction& pose,
                                const CameraIntrinsics& intr);

} // namespace vptz
