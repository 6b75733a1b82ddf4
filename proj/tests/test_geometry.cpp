#include <doctest.h>

#include "support/oracles.hpp"
#include "vptz/geometry.hpp"

using namespace vptz;

namespace {
const CameraIntrinsics kSquare480 = CameraIntrinsics::from_fov(deg_to_rad(90.0), 480, 480);
}

TEST_CASE("direction_from_point axis cases") {
    const Direction a = direction_from_point({1.0, 0.0, 0.0});
    CHECK(a.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(a.phi == doctest::Approx(0.0).epsilon(1e-12));

    const Direction pole = direction_from_point({0.0, 0.0, 1.0});
    CHECK(pole.theta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pole.phi == 0.0); // pole convention

    const Direction diag = direction_from_point({1.0, 1.0, 0.0});
    CHECK(diag.theta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(diag.phi == doctest::Approx(kPi / 4).epsilon(1e-12));
}

TEST_CASE("direction_from_point rejects the zero vector") {
    CHECK_THROWS_AS(direction_from_point({0.0, 0.0, 0.0}), Error);
}

TEST_CASE("direction_from_point is scale invariant") {
    oracles::Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const Vec3 p = rng.direction().unit_vector() * rng.uniform(0.5, 2.0);
        const Direction base = direction_from_point(p);
        for (double k : {1e-3, 1.0, 1e3}) {
            const Direction scaled = direction_from_point(p * k);
            CHECK(scaled.theta == doctest::Approx(base.theta).epsilon(1e-12));
            CHECK(scaled.phi == doctest::Approx(base.phi).epsilon(1e-12));
        }
    }
}

TEST_CASE("direction unit vectors are unit length") {
    oracles::Rng rng(12);
    for (int i = 0; i < 1000; ++i)
        CHECK(rng.direction().unit_vector().norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("view_matrix maps the camera axis to -Z") {
    const RotationMatrix m = view_matrix({kPi / 2, 0.0});
    const Vec3 c = m * Vec3{1.0, 0.0, 0.0};
    CHECK(c.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.z == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("view_matrix worked example, hand-multiplied") {
    // Rx(-pi/2) * Rz(pi/2) applied to (1, 0, 1) gives (0, 1, -1).
    const RotationMatrix m = view_matrix({kPi / 2, 0.0});
    const Vec3 c = m * Vec3{1.0, 0.0, 1.0};
    CHECK(c.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.z == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("view_matrix is orthonormal with unit determinant") {
    oracles::Rng rng(13);
    for (int i = 0; i < 10000; ++i) {
        const RotationMatrix m = view_matrix(rng.direction());
        const RotationMatrix mmt = m * m.transposed();
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                CHECK(std::abs(mmt.m[r][c] - (r == c ? 1.0 : 0.0)) < 1e-9);
        CHECK(std::abs(m.determinant() - 1.0) < 1e-9);
    }
}

TEST_CASE("view_matrix agrees with the geometric basis construction") {
    oracles::Rng rng(14);
    for (int i = 0; i < 2000; ++i) {
        const Direction d = rng.direction();
        const RotationMatrix m = view_matrix(d);
        const oracles::CameraBasis b = oracles::camera_basis(d);
        const Vec3 rows[3] = {{m.m[0][0], m.m[0][1], m.m[0][2]},
                              {m.m[1][0], m.m[1][1], m.m[1][2]},
                              {m.m[2][0], m.m[2][1], m.m[2][2]}};
        CHECK((rows[0] - b.right).norm() < 1e-12);
        CHECK((rows[1] - b.up).norm() < 1e-12);
        CHECK((rows[2] - b.back).norm() < 1e-12);
    }
}

TEST_CASE("project_camera_point puts the optical axis at the image center") {
    oracles::Rng rng(15);
    for (int i = 0; i < 100; ++i) {
        const CameraIntrinsics intr = rng.intrinsics();
        const auto p = project_camera_point({0.0, 0.0, -5.0}, intr);
        REQUIRE(p.has_value());
        CHECK(p->u == doctest::Approx(intr.width / 2.0).epsilon(1e-12));
        CHECK(p->v == doctest::Approx(intr.height / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("project_camera_point worked example: 45 degree ray on the top edge") {
    const auto p = project_camera_point({0.0, 1.0, -1.0}, kSquare480);
    REQUIRE(p.has_value());
    CHECK(p->u == doctest::Approx(240.0).epsilon(1e-12));
    CHECK(p->v == doctest::Approx(480.0).epsilon(1e-12));
}

TEST_CASE("project_camera_point rejects points behind the camera") {
    CHECK_FALSE(project_camera_point({0.0, 0.0, 1.0}, kSquare480).has_value());
    CHECK_FALSE(project_camera_point({0.2, -0.3, 0.0}, kSquare480).has_value());
}

TEST_CASE("projection is invariant to the ray scale (the near distance cancels)") {
    oracles::Rng rng(16);
    for (int i = 0; i < 1000; ++i) {
        const CameraIntrinsics intr = rng.intrinsics();
        const Vec3 t{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                     -rng.uniform(0.1, 5.0)};
        const auto a = project_camera_point(t, intr);
        const auto b = project_camera_point(t * 0.01, intr);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(a->distance_to(*b) < 1e-9);
    }
}

TEST_CASE("project_world_point aims straight down the axis") {
    const auto p = project_world_point({1.0, 0.0, 0.0}, {kPi / 2, 0.0}, kSquare480);
    REQUIRE(p.has_value());
    CHECK(p->u == doctest::Approx(240.0).epsilon(1e-12));
    CHECK(p->v == doctest::Approx(240.0).epsilon(1e-12));
}

TEST_CASE("project_world_point worked example chains view and projection") {
    const auto p = project_world_point({1.0, 0.0, 1.0}, {kPi / 2, 0.0}, kSquare480);
    REQUIRE(p.has_value());
    CHECK(p->u == doctest::Approx(240.0).epsilon(1e-9));
    CHECK(p->v == doctest::Approx(480.0).epsilon(1e-9));
}

TEST_CASE("any world point on the camera axis projects to the center") {
    oracles::Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        const Direction pose = rng.direction();
        const CameraIntrinsics intr = rng.intrinsics();
        const auto p =
            project_world_point(pose.unit_vector() * rng.uniform(0.1, 100.0), pose, intr);
        REQUIRE(p.has_value());
        CHECK(std::abs(p->u - intr.width / 2.0) < 1e-9);
        CHECK(std::abs(p->v - intr.height / 2.0) < 1e-9);
    }
}

TEST_CASE("projection matches the independent oracle") {
    oracles::Rng rng(18);
    for (int i = 0; i < 5000; ++i) {
        const Direction pose = rng.direction();
        const CameraIntrinsics intr = rng.intrinsics();
        const Vec3 t = rng.in_frustum_point(pose, intr);
        const auto impl = project_world_point(t, pose, intr);
        const auto ref = oracles::project(t, pose, intr);
        REQUIRE(impl.has_value());
        REQUIRE(ref.has_value());
        CHECK(impl->distance_to(*ref) < 1e-9);
    }
}

TEST_CASE("unproject_image_point returns the camera direction at the center") {
    oracles::Rng rng(19);
    for (int i = 0; i < 1000; ++i) {
        const Direction pose = rng.direction(1e-6);
        const CameraIntrinsics intr = rng.intrinsics();
        const Direction d =
            unproject_image_point({intr.width / 2.0, intr.height / 2.0}, pose, intr);
        CHECK(d.angle_to(pose) < 1e-9);
    }
}

TEST_CASE("unproject_image_point worked example inverts the forward example") {
    const Direction d = unproject_image_point({240.0, 480.0}, {kPi / 2, 0.0}, kSquare480);
    CHECK(d.theta == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(d.phi == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("round trip A: project, unproject, re-project is pixel-stable") {
    oracles::Rng rng(20);
    for (int i = 0; i < 10000; ++i) {
        const Direction pose = rng.direction();
        const CameraIntrinsics intr = rng.intrinsics(20.0, 120.0);
        const Vec3 t = rng.in_frustum_point(pose, intr);
        const auto first = project_world_point(t, pose, intr);
        REQUIRE(first.has_value());
        const Direction d = unproject_image_point(*first, pose, intr);
        const auto second = project_world_point(d.unit_vector(), pose, intr);
        REQUIRE(second.has_value());
        CHECK(first->distance_to(*second) < 1e-6);
    }
}

TEST_CASE("round trip B: unproject then project returns the pixel") {
    oracles::Rng rng(21);
    for (int i = 0; i < 10000; ++i) {
        const Direction pose = rng.direction();
        const CameraIntrinsics intr = rng.intrinsics(20.0, 120.0);
        const ImagePoint px{rng.uniform(0.0, intr.width), rng.uniform(0.0, intr.height)};
        const Direction d = unproject_image_point(px, pose, intr);
        const auto back = project_world_point(d.unit_vector(), pose, intr);
        REQUIRE(back.has_value());
        CHECK(back->distance_to(px) < 1e-6);
    }
}

TEST_CASE("unprojected rays stay collinear with their source points") {
    oracles::Rng rng(22);
    for (int i = 0; i < 10000; ++i) {
        const Direction pose = rng.direction();
        const CameraIntrinsics intr = rng.intrinsics(20.0, 120.0);
        const Vec3 t = rng.in_frustum_point(pose, intr);
        const auto px = project_world_point(t, pose, intr);
        REQUIRE(px.has_value());
        const Vec3 d = unproject_image_point(*px, pose, intr).unit_vector();
        CHECK(d.dot(t.normalized()) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("camera-space points above the axis land in the upper image half") {
    oracles::Rng rng(23);
    for (int i = 0; i < 500; ++i) {
        const CameraIntrinsics intr = rng.intrinsics();
        const auto p = project_camera_point({0.0, rng.uniform(0.01, 0.5), -1.0}, intr);
        REQUIRE(p.has_value());
        CHECK(p->v > intr.height / 2.0);
    }
}

TEST_CASE("rectangle intersection basics") {
    const Rect a{0.0, 0.0, 10.0, 10.0};
    const Rect b{5.0, 0.0, 10.0, 10.0};
    const Rect i = intersect(a, b);
    CHECK(i.area() == doctest::Approx(50.0));
    CHECK(intersect(a, Rect{20.0, 20.0, 5.0, 5.0}).area() == 0.0);
}

TEST_CASE("intrinsics validation") {
    CHECK_THROWS_AS(CameraIntrinsics::from_fov(0.0, 640, 480), Error);
    CHECK_THROWS_AS(CameraIntrinsics::from_fov(kPi, 640, 480), Error);
    CHECK_THROWS_AS(CameraIntrinsics::from_fov(1.0, 0, 480), Error);
    const CameraIntrinsics intr = CameraIntrinsics::from_fov(deg_to_rad(90.0), 640, 480);
    CHECK(intr.aspect == doctest::Approx(640.0 / 480.0));
}
