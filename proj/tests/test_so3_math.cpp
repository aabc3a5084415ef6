#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "so3l1/so3.hpp"

using namespace so3l1;
using oracles::Rng;

TEST_SUITE_BEGIN("so3_math");

TEST_CASE("hat of zero is the zero matrix")
{
    CHECK(max_abs(hat({0, 0, 0})) == 0.0);
}

TEST_CASE("hat of [1,2,3] has the forced layout")
{
    const Mat3 h = hat({1, 2, 3});
    const double expected[3][3] = {{0, -3, 2}, {3, 0, -1}, {-2, 1, 0}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(h(r, c) == expected[r][c]);
}

TEST_CASE("hat(v) w equals the component-formula cross product")
{
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v = rng.vec3(-10, 10), w = rng.vec3(-10, 10);
        CHECK(norm(hat(v) * w - oracles::cross_reference(v, w)) == 0.0);
    }
}

TEST_CASE("vee inverts hat exactly")
{
    Rng rng(12);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v = rng.vec3(-100, 100);
        const Vec3 back = vee(hat(v));
        CHECK(back.x == v.x);
        CHECK(back.y == v.y);
        CHECK(back.z == v.z);
    }
    CHECK(norm(vee(Mat3::zero())) == 0.0);
}

TEST_CASE("vee rejects a symmetric matrix")
{
    CHECK_THROWS_AS(vee(Mat3::identity()), NonSkewInput);
}

TEST_CASE("psi is zero at coincidence and 2 at the antipode")
{
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const RotationMatrix r = rng.rotation();
        CHECK(psi(r, r) == doctest::Approx(0.0).epsilon(1e-12));
    }
    const RotationMatrix flip = RotationMatrix::from_axis_angle({1, 0, 0}, 3.14159265358979323846);
    CHECK(psi(flip, RotationMatrix::identity()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("psi at 178 deg roll matches the trace formula")
{
    const RotationMatrix r = RotationMatrix::from_euler_zyx(deg_to_rad(178.0), 0.0, 0.0);
    const double expected = 1.0 - std::cos(deg_to_rad(178.0));
    CHECK(psi(r, RotationMatrix::identity()) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(psi(r, RotationMatrix::identity()) == doctest::Approx(1.99939).epsilon(1e-5));
}

TEST_CASE("psi stays in [0,2] over random rotation pairs")
{
    Rng rng(14);
    for (int i = 0; i < 100000; ++i) {
        const RotationMatrix a = rng.rotation() * rng.rotation();
        const RotationMatrix b = rng.rotation();
        const double v = psi(a, b);
        CHECK(v >= 0.0);
        CHECK(v <= 2.0);
    }
}

TEST_CASE("c_matrix of the identity is the identity")
{
    CHECK(max_abs(c_matrix(Mat3::identity()) - Mat3::identity()) == 0.0);
}

TEST_CASE("c_matrix operator norm stays within 1")
{
    const Mat3 half_turn =
        RotationMatrix::from_axis_angle({0, 0, 1}, 3.14159265358979323846).matrix();
    CHECK(oracles::operator_norm_reference(c_matrix(half_turn)) <= 1.0 + 1e-12);

    Rng rng(15);
    for (int i = 0; i < 2000; ++i) {
        const Mat3 q = rng.rotation().matrix();
        const Mat3 c = c_matrix(q);
        CHECK(oracles::operator_norm_reference(c) <= 1.0 + 1e-12);
        const Vec3 w = rng.vec3(-5, 5);
        CHECK(norm(c * w) <= norm(w) * (1.0 + 1e-12) + 1e-15);
    }
}

TEST_CASE("attitude errors vanish at the setpoint")
{
    Rng rng(16);
    for (int i = 0; i < 50; ++i) {
        const RotationMatrix r = rng.rotation();
        const Vec3 om = rng.vec3();
        const AttitudeErrors e = attitude_errors(r, om, r, om);
        CHECK(norm(e.e_R) < 1e-15);
        CHECK(norm(e.e_Omega) < 1e-14);
    }
}

TEST_CASE("attitude error about e3 is [0,0,sin theta]")
{
    for (double ang : {0.1, 0.7, 2.5}) {
        const RotationMatrix r = RotationMatrix::from_axis_angle({0, 0, 1}, ang);
        const AttitudeErrors e = attitude_errors(r, {}, RotationMatrix::identity(), {});
        CHECK(e.e_R.x == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(e.e_R.y == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(e.e_R.z == doctest::Approx(std::sin(ang)).epsilon(1e-12));
        CHECK(norm(e.e_R) <= 1.0 + 1e-12);
    }
}

TEST_CASE("rate error reduces to a plain difference at attitude coincidence")
{
    Rng rng(17);
    const RotationMatrix r = rng.rotation();
    const Vec3 om = rng.vec3(), om_d = rng.vec3();
    const AttitudeErrors e = attitude_errors(r, om, r, om_d);
    CHECK(norm(e.e_Omega - (om - om_d)) < 1e-14);
}

TEST_CASE("skew-map trace identity: tr[hat(x) A] = -x . vee(A - A^T)")
{
    Rng rng(18);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 x = rng.vec3(-3, 3);
        const Mat3 a = rng.mat3(-3, 3);
        const double lhs = trace(hat(x) * a);
        const double rhs = -dot(x, vee(a - transpose(a)));
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("conjugation identity: R hat(x) R^T = hat(R x)")
{
    Rng rng(19);
    for (int i = 0; i < 2000; ++i) {
        const RotationMatrix r = rng.rotation();
        const Vec3 x = rng.vec3(-3, 3);
        const Mat3 lhs = r.matrix() * hat(x) * transpose(r.matrix());
        CHECK(max_abs(lhs - hat(r.rotate(x))) < 1e-10);
    }
}

TEST_CASE("symmetrization identity: hat(x) A + A^T hat(x) = hat((tr[A] I - A) x)")
{
    Rng rng(20);
    for (int i = 0; i < 2000; ++i) {
        const Vec3 x = rng.vec3(-3, 3);
        const Mat3 a = rng.mat3(-3, 3);
        const Mat3 lhs = hat(x) * a + transpose(a) * hat(x);
        const Mat3 rhs = hat((trace(a) * Mat3::identity() - a) * x);
        CHECK(max_abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("rotation construction rejects non-orthonormal input")
{
    Mat3 bad = Mat3::identity();
    bad(0, 0) = 1.0 + 1e-6;
    CHECK_THROWS_AS(RotationMatrix::from_matrix(bad), InvalidRotation);
    const Mat3 mirror = Mat3::diag(1.0, 1.0, -1.0);
    CHECK_THROWS_AS(RotationMatrix::from_matrix(mirror), InvalidRotation);
}

TEST_CASE("euler zyx composition round-trips")
{
    Rng rng(21);
    for (int i = 0; i < 500; ++i) {
        const double roll = rng.uniform(-3.0, 3.0);
        const double pitch = rng.uniform(-1.5, 1.5);
        const double yaw = rng.uniform(-3.0, 3.0);
        const EulerZyx e = euler_zyx_from(RotationMatrix::from_euler_zyx(roll, pitch, yaw));
        CHECK(e.roll == doctest::Approx(roll).epsilon(1e-9));
        CHECK(e.pitch == doctest::Approx(pitch).epsilon(1e-9));
        CHECK(e.yaw == doctest::Approx(yaw).epsilon(1e-9));
    }
}

TEST_CASE("axis-angle rotation matches the independent Rodrigues evaluation")
{
    Rng rng(22);
    for (int i = 0; i < 500; ++i) {
        Vec3 axis = rng.vec3();
        if (norm(axis) < 1e-6)
            continue;
        axis = axis / norm(axis);
        const double ang = rng.uniform(-3.1, 3.1);
        const Mat3 got = RotationMatrix::from_axis_angle(axis, ang).matrix();
        CHECK(max_abs(got - oracles::rodrigues_reference(axis, ang)) < 1e-12);
    }
}

TEST_SUITE_END();
