#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "so3l1/trajectories.hpp"

using namespace so3l1;
using oracles::Rng;

namespace {

constexpr double kMass = 1.129;
constexpr double kGrav = 9.81;

FlatTrajectory circle_traj(double rho, double om)
{
    return [rho, om](double t) { return circle_flat(t, rho, om); };
}

// Central-difference check that `lo` is the derivative of `hi` to O(h^2).
template <typename F, typename G>
double chain_error(F hi, G lo, double t, double h)
{
    const Vec3 fd = (hi(t + h) - hi(t - h)) / (2.0 * h);
    return norm(fd - lo(t));
}

}  // namespace

TEST_SUITE_BEGIN("trajectories");

TEST_CASE("circle sample at t = 0 with rho = 1, omega = 2")
{
    const FlatSample f = circle_flat(0.0, 1.0, 2.0);
    CHECK(norm(f.x_d - Vec3{1, 0, 0}) < 1e-15);
    CHECK(norm(f.v_d - Vec3{0, 2, 0}) < 1e-15);
    CHECK(norm(f.a_d - Vec3{-4, 0, 0}) < 1e-15);
}

TEST_CASE("circle yaw reference is identically zero and the radius is exact")
{
    Rng rng(41);
    for (int i = 0; i < 200; ++i) {
        const double t = rng.uniform(-20.0, 20.0);
        const FlatSample f = circle_flat(t, 1.0, 2.0);
        CHECK(f.psi_d == 0.0);
        CHECK(norm(f.x_d) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("circle derivative chain closes under finite differences")
{
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform(0.0, 10.0);
        const double h = 1e-4;
        auto x = [](double s) { return circle_flat(s, 1.0, 2.0).x_d; };
        auto v = [](double s) { return circle_flat(s, 1.0, 2.0).v_d; };
        auto a = [](double s) { return circle_flat(s, 1.0, 2.0).a_d; };
        auto j = [](double s) { return circle_flat(s, 1.0, 2.0).jerk_d; };
        CHECK(chain_error(x, v, t, h) < 1e-6);
        CHECK(chain_error(v, a, t, h) < 1e-6);
        CHECK(chain_error(a, j, t, h) < 1e-5);
    }
}

TEST_CASE("sigmoid circle phase at t0 is 2 pi a / (b + 1)")
{
    SigmoidCircleParams p;  // a = 13, b = 1, c = 0.1, t0 = 80
    const FlatSample f = sigmoid_circle_flat(p.t0, p);
    // phase = 13 pi there, so the position is at angle pi from the +x axis.
    CHECK(f.x_d.x == doctest::Approx(p.x0 - p.rho).epsilon(1e-9));
    CHECK(f.x_d.y == doctest::Approx(p.y0).epsilon(1e-9));
    CHECK(std::cos(13.0 * std::numbers::pi) == doctest::Approx(-1.0));
}

TEST_CASE("sigmoid circle speed starts at zero and peaks near 2 m/s")
{
    SigmoidCircleParams p;
    CHECK(norm(sigmoid_circle_flat(p.t0 - 300.0, p).v_d) < 1e-9);
    double vmax = 0.0;
    for (double t = 0.0; t < 200.0; t += 0.05)
        vmax = std::max(vmax, norm(sigmoid_circle_flat(t, p).v_d));
    CHECK(vmax == doctest::Approx(2.0 * std::numbers::pi * p.a * p.c / (4.0 * p.b)).epsilon(1e-3));
}

TEST_CASE("sigmoid circle derivative chain closes under finite differences")
{
    SigmoidCircleParams p;
    const double h = 1e-4;
    for (double t : {40.0, 70.0, 80.0, 90.0, 120.0}) {
        auto x = [&p](double s) { return sigmoid_circle_flat(s, p).x_d; };
        auto v = [&p](double s) { return sigmoid_circle_flat(s, p).v_d; };
        auto a = [&p](double s) { return sigmoid_circle_flat(s, p).a_d; };
        auto j = [&p](double s) { return sigmoid_circle_flat(s, p).jerk_d; };
        CHECK(chain_error(x, v, t, h) < 1e-6);
        CHECK(chain_error(v, a, t, h) < 1e-5);
        CHECK(chain_error(a, j, t, h) < 1e-4);
    }
}

TEST_CASE("hover setpoint is the identity with zero rates")
{
    const AttitudeSetpoint sp = attitude_setpoint_static(0, 0, 0);
    CHECK(max_abs(sp.R_d.matrix() - Mat3::identity()) == 0.0);
    CHECK(norm(sp.Omega_d) == 0.0);
    CHECK(norm(sp.dOmega_d) == 0.0);
}

TEST_CASE("30/30/30 step matches the explicit Z-Y-X composition")
{
    const double a = deg_to_rad(30.0);
    const Mat3 rx = oracles::rodrigues_reference({1, 0, 0}, a);
    const Mat3 ry = oracles::rodrigues_reference({0, 1, 0}, a);
    const Mat3 rz = oracles::rodrigues_reference({0, 0, 1}, a);
    const AttitudeSetpoint sp = attitude_setpoint_static(a, a, a);
    CHECK(max_abs(sp.R_d.matrix() - rz * ry * rx) < 1e-14);
}

TEST_CASE("hover flat sample with zero errors gives the identity attitude")
{
    const FlatTrajectory hover = [](double t) {
        FlatSample f;
        f.t = t;
        f.x_d = {0, -1, 1};
        return f;
    };
    const AttitudeSetpoint sp = attitude_from_flat(hover, 0.7, 1e-3, 4.0, 3.2, {}, {}, kMass, kGrav);
    CHECK(max_abs(sp.R_d.matrix() - Mat3::identity()) < 1e-12);
    CHECK(norm(sp.Omega_d) < 1e-12);
    CHECK(norm(sp.dOmega_d) < 1e-9);
}

TEST_CASE("desired rotation columns are orthonormal with unit thrust axis")
{
    Rng rng(43);
    for (int i = 0; i < 500; ++i) {
        FlatSample f = circle_flat(rng.uniform(0.0, 5.0), 1.0, 2.0);
        const Vec3 e_x = rng.vec3(-0.3, 0.3), e_v = rng.vec3(-0.3, 0.3);
        const RotationMatrix rd = desired_rotation(f, 4.0, 3.2, e_x, e_v, kMass, kGrav);
        CHECK(frobenius_norm(transpose(rd.matrix()) * rd.matrix() - Mat3::identity()) < 1e-12);
        CHECK(det(rd.matrix()) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(norm(rd.col(2)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("degenerate thrust is rejected")
{
    // Errors chosen so the commanded thrust vector cancels exactly.
    FlatSample f;
    const Vec3 e_x{0.0, 0.0, -kMass * kGrav / 4.0};
    CHECK_THROWS_AS(desired_rotation(f, 4.0, 3.2, e_x, {}, kMass, kGrav), DegenerateThrust);
}

TEST_CASE("circle setpoint rate is pi-periodic and consistent with R_d kinematics")
{
    const FlatTrajectory traj = circle_traj(1.0, 2.0);
    const double h = 1e-3;
    const AttitudeSetpoint sp1 = attitude_from_flat(traj, 0.4, h, 4.0, 3.2, {}, {}, kMass, kGrav);
    const AttitudeSetpoint sp2 =
        attitude_from_flat(traj, 0.4 + std::numbers::pi, h, 4.0, 3.2, {}, {}, kMass, kGrav);
    CHECK(norm(sp1.Omega_d - sp2.Omega_d) < 1e-9);
    CHECK(std::isfinite(norm(sp1.dOmega_d)));

    // hat(Omega_d) should match R_d^T dR_d/dt estimated with a finer stencil.
    const double h2 = h / 8.0;
    auto rd_of = [&](double t) {
        const FlatSample f = traj(t);
        return desired_rotation(f, 4.0, 3.2, {}, {}, kMass, kGrav).matrix();
    };
    const Mat3 rd_dot = (1.0 / (2.0 * h2)) * (rd_of(0.4 + h2) - rd_of(0.4 - h2));
    const Mat3 w = transpose(rd_of(0.4)) * rd_dot;
    CHECK(max_abs(hat(sp1.Omega_d) - 0.5 * (w - transpose(w))) < 1e-5);
}

TEST_CASE("constant desired attitude yields zero rates through the stencil")
{
    const FlatTrajectory hover = [](double t) {
        FlatSample f;
        f.t = t;
        f.x_d = {0.3, 0.1, -0.2};
        return f;
    };
    const Vec3 e_x{0.05, -0.02, 0.01};
    const AttitudeSetpoint sp = attitude_from_flat(hover, 1.0, 1e-3, 4.0, 3.2, e_x, {}, kMass, kGrav);
    CHECK(norm(sp.Omega_d) < 1e-13);
    CHECK(norm(sp.dOmega_d) < 1e-10);
}

TEST_SUITE_END();
