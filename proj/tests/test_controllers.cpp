#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "so3l1/controllers.hpp"
#include "so3l1/disturbances.hpp"

using namespace so3l1;
using oracles::Rng;

namespace {

const Mat3 kJ = Mat3::diag(6.968e-3, 6.211e-3, 10.34e-3);
constexpr double kMass = 1.129;
constexpr double kGrav = 9.81;

Gains default_gains() { return resolve_gains(Gains{}, kJ); }

AdaptationState make_adapt() { return AdaptationState::create(Mat3::diag(1e6, 1e6, 1e6), 10, 0.1); }

}  // namespace

TEST_SUITE_BEGIN("controllers");

TEST_CASE("gain defaults carry the standard tuning")
{
    const Gains g;
    CHECK(g.k_x == 4.0);
    CHECK(g.k_v == 3.2);
    CHECK(g.k_R == 2.0);
    CHECK(g.k_R_tilde == 2.0);
    CHECK(g.k_R_hat == 25.0);
    CHECK(g.k_Omega == 0.25);
    CHECK(g.k_Omega_tilde == 0.25);
}

TEST_CASE("cross-term constant respects the three-way bound")
{
    const Gains g = default_gains();
    const Vec3 ev = sym_eigenvalues(kJ);
    const double lm = ev.x, lM = ev.z;
    const double b2 = 4.0 * g.k_Omega_tilde * g.k_R_tilde * lm * lm
        / (g.k_Omega_tilde * g.k_Omega_tilde * lM + 4.0 * g.k_R_tilde * lm * lm);
    const double bound = std::min({g.k_Omega_tilde, b2, std::sqrt(g.k_R_tilde * lm)});
    CHECK(g.c == doctest::Approx(0.9 * bound).epsilon(1e-12));
    CHECK(g.c > 0.0);
    CHECK(g.c < bound);
}

TEST_CASE("gain validation rejects non-positive values and an indefinite W")
{
    Gains g;
    g.k_R = 0.0;
    CHECK_THROWS_AS(resolve_gains(g, kJ), ValidationError);
    Gains g2;
    g2.c = 10.0;  // way past the bound
    CHECK_THROWS_AS(resolve_gains(g2, kJ), IndefiniteW);
}

TEST_CASE("hover thrust equals the weight")
{
    const FlatTrajectory hover = [](double t) {
        FlatSample f;
        f.t = t;
        f.x_d = {0, -1, 1};
        return f;
    };
    RigidBodyState s;
    s.x = {0, -1, 1};
    const PositionControlOut out =
        position_control(s, hover, 0.0, 1e-3, default_gains(), kMass, kGrav);
    CHECK(out.f == doctest::Approx(kMass * kGrav).epsilon(1e-12));
    CHECK(out.f == doctest::Approx(11.075).epsilon(1e-3));
    CHECK(max_abs(out.setpoint.R_d.matrix() - Mat3::identity()) < 1e-12);
}

TEST_CASE("position feedback enters the thrust vector with gain k_x")
{
    const FlatTrajectory hover = [](double t) {
        FlatSample f;
        f.t = t;
        return f;
    };
    RigidBodyState s;
    s.x = {0.1, 0, 0};  // e_x = [0.1, 0, 0]
    const PositionControlOut out =
        position_control(s, hover, 0.0, 1e-3, default_gains(), kMass, kGrav);
    CHECK(out.F.x == doctest::Approx(-0.4).epsilon(1e-12));
    CHECK(out.F.y == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(out.F.z == doctest::Approx(-kMass * kGrav).epsilon(1e-12));
}

TEST_CASE("pd moment is zero with no errors and no setpoint motion")
{
    Rng rng(81);
    const Gains g = default_gains();
    for (int i = 0; i < 50; ++i) {
        AttitudeSetpoint sp;
        sp.R_d = rng.rotation();
        RigidBodyState s;
        s.R = sp.R_d;
        s.Omega = {};
        CHECK(norm(geometric_pd_moment(s, sp, g, kJ)) < 1e-14);
    }
}

TEST_CASE("pd moment on a pure attitude error is -k_R e_R")
{
    const Gains g = default_gains();
    AttitudeSetpoint sp;  // identity, zero rates
    RigidBodyState s;
    s.R = RotationMatrix::from_axis_angle({0, 1, 0}, 0.4);
    s.Omega = {};
    const Vec3 e_R = attitude_errors(s.R, {}, sp.R_d, {}).e_R;
    CHECK(norm(geometric_pd_moment(s, sp, g, kJ) - (-g.k_R * e_R)) < 1e-14);
}

TEST_CASE("pd moment with a static setpoint reduces to the textbook form")
{
    Rng rng(82);
    const Gains g = default_gains();
    for (int i = 0; i < 200; ++i) {
        AttitudeSetpoint sp;
        sp.R_d = rng.rotation();
        RigidBodyState s;
        s.R = rng.rotation();
        s.Omega = rng.vec3(-3, 3);
        const AttitudeErrors e = attitude_errors(s.R, s.Omega, sp.R_d, sp.Omega_d);
        const Vec3 expected =
            -g.k_R * e.e_R - g.k_Omega * e.e_Omega + cross(s.Omega, kJ * s.Omega);
        CHECK(norm(geometric_pd_moment(s, sp, g, kJ) - expected) < 1e-12);
    }
}

TEST_CASE("undisturbed pd loop has a non-increasing certificate after the first period")
{
    const Gains g = default_gains();
    const PlantParams p = PlantParams::create(kMass, kJ, kJ, kGrav);
    AttitudeSetpoint sp;  // identity target

    RigidBodyState s;
    s.R = RotationMatrix::from_euler_zyx(deg_to_rad(60.0), 0, 0);
    s.Omega = {0.5, 0.0, 0.0};

    // Admissible start: psi(0) < 2 and the rate inequality.
    const double psi0 = psi(s.R, sp.R_d);
    REQUIRE(psi0 < 2.0);
    REQUIRE(norm_sq(s.Omega) < (2.0 / sym_eigenvalues(kJ).x) * g.k_R * (2.0 - psi0));

    double v_prev = -1.0;
    bool first = true;
    for (int k = 0; k < 4000; ++k) {
        const AttitudeErrors e = attitude_errors(s.R, s.Omega, sp.R_d, sp.Omega_d);
        const double v = 0.5 * dot(e.e_Omega, kJ * e.e_Omega) + g.k_R * psi(s.R, sp.R_d)
            + g.c * dot(e.e_R, e.e_Omega);
        if (!first && k > 1)
            CHECK(v <= v_prev + 1e-12);
        v_prev = v;
        first = false;
        const Vec3 M = geometric_pd_moment(s, sp, g, kJ);
        s = rk4_step(s, kMass * kGrav, M, {}, p, 1e-3);
    }
    CHECK(psi(s.R, sp.R_d) < 1e-4);
}

TEST_CASE("pid with zero integral gain is the pd controller")
{
    Rng rng(83);
    const Gains g = default_gains();  // k_I = 0
    AttitudeSetpoint sp;
    sp.R_d = rng.rotation();
    sp.Omega_d = rng.vec3();
    sp.dOmega_d = rng.vec3();
    RigidBodyState s;
    s.R = rng.rotation();
    s.Omega = rng.vec3();
    const auto [m, st] = geometric_pid_moment(s, sp, g, kJ, PidState{}, 1e-3, 5.0);
    CHECK(norm(m - geometric_pd_moment(s, sp, g, kJ)) == 0.0);
    (void)st;
}

TEST_CASE("pid rejects a constant matched disturbance")
{
    Gains g = default_gains();
    g.k_I = 2.0;
    const PlantParams p = PlantParams::create(kMass, kJ, kJ, kGrav);
    const AttitudeSetpoint sp;  // identity
    const Vec3 th_e{0.3, -0.2, 0.1};

    RigidBodyState s;
    PidState integ;
    double pd_steady = 0.0;
    for (int k = 0; k < 8000; ++k) {
        Vec3 M;
        std::tie(M, integ) = geometric_pid_moment(s, sp, g, kJ, integ, 1e-3, 5.0);
        s = rk4_step(s, kMass * kGrav, M, th_e, p, 1e-3);
        if (k == 1500)
            pd_steady = norm(th_e) / g.k_R;  // the proportional-only offset scale
    }
    const Vec3 e_R_final = attitude_errors(s.R, s.Omega, sp.R_d, sp.Omega_d).e_R;
    CHECK(norm(e_R_final) < 0.02);
    CHECK(norm(e_R_final) < 0.2 * pd_steady);
}

TEST_CASE("pid integral contribution is clamped under a persistent error")
{
    Gains g = default_gains();
    g.k_I = 2.0;
    const AttitudeSetpoint sp;  // identity
    RigidBodyState s;
    s.R = RotationMatrix::from_euler_zyx(deg_to_rad(90.0), 0, 0);  // held error
    PidState integ;
    const double clamp = 0.8;
    for (int k = 0; k < 20000; ++k) {
        Vec3 M;
        std::tie(M, integ) = geometric_pid_moment(s, sp, g, kJ, integ, 1e-3, clamp);
    }
    CHECK(norm_inf(g.k_I * integ.integral) <= clamp + 1e-12);
    CHECK(norm_inf(g.k_I * integ.integral) == doctest::Approx(clamp));  // actually railed
}

TEST_CASE("saturation clamps per axis")
{
    CHECK(norm(saturate_moment({1, 1, 1}, 5.0) - Vec3{1, 1, 1}) == 0.0);
    const Vec3 clamped = saturate_moment({7, -6, 0}, 5.0);
    CHECK(clamped.x == 5.0);
    CHECK(clamped.y == -5.0);
    CHECK(clamped.z == 0.0);

    Rng rng(84);
    for (int i = 0; i < 500; ++i)
        CHECK(norm_inf(saturate_moment(rng.vec3(-20, 20), 5.0)) <= 5.0);
    CHECK_THROWS_AS(saturate_moment({1, 1, 1}, 0.0), ValidationError);
}

TEST_CASE("euler l1 moment vanishes with zero errors and a zero estimate")
{
    const Gains g = default_gains();
    const PlantParams p = PlantParams::create(kMass, kJ, kJ, kGrav);
    const AttitudeSetpoint sp;  // identity
    RigidBodyState s;           // identity, zero rates
    const EulerL1State st{{}, {}, make_adapt()};
    const EulerL1Output out =
        euler_l1_moment(s, sp, st, g, kJ, p.J_inv, 2.0, 1e-3, Integrator::rk4);
    CHECK(norm(out.M) < 1e-12);
    CHECK(norm(out.M_hat) < 1e-12);
}

TEST_CASE("euler l1 agrees with the geometric pd law at the linearization point")
{
    const Gains g = default_gains();
    const PlantParams p = PlantParams::create(kMass, kJ, kJ, kGrav);
    const AttitudeSetpoint sp;
    RigidBodyState s;
    const EulerL1State st{{}, {}, make_adapt()};
    const EulerL1Output out =
        euler_l1_moment(s, sp, st, g, kJ, p.J_inv, 2.0, 1e-3, Integrator::rk4);
    const Vec3 pd = geometric_pd_moment(s, sp, g, kJ);
    CHECK(norm(out.M - pd) < 1e-8);
}

TEST_CASE("euler l1 matches geometric l1 to first order in the small-angle regime")
{
    const Gains g = default_gains();
    const PlantParams p = PlantParams::create(kMass, kJ, kJ, kGrav);
    const AttitudeSetpoint sp;  // identity target

    auto moment_gap = [&](double scale) {
        RigidBodyState s;
        s.R = RotationMatrix::from_euler_zyx(scale * deg_to_rad(4.0), scale * deg_to_rad(-3.0),
                                             scale * deg_to_rad(2.0));
        s.Omega = scale * Vec3{0.02, -0.015, 0.01};
        const Vec3 eta_hat =
            scale * Vec3{deg_to_rad(1.5), deg_to_rad(1.0), deg_to_rad(-0.5)};
        const EulerL1State est{eta_hat, scale * Vec3{0.01, 0.0, -0.005}, make_adapt()};
        const ReferenceState ref{
            RotationMatrix::from_euler_zyx(eta_hat.x, eta_hat.y, eta_hat.z), est.omega_hat};
        const EulerL1Output eu =
            euler_l1_moment(s, sp, est, g, kJ, p.J_inv, 2.0, 1e-3, Integrator::rk4);
        const L1Output geo = l1_control_step(s, ref, make_adapt(), sp, g, kJ, p.J_inv, 2.0,
                                             1e-3, Integrator::rk4);
        return std::pair<double, double>{norm(eu.M - geo.M), norm(geo.M)};
    };

    const auto [gap1, scale1] = moment_gap(0.25);  // errors of ~1 deg
    CHECK(gap1 < 0.05 * scale1);
    // The discrepancy is second order in the angles: halving them cuts the
    // relative gap roughly in half again.
    const auto [gap2, scale2] = moment_gap(0.125);
    CHECK(gap2 / scale2 < 0.7 * gap1 / scale1);
}

TEST_CASE("euler l1 refuses to run at gimbal proximity")
{
    const Gains g = default_gains();
    const PlantParams p = PlantParams::create(kMass, kJ, kJ, kGrav);
    const AttitudeSetpoint sp;
    RigidBodyState s;
    s.R = RotationMatrix::from_euler_zyx(0.0, 0.5 * 3.14159265358979323846 - 1e-8, 0.0);
    const EulerL1State st{{}, {}, make_adapt()};
    CHECK_THROWS_AS(euler_l1_moment(s, sp, st, g, kJ, p.J_inv, 2.0, 1e-3, Integrator::rk4),
                    GimbalProximity);
}

TEST_SUITE_END();
