// rigid_body.hpp - quadrotor equations of motion and fixed-step attitude-safe
// integration. Conventions: e3 is the gravity direction, thrust acts along
// -b3, moments and rates are in the body frame.
#pragma once

#include "so3l1/so3.hpp"

namespace so3l1 {

struct PlantParams {
    double m = 0.0;    // kg
    Mat3 J;            // nominal inertia, kg m^2 (used by controllers)
    Mat3 J_bar;        // true inertia, kg m^2 (used by the plant)
    double g = 9.81;   // m/s^2

    // Cached at construction.
    Mat3 J_inv;
    Mat3 J_bar_inv;
    double lambda_min_J = 0.0;
    double lambda_max_J = 0.0;

    // Validates m > 0, g > 0, J and J_bar symmetric positive definite.
    static PlantParams create(double m, const Mat3& J, const Mat3& J_bar, double g = 9.81);
};

struct RigidBodyState {
    Vec3 x;             // m, inertial
    Vec3 v;             // m/s, inertial
    RotationMatrix R;   // body -> inertial
    Vec3 Omega;         // rad/s, body
};

struct StateDerivative {
    Vec3 x_dot;
    Vec3 v_dot;
    Mat3 R_dot;
    Vec3 Omega_dot;
};

// Inertia increment of a point mass m_a fixed at body position r:
// J_ma = -m_a * hat(r)^2 = m_a * (|r|^2 I - r r^T). Throws NegativeMass.
Mat3 added_mass_inertia(double m_a, const Vec3& r);

// Plant dynamics with true inertia J_bar and external moment disturbance
// theta_e (body frame):
//   x_dot = v,  m v_dot = m g e3 - f R e3,
//   R_dot = R hat(Omega),  J_bar Omega_dot = M - Omega x J_bar Omega + theta_e.
StateDerivative true_model_derivative(const RigidBodyState& s, double f, const Vec3& M,
                                      const Vec3& theta_e, const PlantParams& p);

enum class Integrator { rk4, euler, expmap };

// One classical RK4 step with (f, M, theta_e) held constant, integrating the
// attitude in the ambient 3x3 space and reprojecting onto SO(3).
RigidBodyState rk4_step(const RigidBodyState& s, double f, const Vec3& M, const Vec3& theta_e,
                        const PlantParams& p, double dt);

// Same contract, selectable scheme. `expmap` advances the attitude with the
// group exponential of the stage-averaged body rate (exact for constant spin).
RigidBodyState integrate_step(const RigidBodyState& s, double f, const Vec3& M,
                              const Vec3& theta_e, const PlantParams& p, double dt,
                              Integrator kind);

// Nearest rotation in Frobenius norm (polar factor), by the Newton iteration
// X <- (X + X^-T)/2. Throws DegenerateMatrix for det(m) <= 0 or near
// rank-deficient input.
RotationMatrix reproject_so3(const Mat3& m);

// Attitude-only rigid body (used for the reference model):
//   R_dot = R hat(Omega), J Omega_dot = M - Omega x J Omega.
struct AttitudeState {
    RotationMatrix R;
    Vec3 Omega;
};

AttitudeState attitude_step(const AttitudeState& s, const Vec3& M, const Mat3& J,
                            const Mat3& J_inv, double dt, Integrator kind);

}  // namespace so3l1
