#include "so3l1/rigid_body.hpp"

#include <cmath>

namespace so3l1 {

namespace {

Mat3 require_spd_inverse(const Mat3& j, const char* name)
{
    if (max_abs(j - transpose(j)) > 1e-9 * std::max(1.0, max_abs(j)))
        throw ValidationError(std::string(name) + " must be symmetric");
    const Vec3 ev = sym_eigenvalues(j);
    if (ev.x <= 0.0)
        throw ValidationError(std::string(name) + " must be positive definite");
    auto inv = inverse(j);
    if (!inv)
        throw SingularInertia(std::string(name) + " is numerically singular");
    return *inv;
}

// Flat-embedding state used inside the integrators; R is not constrained to
// SO(3) at the stage points.
struct AmbientState {
    Vec3 x, v;
    Mat3 R;
    Vec3 Omega;
};

AmbientState axpy(const AmbientState& s, double a, const StateDerivative& d)
{
    return {s.x + a * d.x_dot, s.v + a * d.v_dot, s.R + a * d.R_dot, s.Omega + a * d.Omega_dot};
}

StateDerivative ambient_derivative(const AmbientState& s, double f, const Vec3& M,
                                   const Vec3& theta_e, const PlantParams& p)
{
    StateDerivative d;
    d.x_dot = s.v;
    d.v_dot = p.g * Vec3{0, 0, 1} - (f / p.m) * s.R.col(2);
    d.R_dot = s.R * hat(s.Omega);
    d.Omega_dot = p.J_bar_inv * (M - cross(s.Omega, p.J_bar * s.Omega) + theta_e);
    return d;
}

}  // namespace

PlantParams PlantParams::create(double m, const Mat3& J, const Mat3& J_bar, double g)
{
    if (!(m > 0.0))
        throw ValidationError("mass must be positive");
    if (!(g > 0.0))
        throw ValidationError("gravity must be positive");
    PlantParams p;
    p.m = m;
    p.J = J;
    p.J_bar = J_bar;
    p.g = g;
    p.J_inv = require_spd_inverse(J, "J");
    p.J_bar_inv = require_spd_inverse(J_bar, "J_bar");
    const Vec3 ev = sym_eigenvalues(J);
    p.lambda_min_J = ev.x;
    p.lambda_max_J = ev.z;
    return p;
}

Mat3 added_mass_inertia(double m_a, const Vec3& r)
{
    if (m_a < 0.0)
        throw NegativeMass("added mass must be non-negative");
    const Mat3 rh = hat(r);
    return -m_a * (rh * rh);
}

StateDerivative true_model_derivative(const RigidBodyState& s, double f, const Vec3& M,
                                      const Vec3& theta_e, const PlantParams& p)
{
    AmbientState a{s.x, s.v, s.R.matrix(), s.Omega};
    return ambient_derivative(a, f, M, theta_e, p);
}

RotationMatrix reproject_so3(const Mat3& m)
{
    if (det(m) <= 0.0)
        throw DegenerateMatrix("reproject_so3: determinant must be positive");

    Mat3 x = m;
    for (int it = 0; it < 50; ++it) {
        auto inv = inverse(x);
        if (!inv)
            throw DegenerateMatrix("reproject_so3: matrix is near rank-deficient");
        const Mat3 next = 0.5 * (x + transpose(*inv));
        const double step = frobenius_norm(next - x);
        x = next;
        if (step <= 1e-15)
            break;
    }
    if (frobenius_norm(transpose(x) * x - Mat3::identity()) > RotationMatrix::kOrthoTol)
        throw DegenerateMatrix("reproject_so3: polar iteration did not converge");
    return RotationMatrix(x, RotationMatrix::unchecked{});
}

RigidBodyState rk4_step(const RigidBodyState& s, double f, const Vec3& M, const Vec3& theta_e,
                        const PlantParams& p, double dt)
{
    return integrate_step(s, f, M, theta_e, p, dt, Integrator::rk4);
}

RigidBodyState integrate_step(const RigidBodyState& s, double f, const Vec3& M,
                              const Vec3& theta_e, const PlantParams& p, double dt,
                              Integrator kind)
{
    if (!(dt > 0.0))
        throw ValidationError("dt must be positive");

    const AmbientState a0{s.x, s.v, s.R.matrix(), s.Omega};
    const StateDerivative k1 = ambient_derivative(a0, f, M, theta_e, p);

    if (kind == Integrator::euler) {
        const AmbientState a1 = axpy(a0, dt, k1);
        return {a1.x, a1.v, reproject_so3(a1.R), a1.Omega};
    }

    const StateDerivative k2 = ambient_derivative(axpy(a0, 0.5 * dt, k1), f, M, theta_e, p);
    const StateDerivative k3 = ambient_derivative(axpy(a0, 0.5 * dt, k2), f, M, theta_e, p);
    const StateDerivative k4 = ambient_derivative(axpy(a0, dt, k3), f, M, theta_e, p);

    auto blend = [&](auto sel) {
        return (dt / 6.0) * (sel(k1) + 2.0 * sel(k2) + 2.0 * sel(k3) + sel(k4));
    };
    const Vec3 dx = blend([](const StateDerivative& k) { return k.x_dot; });
    const Vec3 dv = blend([](const StateDerivative& k) { return k.v_dot; });
    const Vec3 dom = blend([](const StateDerivative& k) { return k.Omega_dot; });

    RigidBodyState out;
    out.x = s.x + dx;
    out.v = s.v + dv;
    out.Omega = s.Omega + dom;

    if (kind == Integrator::expmap) {
        // Stage-averaged body rate; exact for constant Omega.
        const Vec3 om_avg = (1.0 / 6.0)
            * (a0.Omega + 2.0 * (a0.Omega + 0.5 * dt * k1.Omega_dot)
               + 2.0 * (a0.Omega + 0.5 * dt * k2.Omega_dot) + (a0.Omega + dt * k3.Omega_dot));
        out.R = s.R * so3_exp(om_avg * dt);
    } else {
        const Mat3 dR = (dt / 6.0) * (k1.R_dot + 2.0 * k2.R_dot + 2.0 * k3.R_dot + k4.R_dot);
        out.R = reproject_so3(s.R.matrix() + dR);
    }
    return out;
}

AttitudeState attitude_step(const AttitudeState& s, const Vec3& M, const Mat3& J,
                            const Mat3& J_inv, double dt, Integrator kind)
{
    auto omega_dot = [&](const Vec3& om) { return J_inv * (M - cross(om, J * om)); };

    if (kind == Integrator::euler) {
        AttitudeState out;
        out.R = reproject_so3(s.R.matrix() + dt * (s.R.matrix() * hat(s.Omega)));
        out.Omega = s.Omega + dt * omega_dot(s.Omega);
        return out;
    }

    struct K {
        Mat3 R_dot;
        Vec3 Omega_dot;
    };
    auto deriv = [&](const Mat3& R, const Vec3& om) { return K{R * hat(om), omega_dot(om)}; };

    const K k1 = deriv(s.R.matrix(), s.Omega);
    const K k2 = deriv(s.R.matrix() + 0.5 * dt * k1.R_dot, s.Omega + 0.5 * dt * k1.Omega_dot);
    const K k3 = deriv(s.R.matrix() + 0.5 * dt * k2.R_dot, s.Omega + 0.5 * dt * k2.Omega_dot);
    const K k4 = deriv(s.R.matrix() + dt * k3.R_dot, s.Omega + dt * k3.Omega_dot);

    AttitudeState out;
    out.Omega = s.Omega
        + (dt / 6.0) * (k1.Omega_dot + 2.0 * k2.Omega_dot + 2.0 * k3.Omega_dot + k4.Omega_dot);
    if (kind == Integrator::expmap) {
        const Vec3 om_avg = (1.0 / 6.0)
            * (s.Omega + 2.0 * (s.Omega + 0.5 * dt * k1.Omega_dot)
               + 2.0 * (s.Omega + 0.5 * dt * k2.Omega_dot) + (s.Omega + dt * k3.Omega_dot));
        out.R = s.R * so3_exp(om_avg * dt);
    } else {
        const Mat3 dR = (dt / 6.0) * (k1.R_dot + 2.0 * k2.R_dot + 2.0 * k3.R_dot + k4.R_dot);
        out.R = reproject_so3(s.R.matrix() + dR);
    }
    return out;
}

}  // namespace so3l1
