#include "so3l1/linalg.hpp"

#include <algorithm>

namespace so3l1 {

std::optional<Mat3> inverse(const Mat3& a, double tol)
{
    const double d = det(a);
    const double scale = max_abs(a);
    if (std::abs(d) <= tol * scale * scale * scale || std::abs(d) < 1e-300)
        return std::nullopt;

    Mat3 adj;
    adj(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    adj(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    adj(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    adj(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    adj(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    adj(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    adj(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    adj(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    adj(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return adj * (1.0 / d);
}

Vec3 sym_eigenvalues(const Mat3& a)
{
    // Work on the symmetric part.
    Mat3 s = 0.5 * (a + transpose(a));

    auto off = [](const Mat3& q) {
        return std::sqrt(q(0, 1) * q(0, 1) + q(0, 2) * q(0, 2) + q(1, 2) * q(1, 2));
    };

    const double scale = std::max(max_abs(s), 1e-300);
    for (int sweep = 0; sweep < 30 && off(s) > 1e-14 * scale; ++sweep) {
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(s(p, q)) <= 1e-300)
                    continue;
                const double tau = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
                const double t = (tau >= 0.0 ? 1.0 : -1.0)
                                 / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                // Apply the rotation on both sides: s <- G^T s G.
                Mat3 g = Mat3::identity();
                g(p, p) = c;
                g(q, q) = c;
                g(p, q) = sn;
                g(q, p) = -sn;
                s = transpose(g) * s * g;
                s(p, q) = s(q, p) = 0.5 * (s(p, q) + s(q, p));
            }
        }
    }

    std::array<double, 3> ev = {s(0, 0), s(1, 1), s(2, 2)};
    std::sort(ev.begin(), ev.end());
    return {ev[0], ev[1], ev[2]};
}

std::array<double, 2> sym_eigenvalues_2x2(double a, double b, double d)
{
    const double mean = 0.5 * (a + d);
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    return {mean - r, mean + r};
}

double operator_norm(const Mat3& a)
{
    const Vec3 ev = sym_eigenvalues(transpose(a) * a);
    return std::sqrt(std::max(0.0, ev.z));
}

}  // namespace so3l1
