// SPDX-License-Identifier: Apache-2.0
#include "kinetica/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace kinetica {

namespace {

// A pair is treated as degenerate (identity collision, no defined deviation
// direction) when the relative momentum is this small compared to the pair
// scale. Quadrature grids never place two distinct nodes closer than ~1e-15
// relative, so this only fires on the exact diagonal.
constexpr double kDegeneratePairTol = 1e-14;

/// Stable g^2 = |p - p*|^2 - (p0 - p0*)^2 using
/// p0 - p0* = (p - p*).(p + p*) / (p0 + p0*), which avoids squaring a
/// difference of large energies.
double g_squared(const Vec& p, const Vec& pstar, double p0, double p0star) {
    const Vec diff = sub(p, pstar);
    const double d0 = dot(diff, add(p, pstar)) / (p0 + p0star);
    return norm2(diff) - d0 * d0;
}

}  // namespace

double p_zero(const Vec& p, const PhysicalConstants& constants) {
    const double mc = constants.m * constants.c;
    return std::sqrt(mc * mc + norm2(p));
}

double energy(const Vec& p, const ModelSpec& model) {
    if (model.relativistic()) return model.constants.c * p_zero(p, model.constants);
    return 0.5 * norm2(p) / model.constants.m;
}

Vec velocity(const Vec& p, const ModelSpec& model) {
    if (model.relativistic())
        return scale(model.constants.c / p_zero(p, model.constants), p);
    return scale(1.0 / model.constants.m, p);
}

void classical_post_collision(const Vec& p, const Vec& pstar, const Vec& omega, Vec& p_out,
                              Vec& pstar_out) {
    const Vec center = scale(0.5, add(p, pstar));
    const double half_r = 0.5 * norm(sub(p, pstar));
    p_out = axpy(half_r, omega, center);
    pstar_out = axpy(-half_r, omega, center);
}

LorentzFrame lorentz_frame(const Vec& p, const Vec& pstar, const PhysicalConstants& constants,
                           int dim) {
    LorentzFrame frame;
    frame.dim = dim;
    const double mc = constants.m * constants.c;
    const double p0 = p_zero(p, constants);
    const double p0star = p_zero(pstar, constants);
    const double e_sum = p0 + p0star;

    const double g2 = std::max(0.0, g_squared(p, pstar, p0, p0star));
    frame.g = std::sqrt(g2);
    frame.s = 4.0 * mc * mc + g2;  // exact identity; immune to cancellation
    const double sqrt_s = std::sqrt(frame.s);

    frame.v = scale(1.0 / e_sum, add(p, pstar));
    frame.rho = e_sum / sqrt_s;

    // lambda_tilde = I + (rho - 1) vhat vhat^T. The coefficient over |v|^2 is
    // (rho - 1)/|v|^2 = rho^2/(rho + 1) exactly (from rho^2 - 1 = rho^2 |v|^2),
    // so no series or cancellation-prone differences are needed.
    const double coef = frame.rho * frame.rho / (frame.rho + 1.0);
    frame.lambda_tilde = Mat::identity(3);
    const Mat vv = outer(frame.v, frame.v);
    for (std::size_t i = 0; i < 9; ++i) frame.lambda_tilde.a[i] += coef * vv.a[i];

    // Full boost to the centre-of-momentum frame: x0' = rho(x0 - v.x),
    // x' = lambda_tilde x - rho x0 v; the inverse flips the sign of v.
    auto fill_boost = [&](double sign) {
        Mat4 b = Mat4::identity();
        b(0, 0) = frame.rho;
        for (int i = 0; i < 3; ++i) {
            b(0, i + 1) = sign * frame.rho * frame.v[static_cast<std::size_t>(i)];
            b(i + 1, 0) = sign * frame.rho * frame.v[static_cast<std::size_t>(i)];
            for (int j = 0; j < 3; ++j) b(i + 1, j + 1) = frame.lambda_tilde(i, j);
        }
        return b;
    };
    frame.lambda = fill_boost(-1.0);
    frame.lambda_inv = fill_boost(+1.0);

    const double pair_scale = std::max(norm(p), norm(pstar)) + mc;
    frame.k_defined = frame.g > kDegeneratePairTol * pair_scale;
    if (frame.k_defined) {
        // Boosted relative direction; spatial part of Lambda (p - p*).
        const Vec rel = sub(p, pstar);
        const Vec boosted = sub(matvec(frame.lambda_tilde, rel),
                                scale(frame.rho * (p0 - p0star), frame.v));
        frame.k_hat = scale(1.0 / frame.g, boosted);
    }
    return frame;
}

RelativisticOutgoing relativistic_post_collision(const Vec& p, const Vec& pstar,
                                                 const Vec& omega,
                                                 const PhysicalConstants& constants, int dim) {
    const LorentzFrame frame = lorentz_frame(p, pstar, constants, dim);
    const double p0 = p_zero(p, constants);
    const double p0star = p_zero(pstar, constants);
    const Vec center = scale(0.5, add(p, pstar));
    const double half_g = 0.5 * frame.g;
    const Vec shift = scale(half_g, matvec(frame.lambda_tilde, omega));
    const double e_shift = half_g * dot(add(p, pstar), omega) / std::sqrt(frame.s);

    RelativisticOutgoing out;
    out.p_out = add(center, shift);
    out.pstar_out = sub(center, shift);
    out.p0_out = 0.5 * (p0 + p0star) + e_shift;
    out.p0star_out = 0.5 * (p0 + p0star) - e_shift;
    return out;
}

CollisionEvent make_event(const Vec& p, const Vec& pstar, const Vec& omega,
                          const ModelSpec& model) {
    CollisionEvent event;
    event.p = p;
    event.pstar = pstar;
    event.omega = omega;
    event.model = model;
    if (model.relativistic()) {
        const RelativisticOutgoing out =
            relativistic_post_collision(p, pstar, omega, model.constants, model.dim);
        event.p_out = out.p_out;
        event.pstar_out = out.pstar_out;
        event.p0 = p_zero(p, model.constants);
        event.p0star = p_zero(pstar, model.constants);
        event.p0_out = out.p0_out;
        event.p0star_out = out.p0star_out;
    } else {
        classical_post_collision(p, pstar, omega, event.p_out, event.pstar_out);
    }
    // Degenerate pairs scatter into themselves; give them a zero deviation
    // angle (outside every kernel support) instead of failing.
    const double rel = norm(sub(p, pstar));
    const double pair_scale = norm(p) + norm(pstar);
    if (rel <= kDegeneratePairTol * std::max(1.0, pair_scale)) {
        event.theta = 0.0;
    } else {
        event.theta = scattering_angle(event);
    }
    return event;
}

double scattering_angle(const CollisionEvent& event) {
    const double cosv = relativistic_angle_cosine(event);
    return std::acos(std::min(1.0, std::abs(cosv)));
}

double relativistic_angle_cosine(const CollisionEvent& event) {
    const Vec rel = sub(event.p, event.pstar);
    if (event.model.relativistic()) {
        const double g2 =
            g_squared(event.p, event.pstar, event.p0, event.p0star);
        if (!(g2 > 0.0))
            throw DomainError("scattering angle undefined: coincident momenta (g = 0)");
        const Vec rel_out = sub(event.p_out, event.pstar_out);
        const double minkowski = dot(rel, rel_out) -
                                 (event.p0 - event.p0star) * (event.p0_out - event.p0star_out);
        return std::clamp(minkowski / g2, -1.0, 1.0);
    }
    const double r = norm(rel);
    if (!(r > 0.0))
        throw DomainError("scattering angle undefined: coincident momenta (p = p*)");
    return std::clamp(dot(event.omega, rel) / r, -1.0, 1.0);
}

Mat landau_projection(const Vec& p, const Vec& pstar) {
    const Vec u = sub(p, pstar);
    const double u2 = norm2(u);
    if (!(u2 > 0.0)) throw DomainError("landau_projection: p = p*");
    Mat proj = Mat::identity(3);
    const Mat uu = outer(u, u);
    for (std::size_t i = 0; i < 9; ++i) proj.a[i] -= uu.a[i] / u2;
    // The inactive third slot (d = 2) carries a harmless unit diagonal; all
    // contractions in the library run over the active dim block only.
    return proj;
}

Mat relativistic_projection(const Vec& p, const Vec& pstar,
                            const PhysicalConstants& constants) {
    const double mc = constants.m * constants.c;
    const double mc2 = mc * mc;
    const double p0 = p_zero(p, constants);
    const double p0star = p_zero(pstar, constants);
    const double P = p0 * p0star - dot(p, pstar);
    const double denom = P * P - mc2 * mc2;  // = s g^2 / 4 > 0 off the diagonal
    if (!(denom > 0.0)) throw DomainError("relativistic_projection: p = p*");
    Mat s_mat = Mat::identity(3);
    const Mat self = mat_add(outer(p, p), outer(pstar, pstar));
    const Mat cross = mat_add(outer(p, pstar), outer(pstar, p));
    for (std::size_t i = 0; i < 9; ++i)
        s_mat.a[i] += (-mc2 * self.a[i] + P * cross.a[i]) / denom;
    return s_mat;
}

}  // namespace kinetica
