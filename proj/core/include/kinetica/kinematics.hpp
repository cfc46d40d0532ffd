// SPDX-License-Identifier: Apache-2.0
//! \file kinematics.hpp
//! Energies, post-collision parametrizations, Lorentz machinery, scattering
//! angles, and the projection matrices used by the Landau operators.
#pragma once

#include "kinetica/linalg.hpp"
#include "kinetica/types.hpp"

namespace kinetica {

/// Kinetic energy e(p): classical |p|^2/(2m); relativistic c*sqrt((mc)^2+|p|^2)
/// (rest energy included).
double energy(const Vec& p, const ModelSpec& model);

/// Transport velocity grad_p e(p): classical p/m; relativistic c*p/p0.
Vec velocity(const Vec& p, const ModelSpec& model);

/// Relativistic temporal momentum component p0 = sqrt((mc)^2 + |p|^2).
double p_zero(const Vec& p, const PhysicalConstants& constants);

/// Elastic two-body outgoing momenta
///   p'  = (p + p*)/2 + |p - p*|/2 * omega
///   p*' = (p + p*)/2 - |p - p*|/2 * omega.
void classical_post_collision(const Vec& p, const Vec& pstar, const Vec& omega, Vec& p_out,
                              Vec& pstar_out);

/// Centre-of-momentum data for a relativistic pair.
struct LorentzFrame {
    double s = 0.0;    ///< total energy squared, s = 4(mc)^2 + g^2
    double g = 0.0;    ///< relative momentum
    Vec v{};           ///< boost velocity (dimensionless, |v| < 1)
    double rho = 1.0;  ///< Lorentz factor, 1/sqrt(1 - |v|^2)
    Vec k_hat{};       ///< unit relative direction in the boosted frame
    bool k_defined = false;  ///< false when g = 0 (diagonal pair)
    Mat lambda_tilde{};      ///< spatial block I + (rho-1) vhat vhat^T
    Mat4 lambda{};           ///< boost matrix acting on (p0; p)
    Mat4 lambda_inv{};       ///< inverse boost
    int dim = 2;
};

/// Builds the centre-of-momentum frame of (p, p*). Near |v| = 0 the rank-one
/// coefficient (rho - 1)/|v|^2 is evaluated by its Taylor series so
/// lambda_tilde degenerates smoothly to the identity.
LorentzFrame lorentz_frame(const Vec& p, const Vec& pstar, const PhysicalConstants& constants,
                           int dim);

/// Relativistic outgoing momenta and energies:
///   p'  = (p + p*)/2 + (g/2) lambda_tilde * omega,  mirrored for p*';
///   p0' = (p0 + p0*)/2 + (g/2) (p + p*).omega / sqrt(s).
struct RelativisticOutgoing {
    Vec p_out{};
    Vec pstar_out{};
    double p0_out = 0.0;
    double p0star_out = 0.0;
};
RelativisticOutgoing relativistic_post_collision(const Vec& p, const Vec& pstar,
                                                 const Vec& omega,
                                                 const PhysicalConstants& constants, int dim);

/// A fully-resolved two-body collision.
struct CollisionEvent {
    Vec p{}, pstar{}, omega{};
    Vec p_out{}, pstar_out{};
    double p0 = 0.0, p0star = 0.0;          ///< relativistic only
    double p0_out = 0.0, p0star_out = 0.0;  ///< relativistic only
    double theta = 0.0;                     ///< deviation angle folded to [0, pi/2]
    ModelSpec model{};
};

/// Builds the event for (p, p*, omega) under the given model (outgoing legs,
/// energies, and folded scattering angle).
CollisionEvent make_event(const Vec& p, const Vec& pstar, const Vec& omega,
                          const ModelSpec& model);

/// Deviation angle folded to [0, pi/2]. Classical: angle between omega and
/// p - p*. Relativistic: the Minkowski expression
///   cos = [(p-p*).(p'-p*') - (p0-p0*)(p0'-p0*')] / g^2,
/// which coincides with the angle between omega and k_hat.
/// Throws DomainError when p = p*.
double scattering_angle(const CollisionEvent& event);

/// Unfolded cosine of the relativistic Minkowski expression (used by the
/// angle-equivalence self-test; the kernel only ever sees the folded angle).
double relativistic_angle_cosine(const CollisionEvent& event);

/// Orthogonal projection I - u u^T, u = (p - p*)/|p - p*|.
/// Throws DomainError when p = p*.
Mat landau_projection(const Vec& p, const Vec& pstar);

/// Relativistic Landau projection S(p, p*): closed form
///   S = [(P^2 - (mc)^4) I - (mc)^2 (p p^T + p* p*^T) + P (p p*^T + p* p^T)]
///        / (P^2 - (mc)^4),  P = p0 p0* - p.p*,
/// equal to lambda_tilde^T Pi_{k_perp} lambda_tilde.
/// Throws DomainError when p = p*.
Mat relativistic_projection(const Vec& p, const Vec& pstar, const PhysicalConstants& constants);

}  // namespace kinetica
