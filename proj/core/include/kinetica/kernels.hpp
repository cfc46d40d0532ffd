// SPDX-License-Identifier: Apache-2.0
//! \file kernels.hpp
//! Collision-kernel families: angular profiles with grazing rescaling,
//! classical/relativistic kernels, Dirac-reduction factors, Moller velocity,
//! and the Landau kernels.
#pragma once

#include "kinetica/kinematics.hpp"
#include "kinetica/linalg.hpp"
#include "kinetica/quadrature.hpp"
#include "kinetica/types.hpp"

namespace kinetica {

/// Angular profile b(theta) with beta(theta) = sin^{d-2}(theta) b(theta).
/// Two families:
///  - SingularPower: beta = K theta^{-1-nu} on [theta0, pi/2] (the assumed
///    grazing singularity, cut off so quadrature stays finite);
///  - Bump: smooth mollifier beta = K exp(-1/(x(1-x))), x = 2 theta/pi,
///    vanishing to all orders at both ends (for convergence studies).
/// The grazing rescale replaces beta by beta^eps(theta) =
/// (pi^3/eps^3) beta(pi theta / eps), which shrinks the support to
/// [eps*theta0/pi, eps/2] and preserves the theta^2-weighted integral.
struct AngularProfile {
    enum class Family { SingularPower, Bump };

    Family family = Family::SingularPower;
    double nu = 1.0;        ///< singularity strength in (0, 2)
    double theta0 = 1e-3;   ///< cutoff for the singular family
    double epsilon = 1.0;   ///< grazing parameter in (0, pi]; pi = unrescaled
    double k_norm = 1.0;    ///< multiplicative normalization constant
    int dim = 2;

    /// Support of beta^eps (theta integration window).
    double support_lo() const;
    double support_hi() const;

    /// beta^eps(theta); zero outside the support.
    double beta(double theta) const;

    /// b^eps(theta) = beta^eps(theta) / sin^{d-2}(theta).
    double b(double theta) const;
};

/// Rescales k_norm so that the theta^2-moment of beta equals
/// 8(d-1)/|S^{d-2}| (|S^0| = 2, |S^1| = 2 pi). Throws NumericalError when the
/// normalization integral is not finite.
AngularProfile angular_normalize(AngularProfile profile, int dim);

/// Returns the profile with grazing parameter eps (support shrunk; the
/// theta^2-moment is unchanged).
AngularProfile rescale_angular(AngularProfile profile, double epsilon);

/// Target value of the theta^2-moment: 8(d-1)/|S^{d-2}|.
double angular_moment_target(int dim);

/// Momentum-transfer kernel sigma: Constant(sigma0) or
/// PowerLaw sigma0 * r^gamma_exp, evaluated at r = |p - p*| (classical) or
/// r = g (relativistic).
struct SigmaFamily {
    enum class Kind { Constant, PowerLaw };
    Kind kind = Kind::Constant;
    double sigma0 = 1.0;
    double gamma_exp = 0.0;

    double operator()(double r) const;
};

struct KernelSpec {
    SigmaFamily sigma{};
    AngularProfile angular{};

    /// Convenience: spec with the normalized default singular profile.
    static KernelSpec standard(int dim);
};

/// B = sigma(|p - p*|) b(theta), theta the folded deviation angle.
/// Total on the sphere; zero outside the angular support.
double kernel_classical(const Vec& p, const Vec& pstar, const Vec& omega,
                        const KernelSpec& spec, const ModelSpec& model);

/// B^c = v_c sigma^c(g) b(theta_hat), with the Moller velocity
/// v_c = c g sqrt(s) / (p0 p0*).
double kernel_relativistic(const Vec& p, const Vec& pstar, const Vec& omega,
                           const KernelSpec& spec, const ModelSpec& model);

/// Moller velocity v_c = c g sqrt(s)/(p0 p0*).
double moller_velocity(const Vec& p, const Vec& pstar, const PhysicalConstants& constants);

/// Dirac-reduced kernel of the classical outgoing-pair representation:
/// script-B = 2^d |p - p*|^{2-d} B.
double dirac_reduced_classical(const Vec& p, const Vec& pstar, const Vec& omega,
                               const KernelSpec& spec, const ModelSpec& model);

/// Dirac-reduced kernel of the relativistic outgoing-pair representation:
/// script-B^c = 2^{d-2} sqrt(s) g^{2-d} / (p0' p0*') * B^c.
double dirac_reduced_relativistic(const CollisionEvent& event, const KernelSpec& spec);

/// Landau kernel: classical sigma(|p-p*|)|p-p*|^2; relativistic
/// v_c sigma^c(g) g^2.
double kernel_landau(const Vec& p, const Vec& pstar, const KernelSpec& spec,
                     const ModelSpec& model);

/// Precomputed theta-rule against the profile's measure:
/// nodes theta_q with weights w_q already INCLUDING beta(theta_q), so
/// integral of beta * X dtheta ~= sum_q w_q X(theta_q).
struct AngularRule {
    std::vector<double> theta;
    std::vector<double> weight;  ///< includes beta(theta)
};
AngularRule angular_rule(const AngularProfile& profile, int panels, int nodes_per_panel);

}  // namespace kinetica
