// SPDX-License-Identifier: Apache-2.0
//! \file landau.hpp
//! Landau-type operators reached in the grazing limit: classical and
//! relativistic quantum/wave/linear variants, Landau gradients, weak form,
//! and entropy dissipation.
#pragma once

#include "kinetica/boltzmann.hpp"
#include "kinetica/distribution.hpp"
#include "kinetica/kernels.hpp"

namespace kinetica {

/// Pair data of the Landau flux at (p, p*): scalar kernel, projection, and
/// the statistics bracket vector V with
///   quantum: V = f*(1+af*) grad f - f(1+af) grad f*,
///   wave:    V = f*^2 grad f - f^2 grad f*,
///   linear:  V = grad f - grad f*.
struct LandauFlux {
    double kernel = 0.0;  ///< sigma-bar or v_c sigma-bar^c
    Mat projection{};     ///< Pi_{(p-p*) perp} or S(p, p*)
    Vec bracket{};        ///< V evaluated from f at (p, p*)
};
LandauFlux landau_flux(const Distribution& f, const Vec& p, const Vec& pstar,
                       const ModelSpec& model, const KernelSpec& kernel);

/// Landau gradient of a test function: classical Pi (grad phi - grad phi*);
/// relativistic Pi_{k perp} lambda_tilde (grad phi - grad phi*).
/// Throws DomainError when p = p*.
Vec landau_gradient(const TestFunction& phi, const Vec& p, const Vec& pstar,
                    const ModelSpec& model);

/// Q_L(f)(p) = div_p int kernel * Proj * V dp*, outer divergence by 5-point
/// (4th-order) central differences of the inner integral; the ball
/// |p* - p| < h_div is excluded (removable singularity of the projection).
double evaluate_QL(const Distribution& f, const Vec& p, const ModelSpec& model,
                   const KernelSpec& kernel, const QuadratureSpec& quad);

/// <Q_L(f), phi> = -1/2 intint kernel (Landau grad phi) . (Theta_L Landau
/// grad h'), with the bracket V used in place of Theta_L grad-tilde h' (the
/// two agree identically and V avoids dividing by small f).
double landau_weak_form(const Distribution& f, const TestFunction& phi, const ModelSpec& model,
                        const KernelSpec& kernel, const QuadratureSpec& quad);

/// Same pass over several test functions; abs_scale reports the L1 mass of
/// the integrand per phi for relative-error gates.
WeakFormBatch landau_weak_form_batch(const Distribution& f,
                                     const std::vector<TestFunction>& phis,
                                     const ModelSpec& model, const KernelSpec& kernel,
                                     const QuadratureSpec& quad);

/// D_L(f) = 1/2 intint kernel Theta_L |Pi u|^2 >= 0 with
/// u = h''(f) grad f - h''(f*) grad f*; zero at the matched equilibrium.
double landau_dissipation(const Distribution& f, const ModelSpec& model,
                          const KernelSpec& kernel, const QuadratureSpec& quad);

/// Symmetric Onsager bilinear form B(phi, psi) =
/// 1/2 intint kernel Theta_L (grad-tilde phi).(grad-tilde psi);
/// used by the symmetry property test.
double landau_onsager_form(const Distribution& f, const TestFunction& phi,
                           const TestFunction& psi, const ModelSpec& model,
                           const KernelSpec& kernel, const QuadratureSpec& quad);

}  // namespace kinetica
