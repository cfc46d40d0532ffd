// SPDX-License-Identifier: Apache-2.0
//! \file boltzmann.hpp
//! Two-body collision-operator evaluation for all statistics/dynamics pairs:
//! strong form, weak forms, entropy dissipation, and the dissipation-potential
//! derivative.
//!
//! Geometry convention: the sphere integral runs over the hemisphere
//! omega . k >= 0, realized as the iterated rule
//!     int_0^{pi/2} beta(theta) dtheta  int_{S^{d-2} in k-perp} dgamma,
//! where k is the (boosted, for relativistic dynamics) unit relative
//! direction. Integrating the folded kernel over the full sphere would count
//! every unordered outgoing pair twice; the hemisphere convention is the one
//! under which the grazing limit reproduces the Landau weak form with
//! constant exactly one.
#pragma once

#include <functional>
#include <vector>

#include "kinetica/distribution.hpp"
#include "kinetica/kernels.hpp"
#include "kinetica/kinematics.hpp"
#include "kinetica/statistics.hpp"

namespace kinetica {

/// Test function with optional analytic derivatives (hessian needed only by
/// the grazing lemma checks).
struct TestFunction {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> gradient;
    std::function<Mat(const Vec&)> hessian;
    std::string name = "phi";
};

TestFunction phi_one();
TestFunction phi_momentum(int axis);
TestFunction phi_energy(const ModelSpec& model);
TestFunction phi_gaussian(const Vec& center, double width);
/// phi = h'(f(p)) for the model's statistics (gradient via h''(f) grad f).
TestFunction phi_entropy_prime(const Distribution& f, Statistics s);

/// phi' + phi*' - phi - phi* on the event's four legs.
double discrete_gradient(const TestFunction& phi, const CollisionEvent& event);

/// Two-permutation collision integrand q0 + q1 at an f-value 4-tuple
/// (f, f*, f', f*'). Throws DomainError for Fermi values outside [0, 1].
double collision_integrand(double f, double fstar, double fprime, double fstarprime,
                           const GammaRow& row);

/// Q(f)(p) by deterministic quadrature (d = 2) or stratified Monte Carlo
/// (d = 3 or spec.force_mc). Includes the per-family multiplicity, i.e. the
/// quantum rows integrate the single bracket q0.
double evaluate_Q(const Distribution& f, const Vec& p, const ModelSpec& model,
                  const KernelSpec& kernel, const QuadratureSpec& quad);

/// Monte Carlo value and standard error (for cross-validation).
struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
};
McEstimate evaluate_Q_mc(const Distribution& f, const Vec& p, const ModelSpec& model,
                         const KernelSpec& kernel, const QuadratureSpec& quad);

/// <Q(f), phi> in the symmetrized form
///   -(mult/4) intint B (q0+q1) (phi' + phi*' - phi - phi*),
/// exact-to-roundoff zero for phi in {1, p_j, e}.
double weak_form(const Distribution& f, const TestFunction& phi, const ModelSpec& model,
                 const KernelSpec& kernel, const QuadratureSpec& quad);

/// One symmetrized pass evaluating several test functions at once; the last
/// entry of `denominators` style output reports int |integrand| per phi for
/// relative-error gates.
struct WeakFormBatch {
    std::vector<double> values;
    std::vector<double> abs_scale;  ///< integral of |B (q0+q1) grad-bar phi|
};
WeakFormBatch weak_form_batch(const Distribution& f, const std::vector<TestFunction>& phis,
                              const ModelSpec& model, const KernelSpec& kernel,
                              const QuadratureSpec& quad);

/// Weak-form pass with an explicit parameter row and multiplicity. The limit
/// sweeps evaluate operator families (occupancy factors scaled by hbar or
/// 1/eps) that differ from the named statistics only through these, over the
/// exact same quadrature events.
WeakFormBatch weak_form_batch_custom(const Distribution& f,
                                     const std::vector<TestFunction>& phis,
                                     const ModelSpec& model, const KernelSpec& kernel,
                                     const QuadratureSpec& quad, const GammaRow& row,
                                     double multiplicity);

/// Monte Carlo weak form (d = 3), with standard error.
McEstimate weak_form_mc(const Distribution& f, const TestFunction& phi, const ModelSpec& model,
                        const KernelSpec& kernel, const QuadratureSpec& quad);

/// Entropy dissipation D(f) = -<Q(f), h'(f)> >= 0, evaluated with the
/// pointwise-nonnegative symmetrized integrand.
double entropy_dissipation(const Distribution& f, const ModelSpec& model,
                           const KernelSpec& kernel, const QuadratureSpec& quad);

/// Derivative of the dissipation potential in its four-term divergence
/// realization:
///   p -> (1/(2n)) [T1 + T2 - T3 - T4],
/// T1/T2: p as first/second incoming leg; T3/T4: the same event families with
/// the primed/unprimed roles of the weight swapped (the collision involution
/// maps outgoing-leg contributions onto these; the kernel measure is
/// involution-invariant, so no Jacobian factor appears). With xi = h'(f) this
/// reproduces evaluate_Q.
std::function<double(const Vec&)> generalized_dissipation_derivative(
    const Distribution& f, const TestFunction& xi, const ModelSpec& model,
    const KernelSpec& kernel, const QuadratureSpec& quad, PsiKind psi);

}  // namespace kinetica
