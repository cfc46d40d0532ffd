// SPDX-License-Identifier: Apache-2.0
//! \file limits.hpp
//! Numerical verification of the five structural limits: grazing, Newtonian,
//! semiclassical, kinetic, and linear.
#pragma once

#include <string>
#include <vector>

#include "kinetica/boltzmann.hpp"
#include "kinetica/landau.hpp"

namespace kinetica {

/// Convergence record of one sweep. `observed_order` is the median pairwise
/// log-ratio of errors against the parameter (robust to the last point
/// touching the quadrature floor).
struct SweepReport {
    std::string parameter;          ///< swept parameter name
    std::string quantity;           ///< which error is recorded
    std::vector<double> values;     ///< monotone parameter sequence
    std::vector<double> errors;     ///< error per parameter value
    std::vector<double> orders;     ///< pairwise observed orders
    double observed_order = 0.0;    ///< median of `orders`
    double min_order = 0.0;         ///< acceptance bar
    double noise_floor = 0.0;       ///< error at doubled quadrature, fixed parameter
    bool pass = false;
};

/// Median pairwise order + pass flag helper (exposed for reuse/tests).
void finalize_sweep(SweepReport& report);

/// Grazing limit: error(eps) = |weak_form with rescaled kernel - Landau weak
/// form| over a decreasing eps list.
SweepReport grazing_sweep(const Distribution& f, const TestFunction& phi,
                          const ModelSpec& model, const KernelSpec& kernel,
                          const QuadratureSpec& quad, const std::vector<double>& eps_list,
                          double min_order = 0.8);

/// Pointwise small-angle lemma at a fixed pair (p, p*): the ratio
///   [theta^-2 int_{S^{d-2}} kappa(f') kappa(f*') grad-bar phi dgamma] / RHS
/// tends to 1 with deviation O(theta^2); kappa(f) = a + alpha f.
SweepReport grazing_lemma_pointwise(double a, double alpha, const Distribution& f,
                                    const TestFunction& phi, const Vec& p, const Vec& pstar,
                                    const std::vector<double>& theta_list,
                                    const ModelSpec& model, double min_order = 1.8);

/// Newtonian limit sweep over increasing c: kinematic gaps and the weak-form
/// operator gap, each its own report (orders measured in 1/c).
std::vector<SweepReport> newtonian_sweep(const Distribution& f, const TestFunction& phi,
                                         const ModelSpec& classical_model,
                                         const KernelSpec& kernel, const QuadratureSpec& quad,
                                         const std::vector<double>& c_list,
                                         double min_order = 1.8);

/// Semiclassical limit: |<Q with (1 + hbar alpha f) factors - Q_{alpha=0}, phi>|
/// over decreasing hbar; exactly linear in hbar (the hbar^2 coefficient of the
/// bracket vanishes identically).
SweepReport semiclassical_sweep(const Distribution& f, const TestFunction& phi,
                                const ModelSpec& model, const KernelSpec& kernel,
                                const QuadratureSpec& quad,
                                const std::vector<double>& hbar_list, double min_order = 0.9);

/// Kinetic limit: |<eps * Q_Bose with (1 + f/eps) factors - Q_wave, phi>| over
/// decreasing eps. The bracket identity
///   bracket_Bose(1 + f/eps) = bracket_Boltzmann + (1/eps) bracket_wave
/// holds exactly (the eps^-2 coefficient cancels), so the operator-level
/// scaling is eps^1.
SweepReport kinetic_limit_check(const Distribution& f, const TestFunction& phi,
                                const ModelSpec& model, const KernelSpec& kernel,
                                const QuadratureSpec& quad,
                                const std::vector<double>& eps_list, double min_order = 0.9);

/// Linear limit: with g_eps = 1 + eps f,
///   |eps^-1 <Q_MB(g_eps), phi> - <Q_linear(f), phi>|  (and the wave variant),
/// first order in eps.
struct LinearLimitReport {
    SweepReport from_maxwell;
    SweepReport from_wave;
};
LinearLimitReport linear_limit_check(const Distribution& f_pert, const TestFunction& phi,
                                     const ModelSpec& model, const KernelSpec& kernel,
                                     const QuadratureSpec& quad,
                                     const std::vector<double>& eps_list,
                                     double min_order = 0.9);

}  // namespace kinetica
