// SPDX-License-Identifier: Apache-2.0
//! \file statistics.hpp
//! Entropy densities, dissipation-potential pairs, interaction-parameter rows,
//! weight triples, and the compatibility-condition verifier.
#pragma once

#include <vector>

#include "kinetica/types.hpp"

namespace kinetica {

// ---------------------------------------------------------------------------
// Entropy densities h(f) and derivatives.
//
//   Maxwell-Boltzmann: f log f - f            (0 log 0 := 0)
//   Bose-Einstein:     f log f - (1+f) log(1+f)
//   Fermi-Dirac:       f log f + (1-f) log(1-f), +inf outside [0, 1]
//   Wave:              -log f
//   Linear:            f^2 / 2
// ---------------------------------------------------------------------------

/// h(f); returns +infinity for Fermi statistics when f > 1.
/// Throws DomainError for negative f.
double entropy_density(double f, Statistics s);

/// h'(f) on the interior of the domain.
double entropy_prime(double f, Statistics s);

/// h''(f) > 0 on the interior of the domain.
double entropy_double_prime(double f, Statistics s);

/// (s - t) / (log s - log t) with a series fallback near s = t.
/// Throws DomainError for nonpositive inputs.
double logarithmic_mean(double s, double t);

// ---------------------------------------------------------------------------
// Dissipation potentials Psi* (convex, even, Psi*(0) = 0).
// ---------------------------------------------------------------------------

enum class PsiKind {
    Quadratic,  // Psi*(r) = r^2/2,           (Psi*)'(r) = r
    Cosh,       // Psi*(r) = 4(cosh(r/2) - 1), (Psi*)'(r) = 2 sinh(r/2)
};

double psi_star(double r, PsiKind kind);
double psi_star_prime(double r, PsiKind kind);

// ---------------------------------------------------------------------------
// Interaction-parameter rows: gamma_i(f) = a_i + alpha_i f (gain side) and
// gamma_bar_i(f) = abar_i + alphabar_i f (loss side), for legs i = 0..n-1.
// Leg 0 may carry different parameters from legs i >= 1 (the linear and wave
// rows distinguish it).
// ---------------------------------------------------------------------------

struct GammaRow {
    int n = 2;  ///< number of interacting legs, >= 2

    double a0 = 0.0, alpha0 = 1.0;        ///< gamma_0
    double ai = 0.0, alphai = 1.0;        ///< gamma_i, i >= 1
    double abar0 = 1.0, alphabar0 = 0.0;  ///< gamma_bar_0
    double abari = 1.0, alphabari = 0.0;  ///< gamma_bar_i, i >= 1

    double gamma(int leg, double f) const {
        return leg == 0 ? a0 + alpha0 * f : ai + alphai * f;
    }
    double gamma_bar(int leg, double f) const {
        return leg == 0 ? abar0 + alphabar0 * f : abari + alphabari * f;
    }
};

/// Named parameter row for a statistics family with n legs.
GammaRow gamma_row(Statistics s, int n = 2);

/// The cyclic-permutation bracket for shift k:
///   prod_i gamma_i(f'_{(i+k) mod n}) gamma_bar_i(f_{(i+k) mod n})
/// - prod_i gamma_bar_i(f'_{(i+k) mod n}) gamma_i(f_{(i+k) mod n}).
/// `f` and `f_prime` each hold n values.
double permutation_bracket(const std::vector<double>& f, const std::vector<double>& f_prime,
                           const GammaRow& row, int k);

/// Sum of permutation_bracket over k = 0..n-1. For n = 2 and the 4-tuple
/// (f, f*, f', f*') this is the two-permutation collision integrand q0 + q1.
double bracket_sum(const std::vector<double>& f, const std::vector<double>& f_prime,
                   const GammaRow& row);

// ---------------------------------------------------------------------------
// Weight triples (Psi*, Theta, h) entering the compatibility condition
//   R = kappa * n * (Psi*)'(grad_free h') * Theta(tuple).
// ---------------------------------------------------------------------------

enum class ThetaKind {
    QuantumCosh,     // Theta = prod_i sqrt(f_i f_i' (1+alpha f_i)(1+alpha f_i'))
    QuantumLogMean,  // Theta = logmean(prod f_i'(1+alpha f_i), prod f_i(1+alpha f_i'))
    WaveProduct,     // Theta = prod_i f_i f_i'
    LinearUnit,      // Theta = 1
};

struct WeightTriple {
    Statistics statistics = Statistics::MaxwellBoltzmann;
    PsiKind psi = PsiKind::Cosh;
    ThetaKind theta = ThetaKind::QuantumCosh;
};

/// Canonical triples per statistics: quantum rows pair Cosh with the
/// square-root weight or Quadratic with the logarithmic-mean weight; wave and
/// linear use the Quadratic potential.
WeightTriple weight_triple(Statistics s, PsiKind psi);

/// Theta over the 2n-tuple; symmetric under primed/unprimed exchange and
/// simultaneous leg permutation.
double theta_weight(const std::vector<double>& f, const std::vector<double>& f_prime,
                    const WeightTriple& triple);

/// Free discrete gradient of h': sum_i [h'(f_i') - h'(f_i)].
double grad_free_entropy_prime(const std::vector<double>& f,
                               const std::vector<double>& f_prime, Statistics s);

struct CompatibilityResult {
    double residual = 0.0;  ///< |R - kappa L| / (|R| + |L| + 1)
    double kappa = 0.0;     ///< calibration constant in use
    double L = 0.0;         ///< n (Psi*)'(grad_free h') Theta
    double R = 0.0;         ///< sum of permutation brackets
};

/// One-point calibration: kappa = R / L at the given tuple.
/// Throws DomainError when L = 0 with R != 0 (incompatible row/triple).
double compatibility_calibrate(const std::vector<double>& f,
                               const std::vector<double>& f_prime, const GammaRow& row,
                               const WeightTriple& triple);

/// Residual of the compatibility proportionality at a tuple, with kappa from a
/// previous calibration.
CompatibilityResult compatibility_residual(const std::vector<double>& f,
                                           const std::vector<double>& f_prime,
                                           const GammaRow& row, const WeightTriple& triple,
                                           double kappa);

/// Landau-limit weight Theta_L(f, f*):
/// quantum f f*(1+af)(1+af*); wave (f f*)^2; linear 1.
double landau_theta(double f, double fstar, Statistics s);

}  // namespace kinetica
