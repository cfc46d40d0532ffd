// SPDX-License-Identifier: Apache-2.0
//! \file distribution.hpp
//! The unknown f: analytic families (equilibria and test fixtures) and grid
//! samples with multilinear interpolation.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "kinetica/linalg.hpp"
#include "kinetica/quadrature.hpp"
#include "kinetica/types.hpp"

namespace kinetica {

struct GaussComponent {
    double weight = 1.0;  ///< amplitude of rho/(2 pi m T)^{d/2}-normalized bump
    Vec center{};
    double temperature = 1.0;
};

class Distribution {
  public:
    enum class Kind { Analytic, Grid };

    Distribution() = default;

    double value(const Vec& p) const { return value_(p); }
    Vec gradient(const Vec& p) const { return gradient_(p); }

    Kind kind() const { return kind_; }
    const std::string& family() const { return family_; }

    // -- analytic families ----------------------------------------------------

    /// rho * (2 pi m T)^{-d/2} exp(-|p - m u|^2 / (2 m T)).
    static Distribution maxwellian(double rho, const Vec& u, double T, const ModelSpec& model);

    /// 1 / (exp((e(p) - mu)/T) - 1); requires e(p) > mu on the whole box.
    static Distribution bose_einstein(double mu, double T, const ModelSpec& model,
                                      double box_halfwidth);

    /// 1 / (exp((e(p) - mu)/T) + 1).
    static Distribution fermi_dirac(double mu, double T, const ModelSpec& model);

    /// T / (e(p) + mu); requires e(p) + mu > 0 on the whole box.
    static Distribution rayleigh_jeans(double mu, double T, const ModelSpec& model,
                                       double box_halfwidth);

    /// amplitude * exp(-c (p0 - m c)/T): the relativistic Maxwellian measured
    /// from rest energy (so the amplitude stays O(1) for large c).
    static Distribution juttner(double amplitude, double T, const ModelSpec& model);

    /// Constant value (the linear-statistics equilibrium).
    static Distribution constant(double value);

    /// Sum of isotropic Gaussian bumps (weights * normalized Gaussians).
    static Distribution gaussian_mixture(std::vector<GaussComponent> parts,
                                         const ModelSpec& model);

    /// a + b * f (used by the linear-limit sweep's perturbed states).
    static Distribution affine(double a, double b, Distribution f);

    /// Arbitrary analytic pair (value, gradient); used by tests.
    static Distribution from_functions(std::function<double(const Vec&)> value,
                                       std::function<Vec(const Vec&)> gradient,
                                       std::string family = "custom");

    // -- grid mode ------------------------------------------------------------

    /// Nodal values on the uniform tensor grid over [-L, L]^d with N nodes per
    /// axis (spacing 2L/(N-1)); multilinear interpolation inside the box, zero
    /// outside, gradient by central differences of the interpolant.
    static Distribution grid(double halfwidth, int nodes_per_axis, int dim,
                             std::vector<double> values);

    /// Samples an analytic distribution onto a grid.
    static Distribution sampled(const Distribution& f, double halfwidth, int nodes_per_axis,
                                int dim);

  private:
    Kind kind_ = Kind::Analytic;
    std::string family_ = "zero";
    std::function<double(const Vec&)> value_ = [](const Vec&) { return 0.0; };
    std::function<Vec(const Vec&)> gradient_ = [](const Vec&) { return Vec{}; };
};

/// Mass, momentum, and energy integrals over the momentum box.
struct Moments {
    double mass = 0.0;
    Vec momentum{};
    double energy = 0.0;
};
Moments moments(const Distribution& f, const ModelSpec& model, const QuadratureSpec& quad);

/// Entropy functional H(f) = integral of h(f(p)) over the box.
double entropy_functional(const Distribution& f, const ModelSpec& model,
                          const QuadratureSpec& quad);

/// The equilibrium family annihilating the collision operator of the given
/// statistics/dynamics pair (Maxwellian, Bose-Einstein, Fermi-Dirac,
/// Rayleigh-Jeans, constant, or Juttner), with library-default parameters.
Distribution matched_equilibrium(const ModelSpec& model, double box_halfwidth);

/// Deterministic nonequilibrium fixtures for property tests: smooth positive
/// states with statistics-appropriate ranges (Fermi fixtures stay within
/// [delta, 1-delta]; wave fixtures are bounded away from zero by a broad
/// background bump). `index` selects one of several seeded shapes.
Distribution test_fixture(const ModelSpec& model, int index);

}  // namespace kinetica
