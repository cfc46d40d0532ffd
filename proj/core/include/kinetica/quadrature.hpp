// SPDX-License-Identifier: Apache-2.0
//! \file quadrature.hpp
//! Quadrature rules: Gauss-Legendre, tensorized momentum boxes, log-panel
//! composite rules for singular angular profiles, and circle rules.
#pragma once

#include <cstdint>
#include <vector>

#include "kinetica/linalg.hpp"
#include "kinetica/types.hpp"

namespace kinetica {

/// Budgets and seeds for every integral the engine evaluates.
struct QuadratureSpec {
    double box_halfwidth = 8.0;  ///< momentum box [-L, L]^d
    int box_nodes = 24;          ///< Gauss-Legendre nodes per axis (deterministic path)
    int theta_panels = 8;        ///< log-spaced panels for the deviation angle
    int theta_nodes = 4;         ///< Gauss-Legendre nodes per panel
    int circle_nodes = 16;       ///< S^1 nodes orthogonal to k for d = 3
    std::uint64_t mc_events = 200000;  ///< Monte Carlo events per output point
    std::uint64_t seed = 0x1905C0FFEEull;
    bool force_mc = false;  ///< use Monte Carlo even when d = 2

    QuadratureSpec refined(double factor = 2.0) const {
        QuadratureSpec r = *this;
        r.box_nodes = static_cast<int>(r.box_nodes * factor);
        r.theta_panels = static_cast<int>(r.theta_panels * factor);
        r.mc_events = static_cast<std::uint64_t>(static_cast<double>(r.mc_events) * factor);
        return r;
    }
};

/// Gauss-Legendre nodes/weights on [-1, 1] (Newton iteration on P_n; accurate
/// to machine precision for n <= 128).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Gauss-Legendre rule mapped to [a, b].
GaussRule gauss_legendre_on(int n, double a, double b);

/// One point of a momentum-box rule.
struct BoxNode {
    Vec p{};
    double w = 0.0;
};

/// Tensor Gauss-Legendre rule on [-L, L]^d.
std::vector<BoxNode> box_rule(double halfwidth, int nodes_per_axis, int dim);

/// Composite Gauss-Legendre rule on log-spaced panels over [lo, hi]; suited to
/// integrands with a power singularity at the left end.
GaussRule log_panel_rule(double lo, double hi, int panels, int nodes_per_panel);

/// Uniform rule on the unit circle: returns `n` angles with weight 2*pi/n.
GaussRule uniform_circle_rule(int n);

/// Orthonormal basis {e1, e2} of the plane orthogonal to unit vector k (d=3).
void orthogonal_basis(const Vec& k, Vec& e1, Vec& e2);

/// In-plane rotation by +90 degrees: the d = 2 orthogonal complement of k.
inline Vec rot90(const Vec& k) { return Vec{-k[1], k[0], 0.0}; }

}  // namespace kinetica
