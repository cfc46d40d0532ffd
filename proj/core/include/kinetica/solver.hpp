// SPDX-License-Identifier: Apache-2.0
//! \file solver.hpp
//! Time evolution: spatially homogeneous RK4 relaxation with a conservative
//! collision discretization, a 1-D periodic transport slab, and the
//! reversible-structure (Poisson bracket) checks.
#pragma once

#include <functional>
#include <vector>

#include "kinetica/boltzmann.hpp"
#include "kinetica/distribution.hpp"

namespace kinetica {

/// Uniform momentum grid geometry over [-L, L]^d.
struct GridGeometry {
    double halfwidth = 8.0;
    int nodes = 24;   ///< per axis
    int dim = 2;

    double spacing() const { return 2.0 * halfwidth / (nodes - 1); }
    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(nodes);
        return s;
    }
    Vec point(std::size_t flat) const;
    double cell_weight() const {
        double w = 1.0;
        for (int a = 0; a < dim; ++a) w *= spacing();
        return w;
    }
};

/// Homogeneous state: nodal values of f on the momentum grid.
struct State {
    double time = 0.0;
    GridGeometry geom{};
    std::vector<double> values;
};

struct MonitorRecord {
    double time = 0.0;
    double mass = 0.0;
    Vec momentum{};
    double energy = 0.0;
    double entropy = 0.0;
    double dissipation = 0.0;  ///< discrete -sum w Q h'(f), >= 0 up to O(h^2)
    double clipped_mass = 0.0;
};
using MonitorSeries = std::vector<MonitorRecord>;

/// Conservative collision evaluation on the momentum grid. Events are
/// restricted to grid-commensurate quadruples: for a node pair (p, p*) the
/// outgoing pair runs over the lattice solutions of
///   p' + p*' = p + p*,   |p' - p*'| = |p - p*|
/// (integer circle points x^2 + y^2 = a^2 + b^2 with the parity of (a, b)),
/// each weighted by (1/2) sigma(r) beta(theta) dphi with dphi the cyclic
/// half-gap between neighbouring solutions. Because every event conserves
/// mass, momentum, and |p|^2 exactly on the lattice, those moments are linear
/// invariants of the semi-discrete system (hence conserved to roundoff by
/// RK4); the bracket acts on nodal values only, so the pointwise entropy
/// inequality and the stationarity of lattice Gaussians are exact as well.
/// Classical dynamics and dim == 2 only.
class HomogeneousSolver {
  public:
    HomogeneousSolver(const ModelSpec& model, const KernelSpec& kernel, GridGeometry geom);

    /// dQ/dt values at every node for the given nodal f.
    std::vector<double> collision_operator(const std::vector<double>& f_values) const;

    /// One RK4 step; negative values are clipped to zero afterwards and the
    /// clipped mass recorded. Throws NumericalError when dt violates the
    /// stability estimate dt * max|Q| / max f <= 0.5.
    State step(const State& state, double dt, double* clipped_mass = nullptr) const;

    /// Integrate to t_end with per-step monitors; aborts (NumericalError)
    /// when mass/momentum drift exceeds 1e-6 relative or entropy increases by
    /// more than 1e-10 * |H| in a step.
    State run(const State& initial, double t_end, double dt, MonitorSeries& monitors) const;

    MonitorRecord monitor(const State& state) const;

    const GridGeometry& geometry() const { return geom_; }
    const ModelSpec& model() const { return model_; }

  private:
    /// One outgoing lattice solution (dx, dy) on the relative-momentum circle
    /// of the difference class |da|, |db|, with its angular weight
    /// (1/2) sigma(r) beta(theta_fold) dphi already folded in.
    struct Outgoing {
        int dx = 0, dy = 0;
        double weight = 0.0;
    };

    ModelSpec model_;
    KernelSpec kernel_;
    GridGeometry geom_;
    GammaRow row_;
    double mult_ = 1.0;
    std::vector<std::vector<Outgoing>> table_;  ///< indexed |da| * nodes + |db|
};

/// Slab state: f(q_i, p_l) on a periodic interval [0, length) x momentum box.
struct SlabState {
    double time = 0.0;
    double length = 6.283185307179586;
    int space_nodes = 64;
    GridGeometry geom{};           ///< momentum grid
    std::vector<double> values;    ///< space-major: index q * geom.size() + l
};

/// Strang-split slab step: half transport (semi-Lagrangian periodic cubic
/// shift along velocity(p)), optional full collision step per space node,
/// half transport.
class SlabSolver {
  public:
    SlabSolver(const ModelSpec& model, const KernelSpec& kernel, bool collisions_on);

    SlabState step(const SlabState& state, double dt) const;
    SlabState run(const SlabState& initial, double t_end, double dt,
                  MonitorSeries& monitors) const;
    MonitorRecord monitor(const SlabState& state) const;

  private:
    ModelSpec model_;
    KernelSpec kernel_;
    bool collisions_on_;
};

/// Discrete Poisson operator on slab fields:
///   L(f) xi = -D_q(f D_{p1} xi) + D_{p1}(f D_q xi),
/// centered differences, periodic wrap in q and p1.
/// `field` and `xi` are space-major slab arrays.
std::vector<double> poisson_apply(const SlabState& f, const std::vector<double>& xi);

struct PoissonChecksReport {
    double antisymmetry_defect = 0.0;     ///< max |<L xi, eta> + <xi, L eta>| scaled
    double transport_identity_defect = 0.0;  ///< max |L dE - transport term|
    double entropy_degeneracy_defect = 0.0;  ///< max |L dS| via the flux form
    bool pass = false;
};

/// Verifies (i) antisymmetry on random fields, (ii) L dE = the discrete
/// transport term, (iii) L dS = 0 via the entropy-flux form (mixed centered
/// differences of G(f), G' = f h'', commute exactly).
PoissonChecksReport poisson_checks(const SlabState& f, const ModelSpec& model,
                                   std::uint64_t seed);

struct GenericAuditReport {
    double max_energy_drift = 0.0;     ///< max_t |E(t)-E(0)| / |E(0)|
    double min_entropy_production = 0.0;  ///< min_t -(H_{t+1}-H_t)/dt
    double max_mass_drift = 0.0;
    bool pass = false;
};

/// First/second-law audit of a completed run.
GenericAuditReport generic_energy_entropy_audit(const MonitorSeries& monitors);

}  // namespace kinetica
