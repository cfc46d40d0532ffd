// SPDX-License-Identifier: Apache-2.0
// Time-evolution layer: lattice-event collision operator (exact conservation,
// entropy sign, stationary lattice Gaussians), RK4 stepping with clipping
// bookkeeping, short relaxation runs, slab transport invariants, the Poisson
// structure checks, and the first/second-law audit helper.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kinetica/solver.hpp"

using namespace kinetica;

namespace {
GridGeometry small_grid() {
    GridGeometry g;
    g.halfwidth = 4.0;
    g.nodes = 12;
    g.dim = 2;
    return g;
}

ModelSpec classical_maxwell() {
    ModelSpec m;
    m.statistics = Statistics::MaxwellBoltzmann;
    m.dim = 2;
    return m;
}

// Lattice events span folded angles up to pi/2; use the full angular support.
KernelSpec solver_kernel() {
    KernelSpec k = KernelSpec::standard(2);
    k.angular = rescale_angular(k.angular, M_PI);
    return k;
}

std::vector<double> bimodal_values(const GridGeometry& geom) {
    std::vector<double> v(geom.size());
    for (std::size_t l = 0; l < v.size(); ++l) {
        const Vec p = geom.point(l);
        v[l] = 0.55 * std::exp(-0.5 * norm2(sub(p, vec2(1.2, 0.4)))) +
               0.45 * std::exp(-0.5 * norm2(sub(p, vec2(-0.9, -0.5))) / 1.1);
    }
    return v;
}

State bimodal_state(const GridGeometry& geom) {
    State s;
    s.geom = geom;
    s.values = bimodal_values(geom);
    return s;
}
}  // namespace

TEST_CASE("grid geometry indexing") {
    const GridGeometry g = small_grid();
    CHECK(g.spacing() == doctest::Approx(8.0 / 11.0).epsilon(1e-14));
    CHECK(g.size() == 144);
    CHECK(g.cell_weight() == doctest::Approx(g.spacing() * g.spacing()).epsilon(1e-14));
    const Vec first = g.point(0);
    CHECK(first[0] == doctest::Approx(-4.0));
    CHECK(first[1] == doctest::Approx(-4.0));
    const Vec last = g.point(g.size() - 1);
    CHECK(last[0] == doctest::Approx(4.0));
    CHECK(last[1] == doctest::Approx(4.0));
    // Every node is a lattice point: (p + L)/spacing is integral.
    for (std::size_t l = 0; l < g.size(); ++l) {
        const Vec p = g.point(l);
        for (int a = 0; a < 2; ++a) {
            const double idx = (p[static_cast<std::size_t>(a)] + 4.0) / g.spacing();
            CHECK(std::abs(idx - std::round(idx)) <= 1e-9);
        }
    }
}

TEST_CASE("solver construction guards") {
    const KernelSpec kernel = solver_kernel();
    ModelSpec rel = classical_maxwell();
    rel.dynamics = Dynamics::Relativistic;
    CHECK_THROWS_AS(HomogeneousSolver(rel, kernel, small_grid()), ConfigError);

    GridGeometry g3 = small_grid();
    g3.dim = 3;
    CHECK_THROWS_AS(HomogeneousSolver(classical_maxwell(), kernel, g3), ConfigError);

    GridGeometry tiny = small_grid();
    tiny.nodes = 3;
    CHECK_THROWS_AS(HomogeneousSolver(classical_maxwell(), kernel, tiny), ConfigError);
}

TEST_CASE("lattice collision operator conserves the discrete invariants") {
    const GridGeometry geom = small_grid();
    const ModelSpec model = classical_maxwell();
    const HomogeneousSolver solver(model, solver_kernel(), geom);
    const std::vector<double> f = bimodal_values(geom);
    const std::vector<double> q = solver.collision_operator(f);

    const double w = geom.cell_weight();
    double mass = 0.0, px = 0.0, py = 0.0, en = 0.0, scale = 0.0;
    for (std::size_t l = 0; l < q.size(); ++l) {
        const Vec p = geom.point(l);
        const double e = energy(p, model);
        mass += w * q[l];
        px += w * q[l] * p[0];
        py += w * q[l] * p[1];
        en += w * q[l] * e;
        scale += w * std::abs(q[l]) * std::max(1.0, e);
    }
    REQUIRE(scale > 0.0);
    CHECK(std::abs(mass) <= 1e-13 * scale);
    CHECK(std::abs(px) <= 1e-13 * scale);
    CHECK(std::abs(py) <= 1e-13 * scale);
    CHECK(std::abs(en) <= 1e-13 * scale);
}

TEST_CASE("lattice collision operator dissipates entropy") {
    const GridGeometry geom = small_grid();
    const ModelSpec model = classical_maxwell();
    const HomogeneousSolver solver(model, solver_kernel(), geom);
    const std::vector<double> f = bimodal_values(geom);
    const std::vector<double> q = solver.collision_operator(f);

    const double w = geom.cell_weight();
    double pairing = 0.0, scale = 0.0;
    for (std::size_t l = 0; l < q.size(); ++l) {
        const double hp = entropy_prime(std::max(f[l], 1e-30), model.statistics);
        pairing += w * hp * q[l];
        scale += w * std::abs(hp * q[l]);
    }
    CHECK(pairing <= 1e-13 * scale);
    CHECK(-pairing > 1e-8 * scale);  // strictly dissipative away from equilibrium
}

TEST_CASE("lattice Gaussians are stationary") {
    // exp(a + b.p + c|p|^2) restricted to the grid: every lattice event
    // conserves the linear and quadratic sums exactly, so the bracket vanishes
    // in exact arithmetic node by node.
    const GridGeometry geom = small_grid();
    const ModelSpec model = classical_maxwell();
    const HomogeneousSolver solver(model, solver_kernel(), geom);

    std::vector<double> gauss(geom.size());
    for (std::size_t l = 0; l < gauss.size(); ++l) {
        const Vec p = geom.point(l);
        gauss[l] = std::exp(0.1 + 0.2 * p[0] - 0.1 * p[1] - 0.4 * norm2(p));
    }
    const std::vector<double> q_gauss = solver.collision_operator(gauss);
    const std::vector<double> q_ref = solver.collision_operator(bimodal_values(geom));
    double max_gauss = 0.0, max_ref = 0.0;
    for (std::size_t l = 0; l < q_gauss.size(); ++l) {
        max_gauss = std::max(max_gauss, std::abs(q_gauss[l]));
        max_ref = std::max(max_ref, std::abs(q_ref[l]));
    }
    REQUIRE(max_ref > 0.0);
    CHECK(max_gauss <= 1e-11 * max_ref);
}

TEST_CASE("RK4 step accounts for clipped mass and enforces stability") {
    const GridGeometry geom = small_grid();
    const ModelSpec model = classical_maxwell();
    const HomogeneousSolver solver(model, solver_kernel(), geom);
    const State initial = bimodal_state(geom);
    const double mass_before = solver.monitor(initial).mass;

    double clipped = 0.0;
    const State next = solver.step(initial, 0.02, &clipped);
    CHECK(clipped >= 0.0);
    const double mass_after = solver.monitor(next).mass;
    // RK4 preserves the linear invariant exactly; clipping adds mass back.
    CHECK(std::abs(mass_after - mass_before - clipped) <= 1e-12 * mass_before);
    CHECK(next.time == doctest::Approx(0.02));

    CHECK_THROWS_AS(solver.step(initial, 1e6, nullptr), NumericalError);
}

TEST_CASE("short relaxation run decays the dissipation monotonically") {
    const GridGeometry geom = small_grid();
    const ModelSpec model = classical_maxwell();
    const HomogeneousSolver solver(model, solver_kernel(), geom);
    MonitorSeries monitors;
    // The coarse 12-node grid makes max|Q| large relative to max f, so the
    // stability guard needs a short step here.
    const State final_state = solver.run(bimodal_state(geom), 0.08, 0.02, monitors);
    CHECK(final_state.time == doctest::Approx(0.08));
    REQUIRE(monitors.size() == 5);

    for (std::size_t k = 0; k + 1 < monitors.size(); ++k) {
        CHECK(monitors[k + 1].entropy <=
              monitors[k].entropy + 1e-10 * (1.0 + std::abs(monitors[k].entropy)));
    }
    for (const MonitorRecord& rec : monitors) CHECK(rec.dissipation >= -1e-12);
    CHECK(monitors.back().dissipation < monitors.front().dissipation);
    CHECK(std::abs(monitors.back().mass - monitors.front().mass) <=
          1e-10 * monitors.front().mass);
}

TEST_CASE("slab transport preserves spatial row sums and constants") {
    ModelSpec model = classical_maxwell();
    const SlabSolver solver(model, solver_kernel(), /*collisions_on=*/false);

    SlabState slab;
    slab.space_nodes = 16;
    slab.geom = small_grid();
    const std::size_t nm = slab.geom.size();
    slab.values.resize(static_cast<std::size_t>(slab.space_nodes) * nm);

    // Constant in space: transport is the identity on each momentum row.
    const std::vector<double> profile = bimodal_values(slab.geom);
    for (int qn = 0; qn < slab.space_nodes; ++qn)
        for (std::size_t l = 0; l < nm; ++l)
            slab.values[static_cast<std::size_t>(qn) * nm + l] = profile[l];
    const SlabState moved = solver.step(slab, 0.05);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < moved.values.size(); ++i)
        max_diff = std::max(max_diff, std::abs(moved.values[i] - slab.values[i]));
    CHECK(max_diff <= 1e-13);

    // Space-dependent data: the per-momentum spatial sums are invariant.
    SlabState wavy = slab;
    for (int qn = 0; qn < slab.space_nodes; ++qn) {
        const double mod = 1.0 + 0.3 * std::sin(2.0 * M_PI * qn / slab.space_nodes);
        for (std::size_t l = 0; l < nm; ++l)
            wavy.values[static_cast<std::size_t>(qn) * nm + l] = profile[l] * mod;
    }
    const SlabState wavy_moved = solver.step(wavy, 0.05);
    for (std::size_t l = 0; l < nm; l += 7) {
        double before = 0.0, after = 0.0;
        for (int qn = 0; qn < slab.space_nodes; ++qn) {
            before += wavy.values[static_cast<std::size_t>(qn) * nm + l];
            after += wavy_moved.values[static_cast<std::size_t>(qn) * nm + l];
        }
        CHECK(after == doctest::Approx(before).epsilon(1e-12));
    }

    // Monitors: transport leaves all moments unchanged.
    const MonitorRecord before = solver.monitor(wavy);
    const MonitorRecord after = solver.monitor(wavy_moved);
    CHECK(after.mass == doctest::Approx(before.mass).epsilon(1e-12));
    CHECK(after.energy == doctest::Approx(before.energy).epsilon(1e-12));
}

TEST_CASE("Poisson structure checks pass on a smooth slab state") {
    ModelSpec model = classical_maxwell();
    SlabState slab;
    slab.space_nodes = 24;
    slab.geom = small_grid();
    const std::size_t nm = slab.geom.size();
    slab.values.resize(static_cast<std::size_t>(slab.space_nodes) * nm);
    for (int qn = 0; qn < slab.space_nodes; ++qn) {
        const double x = slab.length * qn / slab.space_nodes;
        const double mod = 1.0 + 0.3 * std::sin(2.0 * M_PI * x / slab.length);
        for (std::size_t l = 0; l < nm; ++l) {
            const Vec p = slab.geom.point(l);
            slab.values[static_cast<std::size_t>(qn) * nm + l] =
                mod * std::exp(-0.5 * norm2(sub(p, vec2(0.4, 0.0))));
        }
    }
    const PoissonChecksReport report = poisson_checks(slab, model, 77);
    CHECK(report.antisymmetry_defect <= 1e-12);
    CHECK(report.transport_identity_defect <= 1e-12);
    CHECK(report.entropy_degeneracy_defect <= 1e-12);
    CHECK(report.pass);

    // poisson_apply is antisymmetric as a raw operator too.
    std::vector<double> xi(slab.values.size()), eta(slab.values.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        xi[i] = std::sin(0.01 * static_cast<double>(i));
        eta[i] = std::cos(0.017 * static_cast<double>(i));
    }
    const std::vector<double> lxi = poisson_apply(slab, xi);
    const std::vector<double> leta = poisson_apply(slab, eta);
    double fwd = 0.0, bwd = 0.0, mag = 0.0;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        fwd += lxi[i] * eta[i];
        bwd += xi[i] * leta[i];
        mag += std::abs(lxi[i] * eta[i]);
    }
    CHECK(std::abs(fwd + bwd) <= 1e-12 * std::max(1.0, mag));
}

TEST_CASE("energy/entropy audit flags drifts and entropy increases") {
    auto record = [](double t, double mass, double energy, double entropy) {
        MonitorRecord r;
        r.time = t;
        r.mass = mass;
        r.energy = energy;
        r.entropy = entropy;
        return r;
    };
    MonitorSeries good{record(0.0, 2.0, 5.0, -1.0), record(0.1, 2.0, 5.0, -1.2),
                       record(0.2, 2.0, 5.0, -1.3)};
    const GenericAuditReport ok = generic_energy_entropy_audit(good);
    CHECK(ok.pass);
    CHECK(ok.max_energy_drift <= 1e-12);
    CHECK(ok.min_entropy_production == doctest::Approx(1.0).epsilon(1e-9));

    MonitorSeries drifting = good;
    drifting[2].energy = 5.1;
    CHECK_FALSE(generic_energy_entropy_audit(drifting).pass);

    MonitorSeries heating = good;
    heating[2].entropy = -1.0;  // entropy rises on the second step
    const GenericAuditReport bad = generic_energy_entropy_audit(heating);
    CHECK_FALSE(bad.pass);
    CHECK(bad.min_entropy_production < 0.0);
}
