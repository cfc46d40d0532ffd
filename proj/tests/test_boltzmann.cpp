// SPDX-License-Identifier: Apache-2.0
// Collision-operator evaluation: integrand oracles, conservation and entropy
// sign at quadrature level, equilibrium annihilation, the exact operator-level
// occupancy expansions, Monte Carlo cross-validation, and the
// dissipation-potential derivative.
//
// The occupancy expansions below hold per collision event, not merely in the
// limit, so every identity is checked at a deliberately tiny quadrature budget
// where any discretization mismatch between the two sides would be glaring.
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kinetica/boltzmann.hpp"
#include "kinetica/distribution.hpp"

using namespace kinetica;

namespace {
// Roundoff allowance for identities that are exact per quadrature event.
constexpr double kEventExact = 1e-12;

QuadratureSpec tiny_quad() {
    QuadratureSpec q;
    q.box_halfwidth = 4.0;
    q.box_nodes = 8;
    q.theta_panels = 4;
    q.theta_nodes = 3;
    q.circle_nodes = 8;
    q.mc_events = 60000;
    return q;
}

ModelSpec model_with(Statistics s, Dynamics dyn = Dynamics::Classical, int dim = 2) {
    ModelSpec m;
    m.statistics = s;
    m.dynamics = dyn;
    m.dim = dim;
    return m;
}

double rel_gap(double a, double b) { return std::abs(a - b) / (std::abs(a) + std::abs(b) + 1.0); }
}  // namespace

TEST_CASE("collision integrand oracles at the (1,2,3,4) tuple") {
    CHECK(collision_integrand(1.0, 2.0, 3.0, 4.0, gamma_row(Statistics::MaxwellBoltzmann)) ==
          doctest::Approx(20.0).epsilon(1e-14));
    CHECK(collision_integrand(1.0, 2.0, 3.0, 4.0, gamma_row(Statistics::Wave)) ==
          doctest::Approx(22.0).epsilon(1e-14));
    CHECK(collision_integrand(1.0, 2.0, 3.0, 4.0, gamma_row(Statistics::Linear)) ==
          doctest::Approx(4.0).epsilon(1e-14));
    CHECK(collision_integrand(1.0, 2.0, 3.0, 4.0, gamma_row(Statistics::BoseEinstein)) ==
          doctest::Approx(64.0).epsilon(1e-14));
}

TEST_CASE("test functions and their discrete gradients") {
    const ModelSpec model = model_with(Statistics::MaxwellBoltzmann);
    const CollisionEvent ev =
        make_event(vec2(1.0, 0.2), vec2(-0.8, 0.5), vec2(0.6, 0.8), model);

    CHECK(discrete_gradient(phi_one(), ev) == 0.0);
    // Momentum and energy are conserved by construction of the event.
    CHECK(std::abs(discrete_gradient(phi_momentum(0), ev)) <= 1e-14);
    CHECK(std::abs(discrete_gradient(phi_momentum(1), ev)) <= 1e-14);
    CHECK(std::abs(discrete_gradient(phi_energy(model), ev)) <= 1e-13);

    const TestFunction g = phi_gaussian(vec2(0.3, -0.2), 1.1);
    const double expected = g.value(ev.p_out) + g.value(ev.pstar_out) - g.value(ev.p) -
                            g.value(ev.pstar);
    CHECK(discrete_gradient(g, ev) == doctest::Approx(expected).epsilon(1e-14));

    // Gaussian gradient/hessian against finite differences.
    const Vec p = vec2(0.7, -0.4);
    const double h = 1e-6;
    const Vec gp = g.gradient(p);
    const Mat gh = g.hessian(p);
    for (int a = 0; a < 2; ++a) {
        Vec lo = p, hi = p;
        lo[static_cast<std::size_t>(a)] -= h;
        hi[static_cast<std::size_t>(a)] += h;
        CHECK(gp[static_cast<std::size_t>(a)] ==
              doctest::Approx((g.value(hi) - g.value(lo)) / (2.0 * h)).epsilon(1e-8));
        const Vec glo = g.gradient(lo), ghi = g.gradient(hi);
        for (int b = 0; b < 2; ++b)
            CHECK(gh(b, a) == doctest::Approx((ghi[static_cast<std::size_t>(b)] -
                                               glo[static_cast<std::size_t>(b)]) /
                                              (2.0 * h))
                                  .epsilon(1e-7));
    }
}

TEST_CASE("entropy-prime test function matches the density derivative") {
    const ModelSpec model = model_with(Statistics::BoseEinstein);
    const Distribution f = test_fixture(model, 0);
    const TestFunction xi = phi_entropy_prime(f, model.statistics);
    const Vec p = vec2(0.4, -0.6);
    CHECK(xi.value(p) ==
          doctest::Approx(entropy_prime(f.value(p), model.statistics)).epsilon(1e-14));
    const Vec grad = xi.gradient(p);
    const Vec expected = scale(entropy_double_prime(f.value(p), model.statistics),
                               f.gradient(p));
    CHECK(norm(sub(grad, expected)) <= 1e-14 * std::max(1.0, norm(expected)));
}

TEST_CASE("weak form conserves mass, momentum, and energy at any budget") {
    // The discrete gradient of an invariant vanishes per event, so the defect
    // is roundoff relative to the batch's absolute scale even on the coarsest
    // quadrature.
    const QuadratureSpec quad = tiny_quad();
    for (Statistics s : {Statistics::MaxwellBoltzmann, Statistics::BoseEinstein,
                         Statistics::Wave, Statistics::Linear}) {
        for (Dynamics dyn : {Dynamics::Classical, Dynamics::Relativistic}) {
            const ModelSpec model = model_with(s, dyn);
            const KernelSpec kernel = KernelSpec::standard(2);
            const Distribution f = test_fixture(model, 0);
            const std::vector<TestFunction> phis{
                phi_one(), phi_momentum(0), phi_momentum(1), phi_energy(model),
                phi_gaussian(vec2(0.5, -0.3), 1.4)};
            const WeakFormBatch batch = weak_form_batch(f, phis, model, kernel, quad);
            double scale_abs = 0.0;
            for (double a : batch.abs_scale) scale_abs = std::max(scale_abs, a);
            REQUIRE(scale_abs > 0.0);
            for (std::size_t k = 0; k + 1 < phis.size(); ++k)
                CHECK(std::abs(batch.values[k]) <= kEventExact * scale_abs);
            // The non-invariant observable sees a genuine signal.
            CHECK(std::abs(batch.values.back()) > kEventExact * scale_abs);
        }
    }
}

TEST_CASE("entropy pairing is nonpositive and matches the dissipation") {
    const QuadratureSpec quad = tiny_quad();
    for (Statistics s : {Statistics::MaxwellBoltzmann, Statistics::BoseEinstein,
                         Statistics::FermiDirac, Statistics::Wave, Statistics::Linear}) {
        const ModelSpec model = model_with(s);
        const KernelSpec kernel = KernelSpec::standard(2);
        const Distribution f = test_fixture(model, 1);
        const double pairing =
            weak_form(f, phi_entropy_prime(f, s), model, kernel, quad);
        const double dissipation = entropy_dissipation(f, model, kernel, quad);
        CHECK(dissipation >= -1e-12);
        CHECK(pairing <= 1e-12);
        CHECK(rel_gap(dissipation, -pairing) <= 1e-12);
        CHECK(dissipation > 0.0);  // fixtures are genuinely out of equilibrium
    }
}

TEST_CASE("matched equilibria annihilate the collision operator pointwise") {
    const QuadratureSpec quad = tiny_quad();
    const Vec probe = vec2(0.4, -0.2);
    for (Statistics s : {Statistics::MaxwellBoltzmann, Statistics::BoseEinstein,
                         Statistics::FermiDirac, Statistics::Wave, Statistics::Linear}) {
        const ModelSpec model = model_with(s);
        const KernelSpec kernel = KernelSpec::standard(2);
        const Distribution eq = matched_equilibrium(model, quad.box_halfwidth);
        const double q_eq = evaluate_Q(eq, probe, model, kernel, quad);
        const double q_fix = evaluate_Q(test_fixture(model, 0), probe, model, kernel, quad);
        CHECK(std::abs(q_eq) <= 1e-9 * std::max(1.0, std::abs(q_fix)));
        CHECK(std::abs(q_fix) > 1e-5);
    }
    // Relativistic alpha = 0: the Juttner state, annihilated because the
    // event construction conserves p0 + p0* exactly.
    const ModelSpec rel = model_with(Statistics::MaxwellBoltzmann, Dynamics::Relativistic);
    const Distribution eq = matched_equilibrium(rel, quad.box_halfwidth);
    const double q_eq = evaluate_Q(eq, probe, rel, KernelSpec::standard(2), quad);
    CHECK(std::abs(q_eq) <= 1e-9);
}

TEST_CASE("custom weak-form pass with the named row reproduces the default") {
    const QuadratureSpec quad = tiny_quad();
    const ModelSpec model = model_with(Statistics::BoseEinstein);
    const KernelSpec kernel = KernelSpec::standard(2);
    const Distribution f = test_fixture(model, 0);
    const std::vector<TestFunction> phis{phi_gaussian(vec2(0.5, -0.3), 1.4)};
    const WeakFormBatch named = weak_form_batch(f, phis, model, kernel, quad);
    const WeakFormBatch custom = weak_form_batch_custom(
        f, phis, model, kernel, quad, gamma_row(Statistics::BoseEinstein), 0.5);
    CHECK(named.values[0] == custom.values[0]);
    CHECK(named.abs_scale[0] == custom.abs_scale[0]);
}

TEST_CASE("occupancy expansions hold exactly at operator level") {
    const QuadratureSpec quad = tiny_quad();
    const ModelSpec model = model_with(Statistics::BoseEinstein);
    const KernelSpec kernel = KernelSpec::standard(2);
    const Distribution f = test_fixture(model, 0);
    const std::vector<TestFunction> phis{phi_gaussian(vec2(0.5, -0.3), 1.4)};

    auto custom = [&](const Distribution& g, const GammaRow& row, double mult) {
        return weak_form_batch_custom(g, phis, model, kernel, quad, row, mult).values[0];
    };
    const GammaRow mb = gamma_row(Statistics::MaxwellBoltzmann);
    const GammaRow wave = gamma_row(Statistics::Wave);
    const GammaRow lin = gamma_row(Statistics::Linear);

    const double wf_mb = custom(f, mb, 0.5);
    const double wf_wave = custom(f, wave, 1.0);
    const double wf_lin = custom(f, lin, 1.0);

    SUBCASE("occupancy factors linear in hbar split off the wave operator") {
        const double hbar = 0.3;
        GammaRow scaled = gamma_row(Statistics::BoseEinstein);
        scaled.alphabar0 = hbar;
        scaled.alphabari = hbar;
        const double lhs = custom(f, scaled, 0.5);
        const double rhs = wf_mb + hbar * wf_wave;
        CHECK(rel_gap(lhs, rhs) <= kEventExact);
    }
    SUBCASE("large occupancy recovers the wave operator at rate 1/eps") {
        const double eps = 0.5;
        GammaRow scaled = gamma_row(Statistics::BoseEinstein);
        scaled.alphabar0 = 1.0 / eps;
        scaled.alphabari = 1.0 / eps;
        const double lhs = eps * custom(f, scaled, 0.5);
        const double rhs = eps * wf_mb + wf_wave;
        CHECK(rel_gap(lhs, rhs) <= kEventExact);
    }
    SUBCASE("perturbation of the quantum operator splits off the linear one") {
        const double eps = 0.25;
        const Distribution g = Distribution::affine(1.0, eps, f);
        const double lhs = custom(g, mb, 0.5);
        const double rhs = eps * wf_lin + eps * eps * wf_mb;
        CHECK(rel_gap(lhs, rhs) <= kEventExact);
    }
    SUBCASE("perturbation of the wave operator splits off the linear one") {
        const double eps = 0.25;
        const Distribution g = Distribution::affine(1.0, eps, f);
        const double lhs = custom(g, wave, 1.0);
        const double rhs = eps * wf_lin + 2.0 * eps * eps * wf_mb +
                           eps * eps * eps * wf_wave;
        CHECK(rel_gap(lhs, rhs) <= kEventExact);
    }
}

TEST_CASE("Monte Carlo estimates agree with the deterministic quadrature") {
    QuadratureSpec quad = tiny_quad();
    quad.box_nodes = 16;  // deterministic reference needs a realistic grid
    quad.theta_panels = 8;
    quad.mc_events = 200000;
    const ModelSpec model = model_with(Statistics::MaxwellBoltzmann);
    const KernelSpec kernel = KernelSpec::standard(2);
    const Distribution f = test_fixture(model, 0);

    const Vec probe = vec2(0.4, -0.2);
    const double det = evaluate_Q(f, probe, model, kernel, quad);
    const McEstimate mc = evaluate_Q_mc(f, probe, model, kernel, quad);
    CHECK(mc.stderr_ > 0.0);
    CHECK(std::abs(mc.value - det) <=
          4.0 * mc.stderr_ + 1e-2 * std::abs(det) + 1e-10);

    const TestFunction phi = phi_gaussian(vec2(0.5, -0.3), 1.4);
    const double det_weak = weak_form(f, phi, model, kernel, quad);
    const McEstimate mc_weak = weak_form_mc(f, phi, model, kernel, quad);
    CHECK(mc_weak.stderr_ > 0.0);
    CHECK(std::abs(mc_weak.value - det_weak) <=
          4.0 * mc_weak.stderr_ + 1e-2 * std::abs(det_weak) + 1e-10);
}

TEST_CASE("dissipation-potential derivative reproduces the collision operator") {
    // The compatibility identity holds per event, so the four-term divergence
    // realization agrees with evaluate_Q at any budget, for every statistics
    // and both potential kinds.
    const QuadratureSpec quad = tiny_quad();
    const KernelSpec kernel = KernelSpec::standard(2);
    const Vec probe = vec2(0.4, -0.2);
    struct Case {
        Statistics s;
        PsiKind psi;
    };
    for (const Case& c : {Case{Statistics::BoseEinstein, PsiKind::Cosh},
                          Case{Statistics::BoseEinstein, PsiKind::Quadratic},
                          Case{Statistics::MaxwellBoltzmann, PsiKind::Cosh},
                          Case{Statistics::Wave, PsiKind::Quadratic}}) {
        const ModelSpec model = model_with(c.s);
        const Distribution f = test_fixture(model, 0);
        const auto dq = generalized_dissipation_derivative(
            f, phi_entropy_prime(f, c.s), model, kernel, quad, c.psi);
        const double lhs = dq(probe);
        const double rhs = evaluate_Q(f, probe, model, kernel, quad);
        CHECK(rel_gap(lhs, rhs) <= 1e-10);
    }
}

TEST_CASE("moments and entropy of analytic families") {
    QuadratureSpec quad;
    quad.box_halfwidth = 8.0;
    quad.box_nodes = 48;  // plain smooth integrands; generous and still fast
    ModelSpec model = model_with(Statistics::MaxwellBoltzmann);

    const Vec u = vec2(0.3, -0.1);
    const Distribution f = Distribution::maxwellian(2.0, u, 0.8, model);
    const Moments m = moments(f, model, quad);
    CHECK(m.mass == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(m.momentum[0] == doctest::Approx(2.0 * 0.3).epsilon(1e-9));
    CHECK(m.momentum[1] == doctest::Approx(-2.0 * 0.1).epsilon(1e-9));
    // <|p|^2/2m> = rho (m|u|^2/2 + d T/2) for the drifting Maxwellian.
    CHECK(m.energy == doctest::Approx(2.0 * (0.05 + 0.8)).epsilon(1e-9));

    // Constant state: H = area * h(c).
    QuadratureSpec small = quad;
    small.box_halfwidth = 4.0;
    const double c = 2.0;
    const double h_exact = 64.0 * (c * std::log(c) - c);
    CHECK(entropy_functional(Distribution::constant(c), model, small) ==
          doctest::Approx(h_exact).epsilon(1e-10));
}

TEST_CASE("test fixtures respect the statistics domain") {
    QuadratureSpec quad = tiny_quad();
    for (int index : {0, 1, 2}) {
        for (Statistics s : {Statistics::MaxwellBoltzmann, Statistics::FermiDirac,
                             Statistics::Wave}) {
            const ModelSpec model = model_with(s);
            const Distribution f = test_fixture(model, index);
            for (const BoxNode& n : box_rule(quad.box_halfwidth, 9, 2)) {
                const double v = f.value(n.p);
                CHECK(v > 0.0);
                if (s == Statistics::FermiDirac) CHECK(v < 1.0);
            }
        }
    }
}

TEST_CASE("grid sampling reproduces analytic values inside the box") {
    const ModelSpec model = model_with(Statistics::MaxwellBoltzmann);
    const Distribution f = Distribution::maxwellian(1.0, vec2(0.2, 0.1), 1.0, model);
    const Distribution g = Distribution::sampled(f, 6.0, 61, 2);
    CHECK(g.kind() == Distribution::Kind::Grid);
    const Vec probe = vec2(0.37, -0.85);  // deliberately off-node
    CHECK(g.value(probe) == doctest::Approx(f.value(probe)).epsilon(1e-3));
    CHECK(norm(sub(g.gradient(probe), f.gradient(probe))) <= 1e-2);
    // Outside the box the interpolant vanishes.
    CHECK(g.value(vec2(7.0, 0.0)) == 0.0);
}
