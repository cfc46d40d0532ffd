// SPDX-License-Identifier: Apache-2.0
// Microbenchmarks for the hot paths: collision-event assembly, the Boltzmann
// and Landau weak forms, pointwise operator evaluation, and one RK4 solver
// step.  Budgets are kept small; these track relative cost, not production
// accuracy.
#include <benchmark/benchmark.h>

#include "kinetica/boltzmann.hpp"
#include "kinetica/distribution.hpp"
#include "kinetica/kinematics.hpp"
#include "kinetica/landau.hpp"
#include "kinetica/solver.hpp"
#include "kinetica/statistics.hpp"
#include "kinetica/threading.hpp"

namespace {

using namespace kinetica;

ModelSpec classical_model(Statistics s = Statistics::MaxwellBoltzmann) {
    ModelSpec m;
    m.statistics = s;
    m.dynamics = Dynamics::Classical;
    m.dim = 2;
    return m;
}

QuadratureSpec bench_quad() {
    QuadratureSpec q;
    q.box_halfwidth = 4.0;
    q.box_nodes = 8;
    q.theta_panels = 4;
    q.theta_nodes = 3;
    q.circle_nodes = 8;
    return q;
}

void bench_make_event(benchmark::State& state) {
    ModelSpec model = classical_model();
    model.dynamics = Dynamics::Relativistic;
    const Vec p = vec2(1.1, 0.6), ps = vec2(-0.7, 0.3), omega = vec2(0.6, 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_event(p, ps, omega, model));
    }
}
BENCHMARK(bench_make_event);

void bench_weak_form(benchmark::State& state) {
    const ModelSpec model = classical_model();
    const KernelSpec kernel = KernelSpec::standard(2);
    const QuadratureSpec quad = bench_quad();
    const Distribution f = test_fixture(model, 0);
    const TestFunction phi = phi_gaussian(vec2(0.5, -0.3), 1.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weak_form(f, phi, model, kernel, quad));
    }
}
BENCHMARK(bench_weak_form);

void bench_weak_form_batch(benchmark::State& state) {
    const ModelSpec model = classical_model(Statistics::BoseEinstein);
    const KernelSpec kernel = KernelSpec::standard(2);
    const QuadratureSpec quad = bench_quad();
    const Distribution f = test_fixture(model, 1);
    const std::vector<TestFunction> phis{phi_one(), phi_momentum(0), phi_energy(model),
                                         phi_gaussian(vec2(0.5, -0.3), 1.4)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(weak_form_batch(f, phis, model, kernel, quad));
    }
}
BENCHMARK(bench_weak_form_batch);

void bench_evaluate_Q(benchmark::State& state) {
    const ModelSpec model = classical_model();
    const KernelSpec kernel = KernelSpec::standard(2);
    const QuadratureSpec quad = bench_quad();
    const Distribution f = test_fixture(model, 0);
    const Vec p = vec2(0.4, -0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_Q(f, p, model, kernel, quad));
    }
}
BENCHMARK(bench_evaluate_Q);

void bench_landau_weak_form(benchmark::State& state) {
    const ModelSpec model = classical_model();
    const KernelSpec kernel = KernelSpec::standard(2);
    QuadratureSpec quad = bench_quad();
    quad.box_nodes = 12;
    const Distribution f = test_fixture(model, 0);
    const TestFunction phi = phi_gaussian(vec2(0.5, -0.3), 1.4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(landau_weak_form(f, phi, model, kernel, quad));
    }
}
BENCHMARK(bench_landau_weak_form);

void bench_solver_step(benchmark::State& state) {
    const ModelSpec model = classical_model();
    KernelSpec kernel = KernelSpec::standard(2);
    kernel.angular = rescale_angular(kernel.angular, M_PI);
    GridGeometry geom;
    geom.halfwidth = 4.0;
    geom.nodes = 12;
    geom.dim = 2;
    const HomogeneousSolver solver(model, kernel, geom);
    State st;
    st.geom = geom;
    st.values.resize(geom.size());
    for (std::size_t l = 0; l < st.values.size(); ++l) {
        const Vec p = geom.point(l);
        st.values[l] = std::exp(-0.5 * dot(p, p));
    }
    double clipped = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.step(st, 0.01, &clipped));
    }
}
BENCHMARK(bench_solver_step);

}  // namespace

int main(int argc, char** argv) {
    // Single-threaded timing: the work-chunking layer is deterministic per
    // thread count, so wall time per op is only comparable at a fixed cap.
    kinetica::set_max_threads(1);
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
