// SPDX-License-Identifier: Apache-2.0
#include "kinetica/limits.hpp"

#include <algorithm>
#include <cmath>

#include "kinetica/rng.hpp"

namespace kinetica {

void finalize_sweep(SweepReport& report) {
    // Errors at (or below) the arithmetic floor carry no slope information,
    // so pairs resting on it are excluded from the order estimate.
    constexpr double kArithmeticFloor = 1e-13;
    report.orders.clear();
    for (std::size_t i = 0; i + 1 < report.values.size(); ++i) {
        const double e0 = report.errors[i];
        const double e1 = report.errors[i + 1];
        const double x0 = report.values[i];
        const double x1 = report.values[i + 1];
        if (e0 < kArithmeticFloor && e1 < kArithmeticFloor) continue;
        if (e0 > 0.0 && e1 > 0.0 && x0 > 0.0 && x1 > 0.0 && x0 != x1)
            report.orders.push_back(std::log(e0 / e1) / std::log(x0 / x1));
    }
    if (report.orders.empty()) {
        // Every usable pair sat on the floor: the sweep passes only if the
        // errors are all negligible ("already converged").
        report.observed_order = 0.0;
        report.pass = true;
        for (double e : report.errors) report.pass = report.pass && e < kArithmeticFloor;
        return;
    }
    std::vector<double> sorted = report.orders;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    report.observed_order = sorted.size() % 2 == 1
                                ? sorted[mid]
                                : 0.5 * (sorted[mid - 1] + sorted[mid]);
    report.pass = report.observed_order >= report.min_order;
}

SweepReport grazing_sweep(const Distribution& f, const TestFunction& phi,
                          const ModelSpec& model, const KernelSpec& kernel,
                          const QuadratureSpec& quad, const std::vector<double>& eps_list,
                          double min_order) {
    SweepReport report;
    report.parameter = "epsilon";
    report.quantity = "weak-form gap to the Landau operator";
    report.min_order = min_order;
    const double reference = landau_weak_form(f, phi, model, kernel, quad);
    for (double eps : eps_list) {
        KernelSpec rescaled = kernel;
        rescaled.angular = rescale_angular(kernel.angular, eps);
        const double value = weak_form(f, phi, model, rescaled, quad);
        report.values.push_back(eps);
        report.errors.push_back(std::abs(value - reference));
    }
    finalize_sweep(report);
    return report;
}

SweepReport grazing_lemma_pointwise(double a, double alpha, const Distribution& f,
                                    const TestFunction& phi, const Vec& p, const Vec& pstar,
                                    const std::vector<double>& theta_list,
                                    const ModelSpec& model, double min_order) {
    SweepReport report;
    report.parameter = "theta";
    report.quantity = "transverse-average ratio to its small-angle form";
    report.min_order = min_order;

    const int d = model.dim;
    const double sphere = d == 2 ? 2.0 : 2.0 * M_PI;
    auto kappa = [&](double fv) { return a + alpha * fv; };

    // Pair geometry shared by every theta.
    const double kap = kappa(f.value(p));
    const double kap_star = kappa(f.value(pstar));
    const Vec w = sub(phi.gradient(p), phi.gradient(pstar));
    const Mat hess_sum = mat_add(phi.hessian(p), phi.hessian(pstar));
    const Vec grad_f = f.gradient(p);
    const Vec grad_fstar = f.gradient(pstar);
    const Vec w_vec = sub(scale(alpha * kap_star, grad_f), scale(alpha * kap, grad_fstar));

    double rhs = 0.0;
    if (model.relativistic()) {
        const LorentzFrame frame = lorentz_frame(p, pstar, model.constants, d);
        if (!frame.k_defined) throw DomainError("grazing_lemma_pointwise: p = p*");
        const Mat proj = relativistic_projection(p, pstar, model.constants);
        const double g2 = frame.g * frame.g;
        rhs = sphere * (-0.25 * kap * kap_star * dot(sub(p, pstar), w) +
                        g2 / (8.0 * (d - 1)) * kap * kap_star * contract(proj, hess_sum, d) +
                        g2 / (4.0 * (d - 1)) * quad_form(w_vec, proj, w));
    } else {
        const Vec rel = sub(p, pstar);
        const double r = norm(rel);
        if (!(r > 0.0)) throw DomainError("grazing_lemma_pointwise: p = p*");
        const Vec k_hat = scale(1.0 / r, rel);
        const Mat proj = landau_projection(p, pstar);
        rhs = sphere * (-0.25 * r * kap * kap_star * dot(k_hat, w) +
                        r * r / (8.0 * (d - 1)) * kap * kap_star * contract(proj, hess_sum, d) +
                        r * r / (4.0 * (d - 1)) * quad_form(w_vec, proj, w));
    }
    if (rhs == 0.0)
        throw NumericalError("grazing_lemma_pointwise: degenerate configuration (zero limit)");

    GaussRule circle;
    if (d == 3) circle = uniform_circle_rule(64);
    Vec k_dir{};
    if (model.relativistic())
        k_dir = lorentz_frame(p, pstar, model.constants, d).k_hat;
    else
        k_dir = scale(1.0 / norm(sub(p, pstar)), sub(p, pstar));

    for (double theta : theta_list) {
        // Transverse average of kappa' kappa*' grad-bar phi at fixed theta.
        double lhs = 0.0;
        auto add_gamma = [&](const Vec& gamma, double weight) {
            const Vec omega = axpy(std::sin(theta), gamma, scale(std::cos(theta), k_dir));
            const CollisionEvent ev = make_event(p, pstar, omega, model);
            lhs += weight * kappa(f.value(ev.p_out)) * kappa(f.value(ev.pstar_out)) *
                   discrete_gradient(phi, ev);
        };
        if (d == 2) {
            add_gamma(rot90(k_dir), 1.0);
            add_gamma(scale(-1.0, rot90(k_dir)), 1.0);
        } else {
            Vec e1{}, e2{};
            orthogonal_basis(k_dir, e1, e2);
            for (std::size_t q = 0; q < circle.nodes.size(); ++q) {
                const double ang = circle.nodes[q];
                add_gamma(axpy(std::sin(ang), e2, scale(std::cos(ang), e1)),
                          circle.weights[q]);
            }
        }
        lhs /= theta * theta;
        report.values.push_back(theta);
        report.errors.push_back(std::abs(lhs / rhs - 1.0));
    }
    finalize_sweep(report);
    return report;
}

namespace {

/// sigma^c(x) = m sigma(x) / (2x): the momentum-transfer rescaling under
/// which the relativistic kernel collapses onto the classical one as c grows.
SigmaFamily newtonian_sigma(const SigmaFamily& sigma, double m) {
    SigmaFamily out = sigma;
    out.kind = SigmaFamily::Kind::PowerLaw;
    out.sigma0 = 0.5 * m * sigma.sigma0;
    out.gamma_exp = (sigma.kind == SigmaFamily::Kind::Constant ? 0.0 : sigma.gamma_exp) - 1.0;
    return out;
}

}  // namespace

std::vector<SweepReport> newtonian_sweep(const Distribution& f, const TestFunction& phi,
                                         const ModelSpec& classical_model,
                                         const KernelSpec& kernel, const QuadratureSpec& quad,
                                         const std::vector<double>& c_list, double min_order) {
    if (classical_model.relativistic())
        throw ConfigError("newtonian_sweep: reference model must be classical");

    SweepReport kinematic;
    kinematic.parameter = "1/c";
    kinematic.quantity = "max gap: g, Moller velocity, outgoing momenta, energy, velocity";
    kinematic.min_order = min_order;

    SweepReport operator_gap;
    operator_gap.parameter = "1/c";
    operator_gap.quantity = "weak-form gap to the classical operator";
    operator_gap.min_order = min_order;

    const double wf_classical = weak_form(f, phi, classical_model, kernel, quad);

    // Deterministic kinematic sample, reused for every c.
    struct Tuple {
        Vec p, pstar, omega;
    };
    std::vector<Tuple> tuples;
    Rng rng(0xA11CEull);
    for (int t = 0; t < 200; ++t) {
        Tuple tp;
        Vec dir{};
        for (int axis = 0; axis < classical_model.dim; ++axis) {
            tp.p[static_cast<std::size_t>(axis)] = rng.uniform(-3.0, 3.0);
            tp.pstar[static_cast<std::size_t>(axis)] = rng.uniform(-3.0, 3.0);
            dir[static_cast<std::size_t>(axis)] = rng.normal();
        }
        tp.omega = scale(1.0 / norm(dir), dir);
        tuples.push_back(tp);
    }

    for (double c : c_list) {
        ModelSpec rel = classical_model;
        rel.dynamics = Dynamics::Relativistic;
        rel.constants.c = c;
        const double mc2 = rel.constants.m * c * c;

        double gap = 0.0;
        for (const Tuple& tp : tuples) {
            Vec p_cl{}, pstar_cl{};
            classical_post_collision(tp.p, tp.pstar, tp.omega, p_cl, pstar_cl);
            const RelativisticOutgoing out =
                relativistic_post_collision(tp.p, tp.pstar, tp.omega, rel.constants, rel.dim);
            gap = std::max(gap, norm(sub(out.p_out, p_cl)));
            gap = std::max(gap, norm(sub(out.pstar_out, pstar_cl)));
            gap = std::max(gap, std::abs((energy(tp.p, rel) - mc2) -
                                         energy(tp.p, classical_model)));
            gap = std::max(gap,
                           norm(sub(velocity(tp.p, rel), velocity(tp.p, classical_model))));
            // Invariant relative momentum g -> |p - p*| and the Moller
            // velocity c g sqrt(s)/(p0 p0*) -> 2|p - p*|/m, both O(1/c^2).
            const LorentzFrame fr = lorentz_frame(tp.p, tp.pstar, rel.constants, rel.dim);
            const double r = norm(sub(tp.p, tp.pstar));
            gap = std::max(gap, std::abs(fr.g - r));
            gap = std::max(gap, std::abs(moller_velocity(tp.p, tp.pstar, rel.constants) -
                                         2.0 * r / rel.constants.m));
        }
        kinematic.values.push_back(1.0 / c);
        kinematic.errors.push_back(gap);

        KernelSpec rel_kernel = kernel;
        rel_kernel.sigma = newtonian_sigma(kernel.sigma, rel.constants.m);
        const double wf_rel = weak_form(f, phi, rel, rel_kernel, quad);
        operator_gap.values.push_back(1.0 / c);
        operator_gap.errors.push_back(std::abs(wf_rel - wf_classical));
    }
    finalize_sweep(kinematic);
    finalize_sweep(operator_gap);
    return {kinematic, operator_gap};
}

SweepReport semiclassical_sweep(const Distribution& f, const TestFunction& phi,
                                const ModelSpec& model, const KernelSpec& kernel,
                                const QuadratureSpec& quad,
                                const std::vector<double>& hbar_list, double min_order) {
    const double alpha = quantum_alpha(model.statistics);
    if (alpha == 0.0)
        throw ConfigError("semiclassical_sweep: needs Bose or Fermi statistics");

    SweepReport report;
    report.parameter = "hbar";
    report.quantity = "weak-form gap to the alpha = 0 operator";
    report.min_order = min_order;

    const double reference =
        weak_form_batch_custom(f, {phi}, model, kernel, quad,
                               gamma_row(Statistics::MaxwellBoltzmann), 0.5)
            .values[0];
    for (double hbar : hbar_list) {
        GammaRow row = gamma_row(model.statistics);
        row.alphabar0 *= hbar;
        row.alphabari *= hbar;
        const double value =
            weak_form_batch_custom(f, {phi}, model, kernel, quad, row, 0.5).values[0];
        report.values.push_back(hbar);
        report.errors.push_back(std::abs(value - reference));
    }
    finalize_sweep(report);
    return report;
}

SweepReport kinetic_limit_check(const Distribution& f, const TestFunction& phi,
                                const ModelSpec& model, const KernelSpec& kernel,
                                const QuadratureSpec& quad,
                                const std::vector<double>& eps_list, double min_order) {
    if (model.statistics != Statistics::BoseEinstein)
        throw ConfigError("kinetic_limit_check: needs Bose statistics");

    SweepReport report;
    report.parameter = "epsilon";
    report.quantity = "scaled weak-form gap to the wave operator";
    report.min_order = min_order;

    ModelSpec wave_model = model;
    wave_model.statistics = Statistics::Wave;
    const double reference = weak_form(f, phi, wave_model, kernel, quad);
    for (double eps : eps_list) {
        GammaRow row = gamma_row(Statistics::BoseEinstein);
        row.alphabar0 = 1.0 / eps;
        row.alphabari = 1.0 / eps;
        const double value =
            eps *
            weak_form_batch_custom(f, {phi}, model, kernel, quad, row, 0.5).values[0];
        report.values.push_back(eps);
        report.errors.push_back(std::abs(value - reference));
    }
    finalize_sweep(report);
    return report;
}

LinearLimitReport linear_limit_check(const Distribution& f_pert, const TestFunction& phi,
                                     const ModelSpec& model, const KernelSpec& kernel,
                                     const QuadratureSpec& quad,
                                     const std::vector<double>& eps_list, double min_order) {
    LinearLimitReport result;
    result.from_maxwell.parameter = "epsilon";
    result.from_maxwell.quantity = "scaled weak-form gap from the quantum operator";
    result.from_maxwell.min_order = min_order;
    result.from_wave = result.from_maxwell;
    result.from_wave.quantity = "scaled weak-form gap from the wave operator";

    ModelSpec linear_model = model;
    linear_model.statistics = Statistics::Linear;
    ModelSpec mb_model = model;
    mb_model.statistics = Statistics::MaxwellBoltzmann;
    ModelSpec wave_model = model;
    wave_model.statistics = Statistics::Wave;

    const double reference = weak_form(f_pert, phi, linear_model, kernel, quad);
    for (double eps : eps_list) {
        const Distribution g = Distribution::affine(1.0, eps, f_pert);
        const double from_mb = weak_form(g, phi, mb_model, kernel, quad) / eps;
        const double from_wave = weak_form(g, phi, wave_model, kernel, quad) / eps;
        result.from_maxwell.values.push_back(eps);
        result.from_maxwell.errors.push_back(std::abs(from_mb - reference));
        result.from_wave.values.push_back(eps);
        result.from_wave.errors.push_back(std::abs(from_wave - reference));
    }
    finalize_sweep(result.from_maxwell);
    finalize_sweep(result.from_wave);
    return result;
}

}  // namespace kinetica
