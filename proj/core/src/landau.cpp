// SPDX-License-Identifier: Apache-2.0
#include "kinetica/landau.hpp"

#include <cmath>
#include <vector>

#include "kinetica/threading.hpp"

namespace kinetica {

namespace {

// Pairs closer than this (relative to the box scale) are skipped in the
// momentum double integrals: the Landau kernel vanishes like |p - p*|^2
// there, so the exact-diagonal 0/0 of the projection never contributes.
constexpr double kPairCut = 1e-12;

/// Statistics bracket vector V(p, p*) built from values and gradients of f.
Vec bracket_vector(const Distribution& f, const Vec& p, const Vec& pstar, Statistics s) {
    const double fv = f.value(p);
    const double fsv = f.value(pstar);
    const Vec gf = f.gradient(p);
    const Vec gfs = f.gradient(pstar);
    switch (s) {
        case Statistics::MaxwellBoltzmann:
        case Statistics::BoseEinstein:
        case Statistics::FermiDirac: {
            const double alpha = quantum_alpha(s);
            return sub(scale(fsv * (1.0 + alpha * fsv), gf),
                       scale(fv * (1.0 + alpha * fv), gfs));
        }
        case Statistics::Wave:
            return sub(scale(fsv * fsv, gf), scale(fv * fv, gfs));
        case Statistics::Linear:
            return sub(gf, gfs);
    }
    return Vec{};
}

Mat projection_of(const Vec& p, const Vec& pstar, const ModelSpec& model) {
    return model.relativistic() ? relativistic_projection(p, pstar, model.constants)
                                : landau_projection(p, pstar);
}

bool pair_too_close(const Vec& p, const Vec& pstar, double box_halfwidth) {
    return norm(sub(p, pstar)) <= kPairCut * box_halfwidth;
}

/// Chunked double box sum of fn(p_node, pstar_node) over ordered pairs with
/// p != p*; fn must be symmetric-aware (caller includes any 2x factors).
double pair_sum(const ModelSpec& model, const QuadratureSpec& quad,
                const std::function<double(const BoxNode&, const BoxNode&)>& fn) {
    const std::vector<BoxNode> box = box_rule(quad.box_halfwidth, quad.box_nodes, model.dim);
    const std::size_t n = box.size();
    const std::size_t n_pairs = n * (n - 1) / 2;
    std::vector<double> chunk_acc(static_cast<std::size_t>(kReductionChunks), 0.0);
    parallel_for_chunked(n_pairs, [&](int chunk, std::size_t begin, std::size_t end) {
        std::size_t i = 0, row_start = 0;
        while (i + 1 < n && row_start + (n - i - 1) <= begin) {
            row_start += n - i - 1;
            ++i;
        }
        std::size_t j = i + 1 + (begin - row_start);
        double acc = 0.0;
        for (std::size_t t = begin; t < end; ++t) {
            acc += fn(box[i], box[j]);
            if (++j == n) {
                ++i;
                j = i + 1;
            }
        }
        chunk_acc[static_cast<std::size_t>(chunk)] += acc;
    });
    double total = 0.0;
    for (double a : chunk_acc) total += a;
    return total;
}

}  // namespace

LandauFlux landau_flux(const Distribution& f, const Vec& p, const Vec& pstar,
                       const ModelSpec& model, const KernelSpec& kernel) {
    LandauFlux flux;
    flux.kernel = kernel_landau(p, pstar, kernel, model);
    flux.projection = projection_of(p, pstar, model);
    flux.bracket = bracket_vector(f, p, pstar, model.statistics);
    return flux;
}

Vec landau_gradient(const TestFunction& phi, const Vec& p, const Vec& pstar,
                    const ModelSpec& model) {
    const Vec w = sub(phi.gradient(p), phi.gradient(pstar));
    if (model.relativistic()) {
        const LorentzFrame frame = lorentz_frame(p, pstar, model.constants, model.dim);
        if (!frame.k_defined) throw DomainError("landau_gradient: p = p*");
        const Vec lw = matvec(frame.lambda_tilde, w);
        return sub(lw, scale(dot(frame.k_hat, lw), frame.k_hat));
    }
    const Mat proj = landau_projection(p, pstar);
    return matvec(proj, w);
}

double evaluate_QL(const Distribution& f, const Vec& p, const ModelSpec& model,
                   const KernelSpec& kernel, const QuadratureSpec& quad) {
    // Outer divergence by 4th-order central differences of the flux integral.
    const double h = 0.05;
    const std::vector<BoxNode> box = box_rule(quad.box_halfwidth, quad.box_nodes, model.dim);

    auto flux_component = [&](const Vec& at, int axis) {
        std::vector<double> chunk_acc(static_cast<std::size_t>(kReductionChunks), 0.0);
        parallel_for_chunked(box.size(), [&](int chunk, std::size_t begin, std::size_t end) {
            double acc = 0.0;
            for (std::size_t b = begin; b < end; ++b) {
                if (pair_too_close(at, box[b].p, quad.box_halfwidth)) continue;
                const LandauFlux flux = landau_flux(f, at, box[b].p, model, kernel);
                acc += box[b].w * flux.kernel *
                       matvec(flux.projection, flux.bracket)[static_cast<std::size_t>(axis)];
            }
            chunk_acc[static_cast<std::size_t>(chunk)] += acc;
        });
        double total = 0.0;
        for (double a : chunk_acc) total += a;
        return total;
    };

    double divergence = 0.0;
    for (int axis = 0; axis < model.dim; ++axis) {
        Vec p1 = p, p2 = p, m1 = p, m2 = p;
        p1[static_cast<std::size_t>(axis)] += h;
        p2[static_cast<std::size_t>(axis)] += 2.0 * h;
        m1[static_cast<std::size_t>(axis)] -= h;
        m2[static_cast<std::size_t>(axis)] -= 2.0 * h;
        divergence += (-flux_component(p2, axis) + 8.0 * flux_component(p1, axis) -
                       8.0 * flux_component(m1, axis) + flux_component(m2, axis)) /
                      (12.0 * h);
    }
    return divergence;
}

WeakFormBatch landau_weak_form_batch(const Distribution& f,
                                     const std::vector<TestFunction>& phis,
                                     const ModelSpec& model, const KernelSpec& kernel,
                                     const QuadratureSpec& quad) {
    const std::size_t n_phi = phis.size();
    const std::vector<BoxNode> box = box_rule(quad.box_halfwidth, quad.box_nodes, model.dim);
    const std::size_t n = box.size();
    const std::size_t n_pairs = n * (n - 1) / 2;
    const int n_acc = static_cast<int>(2 * n_phi);

    std::vector<double> chunk_acc(static_cast<std::size_t>(kReductionChunks * n_acc), 0.0);
    parallel_for_chunked(n_pairs, [&](int chunk, std::size_t begin, std::size_t end) {
        double* acc = &chunk_acc[static_cast<std::size_t>(chunk * n_acc)];
        std::size_t i = 0, row_start = 0;
        while (i + 1 < n && row_start + (n - i - 1) <= begin) {
            row_start += n - i - 1;
            ++i;
        }
        std::size_t j = i + 1 + (begin - row_start);
        for (std::size_t t = begin; t < end; ++t) {
            if (!pair_too_close(box[i].p, box[j].p, quad.box_halfwidth)) {
                const LandauFlux flux = landau_flux(f, box[i].p, box[j].p, model, kernel);
                const Vec pv = matvec(flux.projection, flux.bracket);
                // Ordered-pair factor 2; the integrand below is symmetric.
                const double w = 2.0 * box[i].w * box[j].w * flux.kernel;
                for (std::size_t k = 0; k < n_phi; ++k) {
                    const Vec grad_diff =
                        sub(phis[k].gradient(box[i].p), phis[k].gradient(box[j].p));
                    const double contrib = -0.5 * w * dot(grad_diff, pv);
                    acc[2 * k] += contrib;
                    acc[2 * k + 1] += std::abs(contrib);
                }
            }
            if (++j == n) {
                ++i;
                j = i + 1;
            }
        }
    });

    WeakFormBatch batch;
    batch.values.assign(n_phi, 0.0);
    batch.abs_scale.assign(n_phi, 0.0);
    for (int chunk = 0; chunk < kReductionChunks; ++chunk)
        for (std::size_t k = 0; k < n_phi; ++k) {
            batch.values[k] += chunk_acc[static_cast<std::size_t>(chunk * n_acc) + 2 * k];
            batch.abs_scale[k] +=
                chunk_acc[static_cast<std::size_t>(chunk * n_acc) + 2 * k + 1];
        }
    return batch;
}

double landau_weak_form(const Distribution& f, const TestFunction& phi, const ModelSpec& model,
                        const KernelSpec& kernel, const QuadratureSpec& quad) {
    return landau_weak_form_batch(f, {phi}, model, kernel, quad).values[0];
}

double landau_dissipation(const Distribution& f, const ModelSpec& model,
                          const KernelSpec& kernel, const QuadratureSpec& quad) {
    const Statistics s = model.statistics;
    return pair_sum(model, quad, [&](const BoxNode& a, const BoxNode& b) {
        if (pair_too_close(a.p, b.p, quad.box_halfwidth)) return 0.0;
        const double fv = f.value(a.p);
        const double fsv = f.value(b.p);
        const Vec u = sub(scale(entropy_double_prime(fv, s), f.gradient(a.p)),
                          scale(entropy_double_prime(fsv, s), f.gradient(b.p)));
        const Mat proj = projection_of(a.p, b.p, model);
        const double quadratic = quad_form(u, proj, u);
        return 2.0 * a.w * b.w * 0.5 * kernel_landau(a.p, b.p, kernel, model) *
               landau_theta(fv, fsv, s) * quadratic;
    });
}

double landau_onsager_form(const Distribution& f, const TestFunction& phi,
                           const TestFunction& psi, const ModelSpec& model,
                           const KernelSpec& kernel, const QuadratureSpec& quad) {
    const Statistics s = model.statistics;
    return pair_sum(model, quad, [&](const BoxNode& a, const BoxNode& b) {
        if (pair_too_close(a.p, b.p, quad.box_halfwidth)) return 0.0;
        const Vec gphi = landau_gradient(phi, a.p, b.p, model);
        const Vec gpsi = landau_gradient(psi, a.p, b.p, model);
        return 2.0 * a.w * b.w * 0.5 * kernel_landau(a.p, b.p, kernel, model) *
               landau_theta(f.value(a.p), f.value(b.p), s) * dot(gphi, gpsi);
    });
}

}  // namespace kinetica
