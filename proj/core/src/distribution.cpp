// SPDX-License-Identifier: Apache-2.0
#include "kinetica/distribution.hpp"

#include <cmath>
#include <memory>
#include <sstream>
#include <utility>

#include "kinetica/kinematics.hpp"
#include "kinetica/statistics.hpp"

namespace kinetica {

namespace {

Distribution make_analytic(std::function<double(const Vec&)> value,
                           std::function<Vec(const Vec&)> gradient, std::string family) {
    return Distribution::from_functions(std::move(value), std::move(gradient),
                                        std::move(family));
}

/// Shared shape for the quantum equilibria: occupation(x) with
/// x = (e(p) - mu)/T; `sign` is -1 for Bose, +1 for Fermi.
Distribution quantum_equilibrium(double mu, double T, const ModelSpec& model, double sign,
                                 std::string family) {
    auto value = [=](const Vec& p) {
        const double x = (energy(p, model) - mu) / T;
        return 1.0 / (std::exp(x) + sign);
    };
    auto gradient = [=](const Vec& p) {
        const double x = (energy(p, model) - mu) / T;
        const double ex = std::exp(x);
        const double f = 1.0 / (ex + sign);
        // df/de = -f (1 - sign f) ... written via ex to avoid cancellation:
        // d/dx [1/(ex+sign)] = -ex/(ex+sign)^2.
        const double dfdx = -ex * f * f;
        return scale(dfdx / T, velocity(p, model));
    };
    return make_analytic(value, gradient, std::move(family));
}

}  // namespace

Distribution Distribution::from_functions(std::function<double(const Vec&)> value,
                                          std::function<Vec(const Vec&)> gradient,
                                          std::string family) {
    Distribution f;
    f.kind_ = Kind::Analytic;
    f.family_ = std::move(family);
    f.value_ = std::move(value);
    f.gradient_ = std::move(gradient);
    return f;
}

Distribution Distribution::maxwellian(double rho, const Vec& u, double T,
                                      const ModelSpec& model) {
    if (!(rho > 0.0) || !(T > 0.0))
        throw ConfigError("maxwellian: rho and T must be positive");
    const double m = model.constants.m;
    const int d = model.dim;
    const double norm_const = rho * std::pow(2.0 * M_PI * m * T, -0.5 * d);
    const Vec mu_vec = scale(m, u);
    auto value = [=](const Vec& p) {
        const Vec q = sub(p, mu_vec);
        return norm_const * std::exp(-0.5 * norm2(q) / (m * T));
    };
    auto gradient = [=](const Vec& p) {
        const Vec q = sub(p, mu_vec);
        const double f = norm_const * std::exp(-0.5 * norm2(q) / (m * T));
        return scale(-f / (m * T), q);
    };
    return make_analytic(value, gradient, "maxwellian");
}

Distribution Distribution::bose_einstein(double mu, double T, const ModelSpec& model,
                                         double box_halfwidth) {
    if (!(T > 0.0)) throw ConfigError("bose_einstein: T must be positive");
    // Minimal energy on the box is at p = 0 for both dynamics.
    const double e_min = energy(Vec{}, model);
    if (!(mu < e_min)) {
        std::ostringstream os;
        os << "bose_einstein: mu = " << mu << " must lie below the minimal energy " << e_min;
        throw ConfigError(os.str());
    }
    (void)box_halfwidth;
    return quantum_equilibrium(mu, T, model, -1.0, "bose-einstein");
}

Distribution Distribution::fermi_dirac(double mu, double T, const ModelSpec& model) {
    if (!(T > 0.0)) throw ConfigError("fermi_dirac: T must be positive");
    return quantum_equilibrium(mu, T, model, +1.0, "fermi-dirac");
}

Distribution Distribution::rayleigh_jeans(double mu, double T, const ModelSpec& model,
                                          double box_halfwidth) {
    if (!(T > 0.0)) throw ConfigError("rayleigh_jeans: T must be positive");
    const double e_min = energy(Vec{}, model);
    if (!(e_min + mu > 0.0))
        throw ConfigError("rayleigh_jeans: need e(p) + mu > 0 everywhere (mu too negative)");
    (void)box_halfwidth;
    auto value = [=](const Vec& p) { return T / (energy(p, model) + mu); };
    auto gradient = [=](const Vec& p) {
        const double denom = energy(p, model) + mu;
        return scale(-T / (denom * denom), velocity(p, model));
    };
    return make_analytic(value, gradient, "rayleigh-jeans");
}

Distribution Distribution::juttner(double amplitude, double T, const ModelSpec& model) {
    if (!(amplitude > 0.0) || !(T > 0.0))
        throw ConfigError("juttner: amplitude and T must be positive");
    const double c = model.constants.c;
    const double mc = model.constants.m * c;
    auto value = [=](const Vec& p) {
        const double p0 = std::sqrt(mc * mc + norm2(p));
        // Energy measured from rest so the amplitude stays O(1) as c grows.
        return amplitude * std::exp(-c * (p0 - mc) / T);
    };
    auto gradient = [=](const Vec& p) {
        const double p0 = std::sqrt(mc * mc + norm2(p));
        const double f = amplitude * std::exp(-c * (p0 - mc) / T);
        return scale(-f * c / (T * p0), p);
    };
    return make_analytic(value, gradient, "juttner");
}

Distribution Distribution::constant(double value) {
    auto v = [=](const Vec&) { return value; };
    auto g = [](const Vec&) { return Vec{}; };
    return make_analytic(v, g, "constant");
}

Distribution Distribution::gaussian_mixture(std::vector<GaussComponent> parts,
                                            const ModelSpec& model) {
    if (parts.empty()) throw ConfigError("gaussian_mixture: need at least one component");
    const double m = model.constants.m;
    const int d = model.dim;
    struct Term {
        double amp;
        Vec center;
        double inv_mt;
    };
    std::vector<Term> terms;
    terms.reserve(parts.size());
    for (const auto& part : parts) {
        if (!(part.temperature > 0.0))
            throw ConfigError("gaussian_mixture: temperatures must be positive");
        terms.push_back({part.weight * std::pow(2.0 * M_PI * m * part.temperature, -0.5 * d),
                         part.center, 1.0 / (m * part.temperature)});
    }
    auto value = [terms](const Vec& p) {
        double f = 0.0;
        for (const auto& t : terms) {
            const Vec q = sub(p, t.center);
            f += t.amp * std::exp(-0.5 * norm2(q) * t.inv_mt);
        }
        return f;
    };
    auto gradient = [terms](const Vec& p) {
        Vec g{};
        for (const auto& t : terms) {
            const Vec q = sub(p, t.center);
            const double f = t.amp * std::exp(-0.5 * norm2(q) * t.inv_mt);
            g = axpy(-f * t.inv_mt, q, g);
        }
        return g;
    };
    return make_analytic(value, gradient, "gaussian-mixture");
}

Distribution Distribution::affine(double a, double b, Distribution f) {
    auto value = [a, b, f](const Vec& p) { return a + b * f.value(p); };
    auto gradient = [b, f](const Vec& p) { return scale(b, f.gradient(p)); };
    return make_analytic(value, gradient, "affine(" + f.family() + ")");
}

namespace {

struct GridData {
    double halfwidth;
    int nodes;
    int dim;
    double spacing;
    std::vector<double> values;

    std::size_t flat(int i, int j, int k) const {
        const std::size_t n = static_cast<std::size_t>(nodes);
        return dim == 2 ? (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j))
                        : ((static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
                           static_cast<std::size_t>(k));
    }

    double interpolate(const Vec& p) const {
        // Zero outside the closed box.
        for (int a = 0; a < dim; ++a)
            if (std::abs(p[static_cast<std::size_t>(a)]) > halfwidth) return 0.0;
        int idx[3] = {0, 0, 0};
        double frac[3] = {0.0, 0.0, 0.0};
        for (int a = 0; a < dim; ++a) {
            const double t = (p[static_cast<std::size_t>(a)] + halfwidth) / spacing;
            int i = static_cast<int>(std::floor(t));
            i = std::max(0, std::min(nodes - 2, i));
            idx[a] = i;
            frac[a] = t - i;
        }
        if (dim == 2) {
            const double f00 = values[flat(idx[0], idx[1], 0)];
            const double f10 = values[flat(idx[0] + 1, idx[1], 0)];
            const double f01 = values[flat(idx[0], idx[1] + 1, 0)];
            const double f11 = values[flat(idx[0] + 1, idx[1] + 1, 0)];
            const double fx0 = f00 + frac[0] * (f10 - f00);
            const double fx1 = f01 + frac[0] * (f11 - f01);
            return fx0 + frac[1] * (fx1 - fx0);
        }
        double corner[8];
        for (int b = 0; b < 8; ++b) {
            corner[b] = values[flat(idx[0] + (b & 1), idx[1] + ((b >> 1) & 1),
                                    idx[2] + ((b >> 2) & 1))];
        }
        for (int a = 0; a < 3; ++a) {
            const int stride = 1 << a;
            for (int b = 0; b < 8; b += 2 * stride)
                corner[b] = corner[b] + frac[a] * (corner[b + stride] - corner[b]);
        }
        return corner[0];
    }
};

}  // namespace

Distribution Distribution::grid(double halfwidth, int nodes_per_axis, int dim,
                                std::vector<double> values) {
    if (nodes_per_axis < 2) throw ConfigError("grid: need at least two nodes per axis");
    if (dim != 2 && dim != 3) throw ConfigError("grid: dim must be 2 or 3");
    std::size_t expected = 1;
    for (int a = 0; a < dim; ++a) expected *= static_cast<std::size_t>(nodes_per_axis);
    if (values.size() != expected) throw ConfigError("grid: value count does not match grid");

    auto data = std::make_shared<GridData>();
    data->halfwidth = halfwidth;
    data->nodes = nodes_per_axis;
    data->dim = dim;
    data->spacing = 2.0 * halfwidth / (nodes_per_axis - 1);
    data->values = std::move(values);

    auto value = [data](const Vec& p) { return data->interpolate(p); };
    auto gradient = [data](const Vec& p) {
        Vec g{};
        const double delta = 0.5 * data->spacing;
        for (int a = 0; a < data->dim; ++a) {
            Vec hi = p;
            Vec lo = p;
            hi[static_cast<std::size_t>(a)] += delta;
            lo[static_cast<std::size_t>(a)] -= delta;
            g[static_cast<std::size_t>(a)] =
                (data->interpolate(hi) - data->interpolate(lo)) / (2.0 * delta);
        }
        return g;
    };
    Distribution f;
    f.kind_ = Kind::Grid;
    f.family_ = "grid";
    f.value_ = value;
    f.gradient_ = gradient;
    return f;
}

Distribution Distribution::sampled(const Distribution& f, double halfwidth, int nodes_per_axis,
                                   int dim) {
    std::vector<double> values;
    const double spacing = 2.0 * halfwidth / (nodes_per_axis - 1);
    if (dim == 2) {
        values.reserve(static_cast<std::size_t>(nodes_per_axis) *
                       static_cast<std::size_t>(nodes_per_axis));
        for (int i = 0; i < nodes_per_axis; ++i)
            for (int j = 0; j < nodes_per_axis; ++j)
                values.push_back(
                    f.value(vec2(-halfwidth + i * spacing, -halfwidth + j * spacing)));
    } else {
        for (int i = 0; i < nodes_per_axis; ++i)
            for (int j = 0; j < nodes_per_axis; ++j)
                for (int k = 0; k < nodes_per_axis; ++k)
                    values.push_back(f.value(vec3(-halfwidth + i * spacing,
                                                  -halfwidth + j * spacing,
                                                  -halfwidth + k * spacing)));
    }
    return grid(halfwidth, nodes_per_axis, dim, std::move(values));
}

Moments moments(const Distribution& f, const ModelSpec& model, const QuadratureSpec& quad) {
    Moments result;
    for (const BoxNode& node : box_rule(quad.box_halfwidth, quad.box_nodes, model.dim)) {
        const double fv = f.value(node.p);
        result.mass += node.w * fv;
        result.momentum = axpy(node.w * fv, node.p, result.momentum);
        result.energy += node.w * fv * energy(node.p, model);
    }
    return result;
}

double entropy_functional(const Distribution& f, const ModelSpec& model,
                          const QuadratureSpec& quad) {
    double h_total = 0.0;
    for (const BoxNode& node : box_rule(quad.box_halfwidth, quad.box_nodes, model.dim)) {
        h_total += node.w * entropy_density(f.value(node.p), model.statistics);
    }
    return h_total;
}

Distribution matched_equilibrium(const ModelSpec& model, double box_halfwidth) {
    switch (model.statistics) {
        case Statistics::MaxwellBoltzmann:
            return model.relativistic() ? Distribution::juttner(1.0, 1.0, model)
                                        : Distribution::maxwellian(1.0, Vec{}, 1.0, model);
        case Statistics::BoseEinstein:
            return Distribution::bose_einstein(-0.5, 1.0, model, box_halfwidth);
        case Statistics::FermiDirac:
            return Distribution::fermi_dirac(0.5, 1.0, model);
        case Statistics::Wave:
            return Distribution::rayleigh_jeans(0.5, 1.0, model, box_halfwidth);
        case Statistics::Linear:
            return Distribution::constant(0.7);
    }
    throw ConfigError("matched_equilibrium: unknown statistics");
}

Distribution test_fixture(const ModelSpec& model, int index) {
    // Unnormalized anisotropic bump mixtures with statistics-appropriate
    // ranges. Values and gradients are analytic; shapes vary with `index`.
    struct Bump {
        double amp;
        Vec center;
        double width2;  ///< 2 w^2
    };
    const double shift = 0.35 * static_cast<double>(index % 3);
    const double breathe = 1.0 + 0.2 * static_cast<double>(index % 2);
    std::vector<Bump> bumps;
    double background = 0.0;
    switch (model.statistics) {
        case Statistics::MaxwellBoltzmann:
        case Statistics::BoseEinstein:
        case Statistics::Linear:
            bumps = {{0.8, vec3(1.2 + shift, 0.6, 0.0), 2.6 * breathe},
                     {0.5, vec3(-1.0, -0.8 - shift, 0.3), 3.4}};
            break;
        case Statistics::FermiDirac:
            // Peak sum stays below 0.85 so occupations remain inside (0, 1).
            bumps = {{0.45, vec3(0.9 + shift, 0.4, 0.0), 3.0 * breathe},
                     {0.35, vec3(-0.8, -0.6 - shift, 0.2), 4.0}};
            break;
        case Statistics::Wave:
            // Broad positive background keeps 1/f and 1/f^2 moderate on the box.
            bumps = {{0.9, vec3(1.1 + shift, 0.5, 0.0), 2.8 * breathe},
                     {0.6, vec3(-1.2, -0.5 - shift, 0.25), 3.6}};
            background = 1e-3;
            break;
    }
    if (model.dim == 2) {
        for (auto& b : bumps) b.center[2] = 0.0;
    }
    const double bg_width2 = 64.0;  // half-width-8 box: corner value ~ e^-3
    auto value = [bumps, background, bg_width2](const Vec& p) {
        double f = background * std::exp(-norm2(p) / bg_width2);
        for (const auto& b : bumps) f += b.amp * std::exp(-norm2(sub(p, b.center)) / b.width2);
        return f;
    };
    auto gradient = [bumps, background, bg_width2](const Vec& p) {
        Vec g = scale(background * std::exp(-norm2(p) / bg_width2) * (-2.0 / bg_width2), p);
        for (const auto& b : bumps) {
            const Vec q = sub(p, b.center);
            const double f = b.amp * std::exp(-norm2(q) / b.width2);
            g = axpy(-2.0 * f / b.width2, q, g);
        }
        return g;
    };
    return Distribution::from_functions(value, gradient, "fixture");
}

}  // namespace kinetica
