// SPDX-License-Identifier: Apache-2.0
#include "kinetica/quadrature.hpp"

#include <cmath>

namespace kinetica {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw NumericalError("gauss_legendre: need at least one node");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // Newton iteration on P_n with the Chebyshev-root initial guess; roots are
    // symmetric, so only the lower half is solved.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // One final refinement pass keeps roots at machine precision.
                if (iter > 0) break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

GaussRule gauss_legendre_on(int n, double a, double b) {
    GaussRule base = gauss_legendre(n);
    GaussRule rule;
    rule.nodes.reserve(base.nodes.size());
    rule.weights.reserve(base.nodes.size());
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        rule.nodes.push_back(mid + half * base.nodes[i]);
        rule.weights.push_back(half * base.weights[i]);
    }
    return rule;
}

std::vector<BoxNode> box_rule(double halfwidth, int nodes_per_axis, int dim) {
    if (dim != 2 && dim != 3) throw NumericalError("box_rule: dim must be 2 or 3");
    const GaussRule axis = gauss_legendre_on(nodes_per_axis, -halfwidth, halfwidth);
    const std::size_t n = axis.nodes.size();
    std::vector<BoxNode> nodes;
    if (dim == 2) {
        nodes.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                nodes.push_back({vec2(axis.nodes[i], axis.nodes[j]),
                                 axis.weights[i] * axis.weights[j]});
            }
    } else {
        nodes.reserve(n * n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    nodes.push_back({vec3(axis.nodes[i], axis.nodes[j], axis.nodes[k]),
                                     axis.weights[i] * axis.weights[j] * axis.weights[k]});
                }
    }
    return nodes;
}

GaussRule log_panel_rule(double lo, double hi, int panels, int nodes_per_panel) {
    if (!(lo > 0.0) || !(hi > lo))
        throw NumericalError("log_panel_rule: need 0 < lo < hi");
    if (panels < 1 || nodes_per_panel < 1)
        throw NumericalError("log_panel_rule: need at least one panel and node");
    GaussRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(panels * nodes_per_panel));
    rule.weights.reserve(static_cast<std::size_t>(panels * nodes_per_panel));
    const double ratio = std::pow(hi / lo, 1.0 / panels);
    double a = lo;
    for (int pnl = 0; pnl < panels; ++pnl) {
        const double b = (pnl == panels - 1) ? hi : a * ratio;
        const GaussRule panel = gauss_legendre_on(nodes_per_panel, a, b);
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
        a = b;
    }
    return rule;
}

GaussRule uniform_circle_rule(int n) {
    if (n < 1) throw NumericalError("uniform_circle_rule: need at least one node");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.assign(static_cast<std::size_t>(n), 2.0 * M_PI / n);
    for (int i = 0; i < n; ++i)
        rule.nodes[static_cast<std::size_t>(i)] = 2.0 * M_PI * (i + 0.5) / n;
    return rule;
}

void orthogonal_basis(const Vec& k, Vec& e1, Vec& e2) {
    // Cross with the axis least aligned with k; stable for every unit k.
    const double ax = std::abs(k[0]);
    const double ay = std::abs(k[1]);
    const double az = std::abs(k[2]);
    Vec axis{};
    if (ax <= ay && ax <= az)
        axis = vec3(1.0, 0.0, 0.0);
    else if (ay <= az)
        axis = vec3(0.0, 1.0, 0.0);
    else
        axis = vec3(0.0, 0.0, 1.0);
    e1 = Vec{k[1] * axis[2] - k[2] * axis[1], k[2] * axis[0] - k[0] * axis[2],
             k[0] * axis[1] - k[1] * axis[0]};
    const double n1 = norm(e1);
    if (n1 == 0.0) throw NumericalError("orthogonal_basis: zero direction");
    e1 = scale(1.0 / n1, e1);
    e2 = Vec{k[1] * e1[2] - k[2] * e1[1], k[2] * e1[0] - k[0] * e1[2],
             k[0] * e1[1] - k[1] * e1[0]};
    const double n2 = norm(e2);
    e2 = scale(1.0 / n2, e2);
}

}  // namespace kinetica
