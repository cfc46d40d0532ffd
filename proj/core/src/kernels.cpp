// SPDX-License-Identifier: Apache-2.0
#include "kinetica/kernels.hpp"

#include <cmath>

namespace kinetica {

namespace {

// Relative cutoff below which the smooth mollifier profile is treated as
// zero: exp(-1/(x(1-x))) < 1e-40 for x < 0.011, so truncating the quadrature
// support there changes nothing at double precision.
constexpr double kBumpCut = 0.011;

/// Unscaled profile value at its native argument in [0, pi/2].
double base_beta(const AngularProfile& profile, double t) {
    switch (profile.family) {
        case AngularProfile::Family::SingularPower: {
            if (t < profile.theta0 || t > M_PI / 2.0) return 0.0;
            return profile.k_norm * std::pow(t, -1.0 - profile.nu);
        }
        case AngularProfile::Family::Bump: {
            const double x = 2.0 * t / M_PI;
            if (x <= 0.0 || x >= 1.0) return 0.0;
            return profile.k_norm * std::exp(-1.0 / (x * (1.0 - x)));
        }
    }
    return 0.0;
}

}  // namespace

double AngularProfile::support_lo() const {
    if (family == Family::SingularPower) return epsilon * theta0 / M_PI;
    return epsilon * 0.5 * kBumpCut;
}

double AngularProfile::support_hi() const { return 0.5 * epsilon; }

double AngularProfile::beta(double theta) const {
    if (theta < support_lo() || theta > support_hi()) return 0.0;
    const double scale3 = M_PI / epsilon;
    return scale3 * scale3 * scale3 * base_beta(*this, M_PI * theta / epsilon);
}

double AngularProfile::b(double theta) const {
    const double v = beta(theta);
    if (v == 0.0) return 0.0;
    if (dim == 2) return v;
    return v / std::sin(theta);
}

double angular_moment_target(int dim) {
    // 8 (d-1) / |S^{d-2}|, with |S^0| = 2 and |S^1| = 2 pi.
    if (dim == 2) return 4.0;
    if (dim == 3) return 8.0 / M_PI;
    throw ConfigError("angular_moment_target: dim must be 2 or 3");
}

namespace {

double theta_squared_moment(const AngularProfile& profile) {
    // Composite log-panel Gauss rule resolves the power endpoint; the moment
    // integrand beta * theta^2 is bounded, so 32 panels x 8 nodes give full
    // double precision for both families.
    const GaussRule rule = log_panel_rule(profile.support_lo(), profile.support_hi(), 32, 8);
    double m = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double t = rule.nodes[q];
        m += rule.weights[q] * profile.beta(t) * t * t;
    }
    return m;
}

}  // namespace

AngularProfile angular_normalize(AngularProfile profile, int dim) {
    profile.dim = dim;
    const double moment = theta_squared_moment(profile);
    if (!(moment > 0.0) || !std::isfinite(moment))
        throw NumericalError("angular_normalize: theta^2-moment is not finite and positive");
    profile.k_norm *= angular_moment_target(dim) / moment;
    return profile;
}

AngularProfile rescale_angular(AngularProfile profile, double epsilon) {
    if (!(epsilon > 0.0) || epsilon > M_PI)
        throw ConfigError("rescale_angular: epsilon must lie in (0, pi]");
    profile.epsilon = epsilon;
    return profile;
}

double SigmaFamily::operator()(double r) const {
    switch (kind) {
        case Kind::Constant: return sigma0;
        case Kind::PowerLaw: return sigma0 * std::pow(r, gamma_exp);
    }
    return 0.0;
}

KernelSpec KernelSpec::standard(int dim) {
    KernelSpec spec;
    AngularProfile profile;
    profile.family = AngularProfile::Family::SingularPower;
    profile.nu = 1.0;
    profile.theta0 = 1e-3;
    profile.epsilon = 1.0;
    spec.angular = angular_normalize(profile, dim);
    return spec;
}

double kernel_classical(const Vec& p, const Vec& pstar, const Vec& omega,
                        const KernelSpec& spec, const ModelSpec& model) {
    (void)model;
    const Vec rel = sub(p, pstar);
    const double r = norm(rel);
    if (!(r > 0.0)) return 0.0;
    const double cos_t = std::abs(dot(omega, rel)) / r;
    const double theta = std::acos(std::min(1.0, cos_t));
    return spec.sigma(r) * spec.angular.b(theta);
}

double moller_velocity(const Vec& p, const Vec& pstar, const PhysicalConstants& constants) {
    const LorentzFrame frame = lorentz_frame(p, pstar, constants, 3);
    return constants.c * frame.g * std::sqrt(frame.s) /
           (p_zero(p, constants) * p_zero(pstar, constants));
}

double kernel_relativistic(const Vec& p, const Vec& pstar, const Vec& omega,
                           const KernelSpec& spec, const ModelSpec& model) {
    const LorentzFrame frame = lorentz_frame(p, pstar, model.constants, model.dim);
    if (!frame.k_defined) return 0.0;
    const double cos_t = std::abs(dot(omega, frame.k_hat));
    const double theta = std::acos(std::min(1.0, cos_t));
    const double v_c = model.constants.c * frame.g * std::sqrt(frame.s) /
                       (p_zero(p, model.constants) * p_zero(pstar, model.constants));
    return v_c * spec.sigma(frame.g) * spec.angular.b(theta);
}

double dirac_reduced_classical(const Vec& p, const Vec& pstar, const Vec& omega,
                               const KernelSpec& spec, const ModelSpec& model) {
    const double b_val = kernel_classical(p, pstar, omega, spec, model);
    if (b_val == 0.0) return 0.0;
    const double r = norm(sub(p, pstar));
    return std::pow(2.0, model.dim) * std::pow(r, 2.0 - model.dim) * b_val;
}

double dirac_reduced_relativistic(const CollisionEvent& event, const KernelSpec& spec) {
    const ModelSpec& model = event.model;
    const double b_val =
        kernel_relativistic(event.p, event.pstar, event.omega, spec, model);
    if (b_val == 0.0) return 0.0;
    const LorentzFrame frame =
        lorentz_frame(event.p, event.pstar, model.constants, model.dim);
    return std::pow(2.0, model.dim - 2) * std::sqrt(frame.s) *
           std::pow(frame.g, 2.0 - model.dim) / (event.p0_out * event.p0star_out) * b_val;
}

double kernel_landau(const Vec& p, const Vec& pstar, const KernelSpec& spec,
                     const ModelSpec& model) {
    if (model.relativistic()) {
        const LorentzFrame frame = lorentz_frame(p, pstar, model.constants, model.dim);
        const double v_c = model.constants.c * frame.g * std::sqrt(frame.s) /
                           (p_zero(p, model.constants) * p_zero(pstar, model.constants));
        return v_c * spec.sigma(frame.g) * frame.g * frame.g;
    }
    const double r = norm(sub(p, pstar));
    return spec.sigma(r) * r * r;
}

AngularRule angular_rule(const AngularProfile& profile, int panels, int nodes_per_panel) {
    const GaussRule rule =
        log_panel_rule(profile.support_lo(), profile.support_hi(), panels, nodes_per_panel);
    AngularRule out;
    out.theta.reserve(rule.nodes.size());
    out.weight.reserve(rule.nodes.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        out.theta.push_back(rule.nodes[q]);
        out.weight.push_back(rule.weights[q] * profile.beta(rule.nodes[q]));
    }
    return out;
}

}  // namespace kinetica
