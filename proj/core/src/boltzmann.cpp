// SPDX-License-Identifier: Apache-2.0
#include "kinetica/boltzmann.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kinetica/rng.hpp"
#include "kinetica/threading.hpp"

namespace kinetica {

// ---------------------------------------------------------------------------
// Test functions.
// ---------------------------------------------------------------------------

TestFunction phi_one() {
    TestFunction phi;
    phi.name = "one";
    phi.value = [](const Vec&) { return 1.0; };
    phi.gradient = [](const Vec&) { return Vec{}; };
    phi.hessian = [](const Vec&) { return Mat::zero(); };
    return phi;
}

TestFunction phi_momentum(int axis) {
    TestFunction phi;
    phi.name = "momentum";
    phi.value = [axis](const Vec& p) { return p[static_cast<std::size_t>(axis)]; };
    phi.gradient = [axis](const Vec&) {
        Vec g{};
        g[static_cast<std::size_t>(axis)] = 1.0;
        return g;
    };
    phi.hessian = [](const Vec&) { return Mat::zero(); };
    return phi;
}

TestFunction phi_energy(const ModelSpec& model) {
    TestFunction phi;
    phi.name = "energy";
    phi.value = [model](const Vec& p) { return energy(p, model); };
    phi.gradient = [model](const Vec& p) { return velocity(p, model); };
    if (model.relativistic()) {
        phi.hessian = [model](const Vec& p) {
            const double c = model.constants.c;
            const double p0 = p_zero(p, model.constants);
            Mat h = mat_scale(c / p0, Mat::identity(3));
            const Mat pp = outer(p, p);
            for (std::size_t i = 0; i < 9; ++i) h.a[i] -= c * pp.a[i] / (p0 * p0 * p0);
            return h;
        };
    } else {
        phi.hessian = [model](const Vec&) {
            return mat_scale(1.0 / model.constants.m, Mat::identity(3));
        };
    }
    return phi;
}

TestFunction phi_gaussian(const Vec& center, double width) {
    TestFunction phi;
    phi.name = "gaussian";
    const double w2 = width * width;
    phi.value = [center, w2](const Vec& p) {
        return std::exp(-0.5 * norm2(sub(p, center)) / w2);
    };
    phi.gradient = [center, w2](const Vec& p) {
        const Vec q = sub(p, center);
        const double f = std::exp(-0.5 * norm2(q) / w2);
        return scale(-f / w2, q);
    };
    phi.hessian = [center, w2](const Vec& p) {
        const Vec q = sub(p, center);
        const double f = std::exp(-0.5 * norm2(q) / w2);
        Mat h = mat_scale(f / (w2 * w2), outer(q, q));
        for (int i = 0; i < 3; ++i) h(i, i) -= f / w2;
        return h;
    };
    return phi;
}

TestFunction phi_entropy_prime(const Distribution& f, Statistics s) {
    TestFunction phi;
    phi.name = "entropy-prime";
    phi.value = [f, s](const Vec& p) { return entropy_prime(f.value(p), s); };
    phi.gradient = [f, s](const Vec& p) {
        return scale(entropy_double_prime(f.value(p), s), f.gradient(p));
    };
    // No hessian: it would need second derivatives of f, which the grazing
    // lemma checks never request for this family.
    return phi;
}

double discrete_gradient(const TestFunction& phi, const CollisionEvent& event) {
    return phi.value(event.p_out) + phi.value(event.pstar_out) - phi.value(event.p) -
           phi.value(event.pstar);
}

double collision_integrand(double f, double fstar, double fprime, double fstarprime,
                           const GammaRow& row) {
    return bracket_sum({f, fstar}, {fprime, fstarprime}, row);
}

// ---------------------------------------------------------------------------
// Shared event machinery.
// ---------------------------------------------------------------------------

namespace {

/// Everything fixed about an incoming pair; emits events per (theta, gamma).
struct PairContext {
    bool degenerate = true;
    bool relativistic = false;
    Vec p{}, pstar{}, center{}, k_hat{}, psum{};
    double sigma_pref = 0.0;   ///< sigma(r) or v_c * sigma(g)
    double half_r = 0.0;       ///< r/2 or g/2
    double inv_sqrt_s = 0.0;   ///< relativistic only
    double e_half = 0.0;       ///< (p0 + p0*)/2
    double p0 = 0.0, p0star = 0.0;
    Mat lambda_tilde{};
    const ModelSpec* model = nullptr;

    void init(const Vec& a, const Vec& b, const ModelSpec& m, const SigmaFamily& sigma) {
        model = &m;
        p = a;
        pstar = b;
        relativistic = m.relativistic();
        center = scale(0.5, add(a, b));
        psum = add(a, b);
        if (relativistic) {
            const LorentzFrame frame = lorentz_frame(a, b, m.constants, m.dim);
            degenerate = !frame.k_defined;
            if (degenerate) return;
            k_hat = frame.k_hat;
            half_r = 0.5 * frame.g;
            inv_sqrt_s = 1.0 / std::sqrt(frame.s);
            lambda_tilde = frame.lambda_tilde;
            p0 = p_zero(a, m.constants);
            p0star = p_zero(b, m.constants);
            e_half = 0.5 * (p0 + p0star);
            sigma_pref = moller_velocity(a, b, m.constants) * sigma(frame.g);
        } else {
            const Vec rel = sub(a, b);
            const double r = norm(rel);
            degenerate = !(r > 1e-14 * (norm(a) + norm(b) + 1.0));
            if (degenerate) return;
            k_hat = scale(1.0 / r, rel);
            half_r = 0.5 * r;
            sigma_pref = sigma(r);
        }
    }

    /// Builds the event at deviation angle theta (in [0, pi/2]) and in-plane
    /// unit direction gamma orthogonal to k_hat.
    CollisionEvent emit(double cos_t, double sin_t, const Vec& gamma) const {
        CollisionEvent ev;
        ev.p = p;
        ev.pstar = pstar;
        ev.model = *model;
        ev.theta = std::acos(std::min(1.0, cos_t));
        const Vec omega = axpy(sin_t, gamma, scale(cos_t, k_hat));
        ev.omega = omega;
        if (relativistic) {
            const Vec shift = scale(half_r, matvec(lambda_tilde, omega));
            ev.p_out = add(center, shift);
            ev.pstar_out = sub(center, shift);
            const double e_shift = half_r * dot(psum, omega) * inv_sqrt_s;
            ev.p0 = p0;
            ev.p0star = p0star;
            ev.p0_out = e_half + e_shift;
            ev.p0star_out = e_half - e_shift;
        } else {
            ev.p_out = axpy(half_r, omega, center);
            ev.pstar_out = axpy(-half_r, omega, center);
        }
        return ev;
    }
};

/// Precomputed angular discretization: theta nodes (weights including beta)
/// plus the transverse directions recipe for the active dimension.
struct OmegaRule {
    std::vector<double> cos_t, sin_t, w_theta;
    GaussRule circle;  ///< d = 3 only
    int dim = 2;
};

OmegaRule build_omega_rule(const AngularProfile& profile, const QuadratureSpec& quad,
                           int dim) {
    OmegaRule rule;
    rule.dim = dim;
    const AngularRule theta_rule =
        angular_rule(profile, quad.theta_panels, quad.theta_nodes);
    rule.cos_t.reserve(theta_rule.theta.size());
    rule.sin_t.reserve(theta_rule.theta.size());
    for (double t : theta_rule.theta) {
        rule.cos_t.push_back(std::cos(t));
        rule.sin_t.push_back(std::sin(t));
    }
    rule.w_theta = theta_rule.weight;
    if (dim == 3) rule.circle = uniform_circle_rule(quad.circle_nodes);
    return rule;
}

/// Applies fn(event, weight) over the full omega rule of one pair, where
/// weight = w_theta (beta included) * w_gamma * sigma prefactor.
template <typename Fn>
void for_each_omega(const PairContext& pair, const OmegaRule& rule, Fn&& fn) {
    if (pair.degenerate || pair.sigma_pref == 0.0) return;
    if (rule.dim == 2) {
        const Vec gamma = rot90(pair.k_hat);
        const Vec gneg = scale(-1.0, gamma);
        for (std::size_t q = 0; q < rule.w_theta.size(); ++q) {
            const double w = rule.w_theta[q] * pair.sigma_pref;
            if (w == 0.0) continue;
            fn(pair.emit(rule.cos_t[q], rule.sin_t[q], gamma), w);
            fn(pair.emit(rule.cos_t[q], rule.sin_t[q], gneg), w);
        }
    } else {
        Vec e1{}, e2{};
        orthogonal_basis(pair.k_hat, e1, e2);
        for (std::size_t q = 0; q < rule.w_theta.size(); ++q) {
            const double wt = rule.w_theta[q] * pair.sigma_pref;
            if (wt == 0.0) continue;
            for (std::size_t a = 0; a < rule.circle.nodes.size(); ++a) {
                const double ang = rule.circle.nodes[a];
                const Vec gamma = axpy(std::sin(ang), e2, scale(std::cos(ang), e1));
                fn(pair.emit(rule.cos_t[q], rule.sin_t[q], gamma),
                   wt * rule.circle.weights[a]);
            }
        }
    }
}

/// Deterministic driver: iterates all unordered box-node pairs (diagonal
/// skipped; its events are identity collisions with zero bracket) and the
/// omega rule, adding per-event contributions into `n_acc` accumulators.
/// Reduction runs over fixed chunks, so results are thread-count independent.
void sum_over_pairs(
    const ModelSpec& model, const KernelSpec& kernel, const QuadratureSpec& quad, int n_acc,
    const std::function<void(const CollisionEvent&, double, double*)>& per_event,
    double* out) {
    const std::vector<BoxNode> box = box_rule(quad.box_halfwidth, quad.box_nodes, model.dim);
    const OmegaRule omega = build_omega_rule(kernel.angular, quad, model.dim);
    const std::size_t n = box.size();
    const std::size_t n_pairs = n * (n - 1) / 2;

    std::vector<double> chunk_acc(static_cast<std::size_t>(kReductionChunks * n_acc), 0.0);
    parallel_for_chunked(n_pairs, [&](int chunk, std::size_t begin, std::size_t end) {
        double* acc = &chunk_acc[static_cast<std::size_t>(chunk * n_acc)];
        // Unrank the first pair index of the chunk: begin -> (i, j), i < j;
        // subsequent pairs advance (i, j) in lexicographic order.
        std::size_t i = 0;
        std::size_t row_start = 0;
        while (i + 1 < n && row_start + (n - i - 1) <= begin) {
            row_start += n - i - 1;
            ++i;
        }
        std::size_t j = i + 1 + (begin - row_start);
        PairContext pair;
        for (std::size_t t = begin; t < end; ++t) {
            pair.init(box[i].p, box[j].p, model, kernel.sigma);
            // Factor 2: the double momentum integral runs over ordered pairs,
            // and every per-event contribution below is pair-symmetric.
            const double w_pair = 2.0 * box[i].w * box[j].w;
            for_each_omega(pair, omega, [&](const CollisionEvent& ev, double w_omega) {
                per_event(ev, w_pair * w_omega, acc);
            });
            if (++j == n) {
                ++i;
                j = i + 1;
            }
        }
    });
    for (int k = 0; k < n_acc; ++k) out[k] = 0.0;
    for (int chunk = 0; chunk < kReductionChunks; ++chunk)
        for (int k = 0; k < n_acc; ++k)
            out[k] += chunk_acc[static_cast<std::size_t>(chunk * n_acc + k)];
}

/// Inverse-CDF sampler for theta with density proportional to beta.
struct ThetaSampler {
    bool power_law = false;
    double nu = 1.0, lo = 0.0, hi = 0.0;
    double mass = 0.0;  ///< integral of beta over the support
    std::vector<double> cdf, grid;

    static ThetaSampler build(const AngularProfile& profile) {
        ThetaSampler s;
        s.lo = profile.support_lo();
        s.hi = profile.support_hi();
        if (profile.family == AngularProfile::Family::SingularPower) {
            s.power_law = true;
            s.nu = profile.nu;
            // mass = int K theta^{-1-nu} = (K/nu)(lo^-nu - hi^-nu), with the
            // profile's normalization already inside beta().
            const double beta_lo = profile.beta(s.lo * 1.0000000001);
            // K_eff from beta(lo): beta = K_eff * theta^{-1-nu}
            const double k_eff = beta_lo * std::pow(s.lo * 1.0000000001, 1.0 + profile.nu);
            s.mass = k_eff / profile.nu *
                     (std::pow(s.lo, -profile.nu) - std::pow(s.hi, -profile.nu));
        } else {
            // Tabulated CDF on a fine uniform grid (trapezoid); the mollifier
            // is smooth, so 2048 cells reach ~1e-7 sampling bias, far below
            // the Monte Carlo noise these paths operate at.
            const int cells = 2048;
            s.grid.resize(cells + 1);
            s.cdf.resize(cells + 1);
            double acc = 0.0;
            double prev = profile.beta(s.lo);
            s.grid[0] = s.lo;
            s.cdf[0] = 0.0;
            for (int i = 1; i <= cells; ++i) {
                const double t = s.lo + (s.hi - s.lo) * i / cells;
                const double cur = profile.beta(t);
                acc += 0.5 * (prev + cur) * (s.hi - s.lo) / cells;
                prev = cur;
                s.grid[static_cast<std::size_t>(i)] = t;
                s.cdf[static_cast<std::size_t>(i)] = acc;
            }
            s.mass = acc;
            for (auto& c : s.cdf) c /= acc;
        }
        return s;
    }

    double sample(double u) const {
        if (power_law) {
            const double a = std::pow(lo, -nu);
            const double b = std::pow(hi, -nu);
            return std::pow(a - u * (a - b), -1.0 / nu);
        }
        // Binary search the tabulated CDF, then interpolate linearly.
        std::size_t low = 0, high = cdf.size() - 1;
        while (high - low > 1) {
            const std::size_t mid = (low + high) / 2;
            (cdf[mid] <= u ? low : high) = mid;
        }
        const double span = cdf[high] - cdf[low];
        const double frac = span > 0.0 ? (u - cdf[low]) / span : 0.5;
        return grid[low] + frac * (grid[high] - grid[low]);
    }
};

Vec sample_gamma(const Vec& k_hat, int dim, Rng& rng) {
    if (dim == 2) return rng.uniform() < 0.5 ? rot90(k_hat) : scale(-1.0, rot90(k_hat));
    Vec e1{}, e2{};
    orthogonal_basis(k_hat, e1, e2);
    const double ang = rng.uniform(0.0, 2.0 * M_PI);
    return axpy(std::sin(ang), e2, scale(std::cos(ang), e1));
}

/// Monte Carlo driver over (p, p*, theta, gamma) events; fills `value` and
/// `stderr_` per accumulator. Chunked streams keep it deterministic.
void mc_over_pairs(const ModelSpec& model, const KernelSpec& kernel,
                   const QuadratureSpec& quad, int n_acc,
                   const std::function<void(const CollisionEvent&, double, double*)>& per_event,
                   double* value, double* stderr_out) {
    const double L = quad.box_halfwidth;
    const ThetaSampler theta = ThetaSampler::build(kernel.angular);
    const double gamma_measure = model.dim == 2 ? 2.0 : 2.0 * M_PI;
    double volume = 1.0;
    for (int a = 0; a < model.dim; ++a) volume *= 2.0 * L;
    const double measure = volume * volume * theta.mass * gamma_measure;
    const std::uint64_t events = quad.mc_events;

    std::vector<double> chunk_sum(static_cast<std::size_t>(kReductionChunks * n_acc), 0.0);
    std::vector<double> chunk_sq(static_cast<std::size_t>(kReductionChunks * n_acc), 0.0);
    parallel_for_chunked(events, [&](int chunk, std::size_t begin, std::size_t end) {
        Rng rng(quad.seed, static_cast<std::uint64_t>(chunk) + 0x100);
        double* sums = &chunk_sum[static_cast<std::size_t>(chunk * n_acc)];
        double* sqs = &chunk_sq[static_cast<std::size_t>(chunk * n_acc)];
        std::vector<double> local(static_cast<std::size_t>(n_acc));
        PairContext pair;
        for (std::size_t e = begin; e < end; ++e) {
            Vec p{}, pstar{};
            for (int a = 0; a < model.dim; ++a) {
                p[static_cast<std::size_t>(a)] = rng.uniform(-L, L);
                pstar[static_cast<std::size_t>(a)] = rng.uniform(-L, L);
            }
            const double t = theta.sample(rng.uniform());
            pair.init(p, pstar, model, kernel.sigma);
            if (pair.degenerate) continue;
            const Vec gamma = sample_gamma(pair.k_hat, model.dim, rng);
            const CollisionEvent ev = pair.emit(std::cos(t), std::sin(t), gamma);
            std::fill(local.begin(), local.end(), 0.0);
            per_event(ev, pair.sigma_pref, local.data());
            for (int k = 0; k < n_acc; ++k) {
                sums[k] += local[static_cast<std::size_t>(k)];
                sqs[k] += local[static_cast<std::size_t>(k)] * local[static_cast<std::size_t>(k)];
            }
        }
    });
    for (int k = 0; k < n_acc; ++k) {
        double sum = 0.0, sq = 0.0;
        for (int chunk = 0; chunk < kReductionChunks; ++chunk) {
            sum += chunk_sum[static_cast<std::size_t>(chunk * n_acc + k)];
            sq += chunk_sq[static_cast<std::size_t>(chunk * n_acc + k)];
        }
        const double n = static_cast<double>(events);
        const double mean = sum / n;
        const double var = std::max(0.0, sq / n - mean * mean);
        value[k] = measure * mean;
        stderr_out[k] = measure * std::sqrt(var / n);
    }
}

/// f at the four legs of an event, plus the bracket sum.
struct LegValues {
    double f, fstar, fprime, fstarprime;
};

LegValues leg_values(const Distribution& f, const CollisionEvent& ev) {
    return {f.value(ev.p), f.value(ev.pstar), f.value(ev.p_out), f.value(ev.pstar_out)};
}

double fermi_guard(double v, Statistics s) {
    if (s == Statistics::FermiDirac && (v < 0.0 || v > 1.0))
        throw DomainError("collision integrand: Fermi occupation outside [0, 1]");
    return v;
}

double bracket_of(const LegValues& lv, const GammaRow& row, Statistics s) {
    fermi_guard(lv.f, s);
    fermi_guard(lv.fstar, s);
    fermi_guard(lv.fprime, s);
    fermi_guard(lv.fstarprime, s);
    // Inline n = 2 bracket sum; the general helper would re-allocate vectors.
    double q = 0.0;
    for (int k = 0; k < 2; ++k) {
        const double fp0 = k == 0 ? lv.fprime : lv.fstarprime;
        const double fp1 = k == 0 ? lv.fstarprime : lv.fprime;
        const double fu0 = k == 0 ? lv.f : lv.fstar;
        const double fu1 = k == 0 ? lv.fstar : lv.f;
        q += row.gamma(0, fp0) * row.gamma_bar(0, fu0) * row.gamma(1, fp1) *
                 row.gamma_bar(1, fu1) -
             row.gamma_bar(0, fp0) * row.gamma(0, fu0) * row.gamma_bar(1, fp1) *
                 row.gamma(1, fu1);
    }
    return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// Strong form.
// ---------------------------------------------------------------------------

double evaluate_Q(const Distribution& f, const Vec& p, const ModelSpec& model,
                  const KernelSpec& kernel, const QuadratureSpec& quad) {
    if (model.dim == 3 || quad.force_mc) return evaluate_Q_mc(f, p, model, kernel, quad).value;
    const GammaRow row = gamma_row(model.statistics);
    const double mult = model.integrand_multiplicity();
    const std::vector<BoxNode> box = box_rule(quad.box_halfwidth, quad.box_nodes, model.dim);
    const OmegaRule omega = build_omega_rule(kernel.angular, quad, model.dim);

    std::vector<double> chunk_acc(static_cast<std::size_t>(kReductionChunks), 0.0);
    parallel_for_chunked(box.size(), [&](int chunk, std::size_t begin, std::size_t end) {
        PairContext pair;
        double acc = 0.0;
        for (std::size_t b = begin; b < end; ++b) {
            pair.init(p, box[b].p, model, kernel.sigma);
            const double w_star = box[b].w;
            for_each_omega(pair, omega, [&](const CollisionEvent& ev, double w) {
                acc += w_star * w * bracket_of(leg_values(f, ev), row, model.statistics);
            });
        }
        chunk_acc[static_cast<std::size_t>(chunk)] += acc;
    });
    double total = 0.0;
    for (double a : chunk_acc) total += a;
    return mult * total;
}

McEstimate evaluate_Q_mc(const Distribution& f, const Vec& p, const ModelSpec& model,
                         const KernelSpec& kernel, const QuadratureSpec& quad) {
    const GammaRow row = gamma_row(model.statistics);
    const double mult = model.integrand_multiplicity();
    const double L = quad.box_halfwidth;
    const ThetaSampler theta = ThetaSampler::build(kernel.angular);
    const double gamma_measure = model.dim == 2 ? 2.0 : 2.0 * M_PI;
    double volume = 1.0;
    for (int a = 0; a < model.dim; ++a) volume *= 2.0 * L;
    const double measure = volume * theta.mass * gamma_measure;

    std::vector<double> chunk_sum(static_cast<std::size_t>(kReductionChunks), 0.0);
    std::vector<double> chunk_sq(static_cast<std::size_t>(kReductionChunks), 0.0);
    parallel_for_chunked(quad.mc_events, [&](int chunk, std::size_t begin, std::size_t end) {
        Rng rng(quad.seed, static_cast<std::uint64_t>(chunk) + 0x200);
        PairContext pair;
        double sum = 0.0, sq = 0.0;
        for (std::size_t e = begin; e < end; ++e) {
            Vec pstar{};
            for (int a = 0; a < model.dim; ++a)
                pstar[static_cast<std::size_t>(a)] = rng.uniform(-L, L);
            const double t = theta.sample(rng.uniform());
            pair.init(p, pstar, model, kernel.sigma);
            if (pair.degenerate) continue;
            const Vec gamma = sample_gamma(pair.k_hat, model.dim, rng);
            const CollisionEvent ev = pair.emit(std::cos(t), std::sin(t), gamma);
            const double v =
                pair.sigma_pref * bracket_of(leg_values(f, ev), row, model.statistics);
            sum += v;
            sq += v * v;
        }
        chunk_sum[static_cast<std::size_t>(chunk)] = sum;
        chunk_sq[static_cast<std::size_t>(chunk)] = sq;
    });
    double sum = 0.0, sq = 0.0;
    for (int chunk = 0; chunk < kReductionChunks; ++chunk) {
        sum += chunk_sum[static_cast<std::size_t>(chunk)];
        sq += chunk_sq[static_cast<std::size_t>(chunk)];
    }
    const double n = static_cast<double>(quad.mc_events);
    const double mean = sum / n;
    const double var = std::max(0.0, sq / n - mean * mean);
    McEstimate est;
    est.value = mult * measure * mean;
    est.stderr_ = mult * measure * std::sqrt(var / n);
    return est;
}

// ---------------------------------------------------------------------------
// Weak forms.
// ---------------------------------------------------------------------------

WeakFormBatch weak_form_batch_custom(const Distribution& f,
                                     const std::vector<TestFunction>& phis,
                                     const ModelSpec& model, const KernelSpec& kernel,
                                     const QuadratureSpec& quad, const GammaRow& row,
                                     double multiplicity) {
    const std::size_t n_phi = phis.size();
    const int n_acc = static_cast<int>(2 * n_phi);  // value + abs scale per phi
    std::vector<double> out(static_cast<std::size_t>(n_acc), 0.0);
    auto per_event = [&](const CollisionEvent& ev, double w, double* acc) {
        const double bracket = bracket_of(leg_values(f, ev), row, model.statistics);
        if (bracket == 0.0) return;
        const double core = w * bracket;
        for (std::size_t k = 0; k < n_phi; ++k) {
            const double gb = discrete_gradient(phis[k], ev);
            acc[2 * k] += core * gb;
            acc[2 * k + 1] += std::abs(core * gb);
        }
    };
    WeakFormBatch batch;
    batch.values.resize(n_phi);
    batch.abs_scale.resize(n_phi);
    if (model.dim == 3 || quad.force_mc) {
        std::vector<double> err(static_cast<std::size_t>(n_acc), 0.0);
        mc_over_pairs(model, kernel, quad, n_acc, per_event, out.data(), err.data());
    } else {
        sum_over_pairs(model, kernel, quad, n_acc, per_event, out.data());
    }
    for (std::size_t k = 0; k < n_phi; ++k) {
        batch.values[k] = -0.25 * multiplicity * out[2 * k];
        batch.abs_scale[k] = 0.25 * multiplicity * out[2 * k + 1];
    }
    return batch;
}

WeakFormBatch weak_form_batch(const Distribution& f, const std::vector<TestFunction>& phis,
                              const ModelSpec& model, const KernelSpec& kernel,
                              const QuadratureSpec& quad) {
    return weak_form_batch_custom(f, phis, model, kernel, quad, gamma_row(model.statistics),
                                  model.integrand_multiplicity());
}

double weak_form(const Distribution& f, const TestFunction& phi, const ModelSpec& model,
                 const KernelSpec& kernel, const QuadratureSpec& quad) {
    return weak_form_batch(f, {phi}, model, kernel, quad).values[0];
}

McEstimate weak_form_mc(const Distribution& f, const TestFunction& phi, const ModelSpec& model,
                        const KernelSpec& kernel, const QuadratureSpec& quad) {
    const GammaRow row = gamma_row(model.statistics);
    const double mult = model.integrand_multiplicity();
    auto per_event = [&](const CollisionEvent& ev, double w, double* acc) {
        const double bracket = bracket_of(leg_values(f, ev), row, model.statistics);
        if (bracket == 0.0) return;
        acc[0] += w * bracket * discrete_gradient(phi, ev);
    };
    double value = 0.0, err = 0.0;
    mc_over_pairs(model, kernel, quad, 1, per_event, &value, &err);
    return {-0.25 * mult * value, 0.25 * mult * err};
}

double entropy_dissipation(const Distribution& f, const ModelSpec& model,
                           const KernelSpec& kernel, const QuadratureSpec& quad) {
    // Each event contributes (mult/4) w B (q0+q1) grad-bar h'(f) >= 0 up to
    // roundoff, so the sum is a nonnegative quadrature of a nonnegative
    // integrand rather than a difference of large numbers.
    return -weak_form(f, phi_entropy_prime(f, model.statistics), model, kernel, quad);
}

std::function<double(const Vec&)> generalized_dissipation_derivative(
    const Distribution& f, const TestFunction& xi, const ModelSpec& model,
    const KernelSpec& kernel, const QuadratureSpec& quad, PsiKind psi) {
    const WeightTriple triple = weight_triple(model.statistics, psi);
    return [=](const Vec& p) {
        const std::vector<BoxNode> box =
            box_rule(quad.box_halfwidth, quad.box_nodes, model.dim);
        const OmegaRule omega = build_omega_rule(kernel.angular, quad, model.dim);

        std::vector<double> chunk_acc(static_cast<std::size_t>(kReductionChunks), 0.0);
        parallel_for_chunked(box.size(), [&](int chunk, std::size_t begin, std::size_t end) {
            PairContext pair;
            double acc = 0.0;
            for (std::size_t b = begin; b < end; ++b) {
                const double w_star = box[b].w;
                // T1: p as first incoming leg; T2: p as second incoming leg.
                for (int leg = 0; leg < 2; ++leg) {
                    if (leg == 0)
                        pair.init(p, box[b].p, model, kernel.sigma);
                    else
                        pair.init(box[b].p, p, model, kernel.sigma);
                    for_each_omega(pair, omega, [&](const CollisionEvent& ev, double w) {
                        const LegValues lv = leg_values(f, ev);
                        const double dxi = discrete_gradient(xi, ev);
                        // Incoming term of the divergence realization.
                        const double incoming =
                            theta_weight({lv.f, lv.fstar}, {lv.fprime, lv.fstarprime},
                                         triple) *
                            psi_star_prime(dxi, triple.psi);
                        // Swapped-role term: the collision involution maps
                        // outgoing-leg contributions onto the same events with
                        // primed/unprimed roles exchanged (the kernel measure
                        // is involution-invariant, so no extra factor).
                        const double swapped =
                            theta_weight({lv.fprime, lv.fstarprime}, {lv.f, lv.fstar},
                                         triple) *
                            psi_star_prime(-dxi, triple.psi);
                        acc += w_star * w * (incoming - swapped);
                    });
                }
            }
            chunk_acc[static_cast<std::size_t>(chunk)] += acc;
        });
        double total = 0.0;
        for (double a : chunk_acc) total += a;
        return total / (2.0 * 2.0);  // 1/(2n), n = 2
    };
}

}  // namespace kinetica
