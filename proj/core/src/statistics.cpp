// SPDX-License-Identifier: Apache-2.0
#include "kinetica/statistics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace kinetica {

namespace {

[[noreturn]] void domain_fail(const char* fn, double f) {
    std::ostringstream os;
    os << fn << ": argument " << f << " outside the statistics domain";
    throw DomainError(os.str());
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double entropy_density(double f, Statistics s) {
    switch (s) {
        case Statistics::MaxwellBoltzmann:
            if (f < 0.0) domain_fail("entropy_density", f);
            return xlogx(f) - f;
        case Statistics::BoseEinstein:
            if (f < 0.0) domain_fail("entropy_density", f);
            return xlogx(f) - xlogx(1.0 + f);
        case Statistics::FermiDirac:
            if (f < 0.0) domain_fail("entropy_density", f);
            if (f > 1.0) return std::numeric_limits<double>::infinity();
            return xlogx(f) + xlogx(1.0 - f);
        case Statistics::Wave:
            if (f <= 0.0) domain_fail("entropy_density", f);
            return -std::log(f);
        case Statistics::Linear:
            return 0.5 * f * f;
    }
    domain_fail("entropy_density", f);
}

double entropy_prime(double f, Statistics s) {
    switch (s) {
        case Statistics::MaxwellBoltzmann:
            if (f <= 0.0) domain_fail("entropy_prime", f);
            return std::log(f);
        case Statistics::BoseEinstein:
            if (f <= 0.0) domain_fail("entropy_prime", f);
            return std::log(f / (1.0 + f));
        case Statistics::FermiDirac:
            if (f <= 0.0 || f >= 1.0) domain_fail("entropy_prime", f);
            return std::log(f / (1.0 - f));
        case Statistics::Wave:
            if (f <= 0.0) domain_fail("entropy_prime", f);
            return -1.0 / f;
        case Statistics::Linear:
            return f;
    }
    domain_fail("entropy_prime", f);
}

double entropy_double_prime(double f, Statistics s) {
    switch (s) {
        case Statistics::MaxwellBoltzmann:
            if (f <= 0.0) domain_fail("entropy_double_prime", f);
            return 1.0 / f;
        case Statistics::BoseEinstein:
            if (f <= 0.0) domain_fail("entropy_double_prime", f);
            return 1.0 / (f * (1.0 + f));
        case Statistics::FermiDirac:
            if (f <= 0.0 || f >= 1.0) domain_fail("entropy_double_prime", f);
            return 1.0 / (f * (1.0 - f));
        case Statistics::Wave:
            if (f <= 0.0) domain_fail("entropy_double_prime", f);
            return 1.0 / (f * f);
        case Statistics::Linear:
            return 1.0;
    }
    domain_fail("entropy_double_prime", f);
}

double logarithmic_mean(double s, double t) {
    if (!(s > 0.0) || !(t > 0.0)) {
        std::ostringstream os;
        os << "logarithmic_mean: arguments must be positive, got (" << s << ", " << t << ")";
        throw DomainError(os.str());
    }
    const double hi = std::max(s, t);
    const double lo = std::min(s, t);
    const double u = (hi - lo) / hi;  // in [0, 1)
    // For nearly equal arguments the quotient (s-t)/log(s/t) loses all digits;
    // expand logmean = hi * (u/2 - u^2/... ) via log(1-u) = -u - u^2/2 - ...
    // Three terms keep the relative error below 1e-24 for u < 1e-8.
    if (u < 1e-8) {
        return hi * (1.0 - u * (0.5 + u / 12.0));
    }
    return (hi - lo) / (std::log(hi) - std::log(lo));
}

double psi_star(double r, PsiKind kind) {
    switch (kind) {
        case PsiKind::Quadratic: return 0.5 * r * r;
        case PsiKind::Cosh: return 4.0 * (std::cosh(0.5 * r) - 1.0);
    }
    return 0.0;
}

double psi_star_prime(double r, PsiKind kind) {
    switch (kind) {
        case PsiKind::Quadratic: return r;
        case PsiKind::Cosh: return 2.0 * std::sinh(0.5 * r);
    }
    return 0.0;
}

GammaRow gamma_row(Statistics s, int n) {
    if (n < 2) throw ConfigError("gamma_row: n must be >= 2");
    GammaRow row;
    row.n = n;
    switch (s) {
        case Statistics::BoseEinstein:
            row = {n, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0};
            break;
        case Statistics::MaxwellBoltzmann:
            row = {n, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0};
            break;
        case Statistics::FermiDirac:
            row = {n, 0.0, 1.0, 0.0, 1.0, 1.0, -1.0, 1.0, -1.0};
            break;
        case Statistics::Wave:
            row = {n, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0};
            break;
        case Statistics::Linear:
            row = {n, 0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0};
            break;
    }
    return row;
}

double permutation_bracket(const std::vector<double>& f, const std::vector<double>& f_prime,
                           const GammaRow& row, int k) {
    const int n = row.n;
    if (static_cast<int>(f.size()) != n || static_cast<int>(f_prime.size()) != n)
        throw DomainError("permutation_bracket: tuple size must equal row.n");
    if (k < 0 || k >= n) throw DomainError("permutation_bracket: shift k out of range");
    double gain = 1.0;
    double loss = 1.0;
    for (int i = 0; i < n; ++i) {
        const std::size_t j = static_cast<std::size_t>((i + k) % n);
        gain *= row.gamma(i, f_prime[j]) * row.gamma_bar(i, f[j]);
        loss *= row.gamma_bar(i, f_prime[j]) * row.gamma(i, f[j]);
    }
    return gain - loss;
}

double bracket_sum(const std::vector<double>& f, const std::vector<double>& f_prime,
                   const GammaRow& row) {
    double sum = 0.0;
    for (int k = 0; k < row.n; ++k) sum += permutation_bracket(f, f_prime, row, k);
    return sum;
}

WeightTriple weight_triple(Statistics s, PsiKind psi) {
    WeightTriple triple;
    triple.statistics = s;
    triple.psi = psi;
    if (is_quantum(s)) {
        triple.theta = psi == PsiKind::Cosh ? ThetaKind::QuantumCosh : ThetaKind::QuantumLogMean;
    } else if (s == Statistics::Wave) {
        if (psi != PsiKind::Quadratic)
            throw ConfigError("weight_triple: wave statistics pairs with the quadratic potential");
        triple.theta = ThetaKind::WaveProduct;
    } else {
        if (psi != PsiKind::Quadratic)
            throw ConfigError(
                "weight_triple: linear statistics pairs with the quadratic potential");
        triple.theta = ThetaKind::LinearUnit;
    }
    return triple;
}

double theta_weight(const std::vector<double>& f, const std::vector<double>& f_prime,
                    const WeightTriple& triple) {
    if (f.size() != f_prime.size() || f.empty())
        throw DomainError("theta_weight: tuples must be nonempty and equal-sized");
    const double alpha = quantum_alpha(triple.statistics);
    switch (triple.theta) {
        case ThetaKind::QuantumCosh: {
            double prod = 1.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                const double term = f[i] * f_prime[i] * (1.0 + alpha * f[i]) *
                                    (1.0 + alpha * f_prime[i]);
                if (term < 0.0) throw DomainError("theta_weight: negative occupancy product");
                prod *= term;
            }
            return std::sqrt(prod);
        }
        case ThetaKind::QuantumLogMean: {
            double gain = 1.0;
            double loss = 1.0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                gain *= f_prime[i] * (1.0 + alpha * f[i]);
                loss *= f[i] * (1.0 + alpha * f_prime[i]);
            }
            // The log-mean extends continuously by zero when a side vanishes
            // (underflowed tails of rapidly decaying states land here).
            if (gain <= 0.0 || loss <= 0.0) return 0.0;
            return logarithmic_mean(gain, loss);
        }
        case ThetaKind::WaveProduct: {
            double prod = 1.0;
            for (std::size_t i = 0; i < f.size(); ++i) prod *= f[i] * f_prime[i];
            return prod;
        }
        case ThetaKind::LinearUnit:
            return 1.0;
    }
    return 0.0;
}

double grad_free_entropy_prime(const std::vector<double>& f,
                               const std::vector<double>& f_prime, Statistics s) {
    if (f.size() != f_prime.size())
        throw DomainError("grad_free_entropy_prime: tuples must be equal-sized");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        sum += entropy_prime(f_prime[i], s) - entropy_prime(f[i], s);
    return sum;
}

namespace {

double compatibility_lhs(const std::vector<double>& f, const std::vector<double>& f_prime,
                         const WeightTriple& triple) {
    const double n = static_cast<double>(f.size());
    const double r = grad_free_entropy_prime(f, f_prime, triple.statistics);
    return n * psi_star_prime(r, triple.psi) * theta_weight(f, f_prime, triple);
}

}  // namespace

double compatibility_calibrate(const std::vector<double>& f,
                               const std::vector<double>& f_prime, const GammaRow& row,
                               const WeightTriple& triple) {
    const double L = compatibility_lhs(f, f_prime, triple);
    const double R = bracket_sum(f, f_prime, row);
    if (L == 0.0) {
        if (R != 0.0)
            throw DomainError("compatibility_calibrate: L vanishes but R does not; "
                              "row and weight triple are incompatible at this tuple");
        return 1.0;
    }
    return R / L;
}

CompatibilityResult compatibility_residual(const std::vector<double>& f,
                                           const std::vector<double>& f_prime,
                                           const GammaRow& row, const WeightTriple& triple,
                                           double kappa) {
    CompatibilityResult result;
    result.kappa = kappa;
    result.L = compatibility_lhs(f, f_prime, triple);
    result.R = bracket_sum(f, f_prime, row);
    result.residual = std::abs(result.R - kappa * result.L) /
                      (std::abs(result.R) + std::abs(result.L) + 1.0);
    return result;
}

double landau_theta(double f, double fstar, Statistics s) {
    switch (s) {
        case Statistics::MaxwellBoltzmann:
            return f * fstar;
        case Statistics::BoseEinstein:
            return f * fstar * (1.0 + f) * (1.0 + fstar);
        case Statistics::FermiDirac:
            return f * fstar * (1.0 - f) * (1.0 - fstar);
        case Statistics::Wave: {
            const double ff = f * fstar;
            return ff * ff;
        }
        case Statistics::Linear:
            return 1.0;
    }
    return 0.0;
}

}  // namespace kinetica
