// SPDX-License-Identifier: Apache-2.0
//! \file types.hpp
//! Shared model descriptors and error types.
#pragma once

#include <stdexcept>
#include <string>

namespace kinetica {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside the mathematical domain of an operation (negative density,
/// Fermi occupation above one, nonpositive logarithmic-mean argument, ...).
class DomainError : public Error {
  public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

/// Malformed or inconsistent configuration.
class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Quadrature could not be built or produced a poisoned value.
class NumericalError : public Error {
  public:
    explicit NumericalError(const std::string& what) : Error(what) {}
};

enum class Dynamics {
    Classical,
    Relativistic,
};

/// Which kinetic equation family is being evaluated. The three quantum rows
/// share one algebraic structure and differ only in alpha = 0, +1, -1.
enum class Statistics {
    MaxwellBoltzmann,  // alpha = 0
    BoseEinstein,      // alpha = +1
    FermiDirac,        // alpha = -1
    Wave,              // 4-wave kinetic equation
    Linear,            // linear collision operator
};

inline const char* to_string(Dynamics d) {
    return d == Dynamics::Classical ? "classical" : "relativistic";
}

inline const char* to_string(Statistics s) {
    switch (s) {
        case Statistics::MaxwellBoltzmann: return "maxwell";
        case Statistics::BoseEinstein: return "bose";
        case Statistics::FermiDirac: return "fermi";
        case Statistics::Wave: return "wave";
        case Statistics::Linear: return "linear";
    }
    return "?";
}

/// True for the three rows whose interaction factors are 1 + alpha*f.
inline bool is_quantum(Statistics s) {
    return s == Statistics::MaxwellBoltzmann || s == Statistics::BoseEinstein ||
           s == Statistics::FermiDirac;
}

/// Statistics parameter alpha for the quantum rows.
inline double quantum_alpha(Statistics s) {
    switch (s) {
        case Statistics::BoseEinstein: return 1.0;
        case Statistics::FermiDirac: return -1.0;
        default: return 0.0;
    }
}

struct PhysicalConstants {
    double m = 1.0;     ///< particle mass, > 0
    double c = 1.0;     ///< speed of light, > 0
    double hbar = 1.0;  ///< semiclassical parameter in (0, 1]; used by limit sweeps only

    void validate() const {
        if (!(m > 0.0)) throw ConfigError("PhysicalConstants: m must be > 0");
        if (!(c > 0.0)) throw ConfigError("PhysicalConstants: c must be > 0");
        if (!(hbar > 0.0 && hbar <= 1.0))
            throw ConfigError("PhysicalConstants: hbar must lie in (0, 1]");
    }
};

struct ModelSpec {
    Dynamics dynamics = Dynamics::Classical;
    Statistics statistics = Statistics::MaxwellBoltzmann;
    int dim = 2;  ///< momentum dimension, 2 or 3
    PhysicalConstants constants{};

    void validate() const {
        if (dim != 2 && dim != 3) throw ConfigError("ModelSpec: d must be 2 or 3");
        constants.validate();
    }

    bool relativistic() const { return dynamics == Dynamics::Relativistic; }

    /// Multiplicity in front of the two-permutation collision integrand
    /// q0 + q1. The quantum rows have q1 = q0, and their standard operator is
    /// written with the single bracket q0, so the factor is 1/2; the wave and
    /// linear operators are exactly q0 + q1, so the factor is 1.
    double integrand_multiplicity() const {
        return is_quantum(statistics) ? 0.5 : 1.0;
    }
};

}  // namespace kinetica
