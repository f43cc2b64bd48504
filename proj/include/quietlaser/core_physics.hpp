#pragma once

// Particle-in-a-box electron coupled to a lumped LC resonator: level energies,
// dipole matrix element and the Rabi-frequency / stored-energy relation.
// Everything is SI.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quietlaser {

/// Physical constants used throughout. The defaults are the rounded values
/// the theory quotes; `codata()` gives CODATA 2018 values instead.
struct PhysicalConstants
{
    double e = 1.60e-19;          // elementary charge (C)
    double m = 9.10e-31;          // electron mass (kg)
    double hbar = 1.05e-34;       // reduced Planck constant (J s)
    double coulomb = 9.0e9;       // 1/(4 pi eps0) (m/F)

    static PhysicalConstants codata()
    {
        return {1.602176634e-19, 9.1093837015e-31, 1.054571817e-34, 8.9875517923e9};
    }

    void validate() const
    {
        if (!(e > 0 && m > 0 && hbar > 0 && coulomb > 0))
            throw std::invalid_argument("physical constants must be strictly positive");
    }
};

/// Infinite well of full width d centred on x = 0 (walls at +-d/2).
class BoxGeometry
{
  public:
    explicit BoxGeometry(double width) : width_(width)
    {
        if (!(width > 0) || !std::isfinite(width))
            throw std::invalid_argument("box width must be positive and finite");
    }

    double width() const { return width_; }

  private:
    double width_;
};

/// Capacitance volume, photon lifetime and angular frequency of the resonator.
struct ResonatorParams
{
    double volume;   // m^3
    double tau_p;    // s
    double omega;    // rad/s

    void validate() const
    {
        if (!(volume > 0 && tau_p > 0 && omega > 0))
            throw std::invalid_argument("resonator parameters must be strictly positive");
    }
};

/// The two retained box levels. The model is truncated to these.
enum class Level : int { lower = 1, upper = 2 };

inline Level level_from_index(int n)
{
    if (n == 1) return Level::lower;
    if (n == 2) return Level::upper;
    throw std::invalid_argument("level index must be 1 or 2, got " + std::to_string(n));
}

/// E_n = pi^2 hbar^2 n^2 / (2 m d^2).
inline double energy_level(Level n, const BoxGeometry& geom,
                           const PhysicalConstants& c = {})
{
    const double k = static_cast<double>(static_cast<int>(n));
    const double d = geom.width();
    return std::numbers::pi * std::numbers::pi * c.hbar * c.hbar * k * k
           / (2.0 * c.m * d * d);
}

inline double energy_level(int n, const BoxGeometry& geom, const PhysicalConstants& c = {})
{
    return energy_level(level_from_index(n), geom, c);
}

/// Angular frequency of the 1 -> 2 transition, (E_2 - E_1)/hbar.
inline double transition_frequency(const BoxGeometry& geom, const PhysicalConstants& c = {})
{
    const double d = geom.width();
    return 3.0 * std::numbers::pi * std::numbers::pi * c.hbar / (2.0 * c.m * d * d);
}

/// Inverse of transition_frequency: the box width resonant with omega.
inline BoxGeometry box_width_for_frequency(double omega, const PhysicalConstants& c = {})
{
    if (!(omega > 0))
        throw std::invalid_argument("omega must be positive");
    return BoxGeometry(std::sqrt(3.0 * std::numbers::pi * std::numbers::pi * c.hbar
                                 / (2.0 * c.m * omega)));
}

/// x_12 = int x psi_1 psi_2 dx = 16 d / (9 pi^2).
inline double dipole_element(const BoxGeometry& geom)
{
    return 16.0 * geom.width() / (9.0 * std::numbers::pi * std::numbers::pi);
}

/// Rabi frequency for a peak potential v across the gap: hbar Omega_R = e v x_12 / d.
inline double rabi_frequency_from_potential(double v, const BoxGeometry& geom,
                                            const PhysicalConstants& c = {})
{
    return c.e * v * dipole_element(geom) / (c.hbar * geom.width());
}

/// Peak potential producing a given Rabi frequency (inverse of the above).
inline double potential_for_rabi_frequency(double rabi, const BoxGeometry& geom,
                                           const PhysicalConstants& c = {})
{
    return rabi * c.hbar * geom.width() / (c.e * dipole_element(geom));
}

/// b = (1024 / 27 pi) e^2 / (4 pi eps0 m), in m^3/s^2.
inline double coupling_constant_b(const PhysicalConstants& c = {})
{
    return 1024.0 / (27.0 * std::numbers::pi) * c.e * c.e * c.coulomb / c.m;
}

/// Omega_R^2 = b mu / V. Independent of the box width and frequency.
inline double rabi_sq_from_energy(double mu, double volume, const PhysicalConstants& c = {})
{
    if (!(mu >= 0))
        throw std::invalid_argument("reduced photon number must be non-negative");
    if (!(volume > 0))
        throw std::invalid_argument("capacitance volume must be positive");
    return coupling_constant_b(c) * mu / volume;
}

inline double rabi_sq_from_energy(double mu, const ResonatorParams& res,
                                  const PhysicalConstants& c = {})
{
    return rabi_sq_from_energy(mu, res.volume, c);
}

/// Squared Rabi frequency and half decay rate of the upper level. The
/// dimensionless a = 2 gamma^2 / Omega_R^2 is always derived, never stored
/// independently.
class CouplingParams
{
  public:
    CouplingParams(double rabi_sq, double gamma) : rabi_sq_(rabi_sq), gamma_(gamma)
    {
        if (!(rabi_sq > 0) || !std::isfinite(rabi_sq))
            throw std::invalid_argument("Omega_R^2 must be positive and finite");
        if (!(gamma > 0) || !std::isfinite(gamma))
            throw std::invalid_argument("gamma must be positive and finite");
    }

    /// Build from the noise parameter a and gamma: Omega_R^2 = 2 gamma^2 / a.
    static CouplingParams from_a(double a, double gamma)
    {
        if (!(a > 0))
            throw std::invalid_argument("a must be positive");
        return CouplingParams(2.0 * gamma * gamma / a, gamma);
    }

    double rabi_sq() const { return rabi_sq_; }
    double rabi() const { return std::sqrt(rabi_sq_); }
    double gamma() const { return gamma_; }
    double a() const { return 2.0 * gamma_ * gamma_ / rabi_sq_; }

  private:
    double rabi_sq_;
    double gamma_;
};

}  // namespace quietlaser
