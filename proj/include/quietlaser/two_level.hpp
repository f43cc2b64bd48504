#pragma once

// Damped two-level amplitudes, the first-decay waiting-time law, and the
// zero-frequency noise algebra of the renewal process of decay events.
//
// The over- and underdamped regimes are handled by one code path: all
// discriminants (alpha, kappa) are complex, and physical results are checked
// to be real before the imaginary part is dropped.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "core_physics.hpp"

namespace quietlaser {

using complex = std::complex<double>;

namespace detail {

/// Below this |k t| the hyperbolic pair is evaluated by its Taylor series.
inline constexpr double series_threshold = 1e-4;

/// Relative tolerance on the imaginary part of a result that must be real.
inline constexpr double real_tolerance = 1e-12;

inline double checked_real(complex z, const char* what)
{
    if (std::abs(z.imag()) > real_tolerance * std::abs(z) + 1e-300)
        throw std::logic_error(std::string(what) + ": result has a non-negligible imaginary part");
    return z.real();
}

/// exp(c t) cosh(k t) and exp(c t) sinh(k t)/k for complex k, written with
/// combined exponents so large t neither overflows nor yields inf*0, and with
/// a series near k t = 0 where the closed form is 0/0.
struct HyperbolicPair
{
    complex cosh_part;
    complex sinhc_part;
};

inline HyperbolicPair damped_hyperbolic(double c, complex k, double t)
{
    const complex z = k * t;
    if (std::abs(z) < series_threshold) {
        const complex z2 = z * z;
        const double envelope = std::exp(c * t);
        return {envelope * (1.0 + z2 / 2.0 + z2 * z2 / 24.0),
                envelope * t * (1.0 + z2 / 6.0 + z2 * z2 / 120.0)};
    }
    const complex up = std::exp(complex(c * t) + z);
    const complex down = std::exp(complex(c * t) - z);
    return {(up + down) / 2.0, (up - down) / (2.0 * k)};
}

}  // namespace detail

/// Closed-form propagator of dC1/dt = i(Omega/2) C2, dC2/dt = i(Omega/2) C1 - gamma C2.
/// The norm |C1|^2 + |C2|^2 is the probability that no decay has occurred.
class DampedPropagator
{
  public:
    explicit DampedPropagator(const CouplingParams& coupling)
        : DampedPropagator(coupling.rabi_sq(), coupling.gamma())
    {
    }

    /// Omega_R^2 = 0 is allowed here (no field: the upper amplitude just decays).
    DampedPropagator(double rabi_sq, double gamma)
        : rabi_(std::sqrt(rabi_sq)), gamma_(gamma), alpha_(std::sqrt(complex(gamma * gamma - rabi_sq)))
    {
        if (!(rabi_sq >= 0) || !(gamma > 0))
            throw std::invalid_argument("DampedPropagator needs Omega_R^2 >= 0 and gamma > 0");
    }

    /// Real 2x2 generators: U = [[p + g s, i W s], [i W s, p - g s]] with
    /// p = e^{-gt/2} cosh(at/2), s = e^{-gt/2} sinh(at/2)/a.
    struct Coefficients
    {
        double cosh_part;
        double sinh_part;
    };

    Coefficients coefficients(double t) const
    {
        const auto h = detail::damped_hyperbolic(-gamma_ / 2.0, alpha_ / 2.0, t);
        return {detail::checked_real(h.cosh_part, "propagator"),
                detail::checked_real(h.sinhc_part, "propagator") / 2.0};
    }

    /// Evolves (c1, c2) by t in place.
    void apply(double t, complex& c1, complex& c2) const
    {
        const auto [p, s] = coefficients(t);
        const complex off(0.0, rabi_ * s);
        const complex n1 = (p + gamma_ * s) * c1 + off * c2;
        const complex n2 = off * c1 + (p - gamma_ * s) * c2;
        c1 = n1;
        c2 = n2;
    }

    /// |C1(t)|^2 + |C2(t)|^2 starting from (c1, c2).
    double norm_after(double t, complex c1, complex c2) const
    {
        apply(t, c1, c2);
        return std::norm(c1) + std::norm(c2);
    }

    double rabi() const { return rabi_; }
    double gamma() const { return gamma_; }
    complex alpha() const { return alpha_; }

  private:
    double rabi_;
    double gamma_;
    complex alpha_;
};

/// Upper-state probability without decay, sin^2(Omega_R t / 2).
inline double undamped_upper_prob(double t, const CouplingParams& coupling)
{
    if (!(t >= 0))
        throw std::invalid_argument("time must be non-negative");
    const double s = std::sin(coupling.rabi() * t / 2.0);
    return s * s;
}

/// First-decay waiting-time law for an electron started in the lower state.
class WaitingTimeLaw
{
  public:
    explicit WaitingTimeLaw(const CouplingParams& coupling)
        : coupling_(coupling), propagator_(coupling)
    {
    }

    const CouplingParams& coupling() const { return coupling_; }

    /// alpha = sqrt(gamma^2 - Omega_R^2), imaginary in the underdamped regime.
    complex alpha() const { return propagator_.alpha(); }

    /// C_2(t) = i (Omega_R / 2 alpha)(e^{(-gamma+alpha)t/2} - e^{(-gamma-alpha)t/2}).
    complex damped_c2(double t) const
    {
        check_time(t);
        return {0.0, propagator_.rabi() * propagator_.coefficients(t).sinh_part};
    }

    complex damped_c1(double t) const
    {
        check_time(t);
        const auto [p, s] = propagator_.coefficients(t);
        return {p + coupling_.gamma() * s, 0.0};
    }

    /// w(t) = 2 gamma |C_2(t)|^2, the density of the first decay time.
    double density(double t) const
    {
        check_time(t);
        const double s = propagator_.coefficients(t).sinh_part;
        return 2.0 * coupling_.gamma() * coupling_.rabi_sq() * s * s;
    }

    /// Probability that no decay has happened by t.
    double survival(double t) const
    {
        check_time(t);
        const auto [p, s] = propagator_.coefficients(t);
        const double c1 = p + coupling_.gamma() * s;
        return c1 * c1 + coupling_.rabi_sq() * s * s;
    }

    /// W(t) = int_0^t w, from the amplitude norm: W = 1 - |C1|^2 - |C2|^2.
    double cdf(double t) const { return 1.0 - survival(t); }

    /// Mean waiting time tau = (1 + a)/gamma.
    double mean() const { return (1.0 + coupling_.a()) / coupling_.gamma(); }

    const DampedPropagator& propagator() const { return propagator_; }

  private:
    static void check_time(double t)
    {
        if (!(t >= 0))
            throw std::invalid_argument("time must be non-negative");
    }

    CouplingParams coupling_;
    DampedPropagator propagator_;
};

inline complex damped_c2(double t, const WaitingTimeLaw& law) { return law.damped_c2(t); }
inline double waiting_density(double t, const WaitingTimeLaw& law) { return law.density(t); }
inline double waiting_cdf(double t, const WaitingTimeLaw& law) { return law.cdf(t); }

inline double mean_waiting_time(const CouplingParams& c) { return (1.0 + c.a()) / c.gamma(); }

/// Mean decay-event rate R = gamma / (1 + a) = 1/tau.
inline double event_rate(const CouplingParams& c) { return c.gamma() / (1.0 + c.a()); }

namespace detail {
inline void check_right_half_plane(complex p)
{
    if (!(p.real() >= 0))
        throw std::domain_error("Laplace variable must satisfy Re(p) >= 0");
}
}  // namespace detail

/// w~(p) = gamma Omega^2 / (p^3 + 3 gamma p^2 + (2 gamma^2 + Omega^2) p + gamma Omega^2).
inline complex laplace_w(complex p, const CouplingParams& c)
{
    detail::check_right_half_plane(p);
    const double g = c.gamma();
    const double w2 = c.rabi_sq();
    const complex den = ((p + 3.0 * g) * p + (2.0 * g * g + w2)) * p + g * w2;
    // All roots of den lie in Re(p) < 0.
    if (std::abs(den) == 0.0)
        throw std::logic_error("laplace_w: pole in the right half plane");
    return g * w2 / den;
}

/// Pole structure of the event-density transform G~ = w~/(1 - w~).
class RenewalSpectrum
{
  public:
    explicit RenewalSpectrum(const CouplingParams& coupling)
        : coupling_(coupling),
          kappa_(std::sqrt(complex(coupling.gamma() * coupling.gamma() / 4.0 - coupling.rabi_sq()))),
          lambda_plus_(-1.5 * coupling.gamma() + kappa_),
          lambda_minus_(-1.5 * coupling.gamma() - kappa_)
    {
    }

    const CouplingParams& coupling() const { return coupling_; }
    complex kappa() const { return kappa_; }
    complex lambda_plus() const { return lambda_plus_; }
    complex lambda_minus() const { return lambda_minus_; }
    double rate() const { return event_rate(coupling_); }

  private:
    CouplingParams coupling_;
    complex kappa_;
    complex lambda_plus_;
    complex lambda_minus_;
};

/// G~(p) with the 1/p term removed:
///   R (lambda_-/(2 kappa)/(p - lambda_+) - lambda_+/(2 kappa)/(p - lambda_-)).
/// The two partial fractions sum to -R (p + 3 gamma)/((p - lambda_+)(p - lambda_-)),
/// which stays regular where kappa -> 0.
inline complex laplace_G_regular(complex p, const RenewalSpectrum& s)
{
    detail::check_right_half_plane(p);
    const double g = s.coupling().gamma();
    const complex quad = (p + 3.0 * g) * p + (2.0 * g * g + s.coupling().rabi_sq());
    return -s.rate() * (p + 3.0 * g) / quad;
}

/// g(t) - 1 = (lambda_- e^{lambda_+ t} - lambda_+ e^{lambda_- t}) / (2 kappa).
inline double g_excess(double t, const RenewalSpectrum& s)
{
    if (!(t >= 0))
        throw std::invalid_argument("time must be non-negative");
    const double g = s.coupling().gamma();
    const auto h = detail::damped_hyperbolic(-1.5 * g, s.kappa(), t);
    return -detail::checked_real(h.cosh_part + 1.5 * g * h.sinhc_part, "g_excess");
}

namespace detail {
inline void check_a(double a)
{
    if (!(a > 0) || !std::isfinite(a))
        throw std::invalid_argument("noise parameter a must be positive and finite");
}
}  // namespace detail

/// Zero-frequency rate-noise ratio S_r(0)/R = 1 - 3a/(1+a)^2, minimal (1/4) at a = 1.
inline double pump_noise_ratio(double a)
{
    detail::check_a(a);
    return 1.0 - 3.0 * a / ((1.0 + a) * (1.0 + a));
}

inline double pump_noise_ratio(const CouplingParams& c) { return pump_noise_ratio(c.a()); }

/// (mu/R) dR/dmu = a/(1+a) at fixed gamma.
inline double rate_sensitivity(double a)
{
    detail::check_a(a);
    return a / (1.0 + a);
}

inline double rate_sensitivity(const CouplingParams& c) { return rate_sensitivity(c.a()); }

}  // namespace quietlaser
