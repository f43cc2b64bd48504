#pragma once

// One-electron laser: steady-state operating points, the zero-frequency
// closed-loop noise algebra, and a microscopic quantum-jump simulator in which
// the photon number sets the Rabi frequency and a Poissonian detector drains
// the resonator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "core_physics.hpp"
#include "random.hpp"
#include "renewal.hpp"
#include "two_level.hpp"

namespace quietlaser {

/// Stationary operating point: J = gamma/(1+a) = mu/tau_p, Omega_R^2 = b mu / V.
struct OperatingPoint
{
    double J = 0.0;         // injection (= emission = detection) rate, s^-1
    double tau_p = 0.0;     // photon lifetime, s
    double volume = 0.0;    // capacitance volume, m^3
    double mu = 0.0;        // reduced resonator energy E / (hbar omega)
    double rabi_sq = 0.0;   // s^-2
    double gamma = 0.0;     // s^-1
    double a = 0.0;

    CouplingParams coupling() const { return CouplingParams(rabi_sq, gamma); }

    /// Largest relative residual of the three defining relations.
    double invariant_residual(const PhysicalConstants& c = {}) const
    {
        const auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); };
        return std::max({rel(mu, J * tau_p), rel(J, gamma / (1.0 + a)),
                         rel(rabi_sq, coupling_constant_b(c) * mu / volume),
                         rel(a, 2.0 * gamma * gamma / rabi_sq)});
    }
};

inline constexpr double operating_point_tolerance = 1e-10;

namespace detail {
inline OperatingPoint validated(OperatingPoint op, const PhysicalConstants& c)
{
    if (!(op.invariant_residual(c) <= operating_point_tolerance))
        throw std::logic_error("operating point violates its steady-state relations");
    return op;
}
}  // namespace detail

/// Operating points for a given injection rate, photon lifetime and volume.
/// gamma solves 2 J gamma^2 / Omega_R^2 - gamma + J = 0; both positive roots
/// are returned sorted by a. Empty when Omega_R < 2 sqrt(2) J.
inline std::vector<OperatingPoint> steady_state(double J, double tau_p, double volume,
                                                const PhysicalConstants& c = {})
{
    if (!(J > 0 && tau_p > 0 && volume > 0))
        throw std::invalid_argument("steady_state needs positive J, tau_p and volume");
    const double mu = J * tau_p;
    const double rabi_sq = rabi_sq_from_energy(mu, volume, c);
    const double disc = 1.0 - 8.0 * J * J / rabi_sq;
    if (disc < 0.0) return {};

    const auto make = [&](double gamma) {
        OperatingPoint op{J, tau_p, volume, mu, rabi_sq, gamma, 2.0 * gamma * gamma / rabi_sq};
        return detail::validated(op, c);
    };
    const double big = rabi_sq * (1.0 + std::sqrt(disc)) / (4.0 * J);
    if (disc <= 4.0 * std::numeric_limits<double>::epsilon()) return {make(big)};
    // Product of the roots is Omega_R^2 / 2; avoids cancellation in the small root.
    const double small = rabi_sq / (2.0 * big);
    return {make(small), make(big)};
}

/// Operating point with a prescribed a at photon number mu and lifetime tau_p;
/// the volume is whatever makes it stationary.
inline OperatingPoint operating_point_for_a(double a, double mu, double tau_p,
                                            const PhysicalConstants& c = {})
{
    if (!(a > 0 && mu > 0 && tau_p > 0))
        throw std::invalid_argument("operating_point_for_a needs positive a, mu and tau_p");
    const double J = mu / tau_p;
    const double gamma = J * (1.0 + a);
    const double rabi_sq = 2.0 * gamma * gamma / a;
    const double volume = coupling_constant_b(c) * mu / rabi_sq;
    return detail::validated({J, tau_p, volume, mu, rabi_sq, gamma, a}, c);
}

/// The quietest design, a = 1/4.
inline OperatingPoint min_noise_design(double mu, double tau_p, const PhysicalConstants& c = {})
{
    return operating_point_for_a(0.25, mu, tau_p, c);
}

/// Detected-noise ratio S_dD / D = 2a^2 - a + 1, minimal (7/8) at a = 1/4.
inline double detected_noise_ratio(double a)
{
    detail::check_a(a);
    return 2.0 * a * a - a + 1.0;
}

struct LoopTransfer
{
    double gain;            // A = (mu/R) dR/dmu = a/(1+a)
    double amplification;   // 1/(1-A) = 1+a
};

inline LoopTransfer closed_loop_transfer(double a)
{
    detail::check_a(a);
    return {a / (1.0 + a), 1.0 + a};
}

struct LoopOptions
{
    /// Simulated time discarded before recording starts.
    double warmup = 0.0;
    /// Pin Omega_R^2 to the operating-point value (open loop).
    bool freeze_feedback = false;
    bool record_emissions = false;
    /// Spacing of (t, mu) trajectory samples; 0 disables the trajectory.
    double trajectory_stride = 0.0;
    /// Starting photon number; defaults to round(op.mu).
    std::optional<std::int64_t> initial_photons;
};

struct TrajectorySample
{
    double t;
    std::int64_t mu;
};

struct LoopResult
{
    EventTrain detections;
    EventTrain emissions;   // empty unless record_emissions
    std::vector<TrajectorySample> trajectory;
    double mean_mu = 0.0;
    double detection_rate = 0.0;
    double emission_rate = 0.0;
};

/// Hybrid quantum-jump evolution of one electron and an integer photon number.
/// Between jumps (C1, C2) follow the damped two-level equations exactly with
/// Omega_R^2 = rabi_sq * mu_int / mu; the no-jump norm is the emission
/// survival probability. Emission: mu_int += 1 and the electron resets to the
/// lower state. Detection (rate mu_int / tau_p): mu_int -= 1.
class LoopSimulator
{
  public:
    static constexpr double norm_drift_limit = 1e-6;

    LoopSimulator(const OperatingPoint& op, std::uint64_t seed, LoopOptions options = {})
        : op_(op), options_(std::move(options)), rng_(seed)
    {
        if (!(op.mu > 0 && op.tau_p > 0 && op.gamma > 0 && op.rabi_sq > 0))
            throw std::invalid_argument("LoopSimulator needs a valid operating point");
        photons_ = options_.initial_photons.value_or(std::llround(op.mu));
        if (photons_ < 0)
            throw std::invalid_argument("initial photon number must be non-negative");
    }

    double time() const { return t_; }
    std::int64_t photons() const { return photons_; }
    complex c1() const { return c1_; }
    complex c2() const { return c2_; }

    /// Adds (or removes) photons at the current time.
    void perturb_photons(std::int64_t delta)
    {
        photons_ = std::max<std::int64_t>(0, photons_ + delta);
    }

    double rabi_sq_now() const
    {
        if (options_.freeze_feedback) return op_.rabi_sq;
        return op_.rabi_sq * static_cast<double>(photons_) / op_.mu;
    }

    /// Callback receives (kind, time) for each jump; kind is 'e' or 'd'.
    template <class OnJump, class OnInterval>
    void run_until(double t_end, OnJump&& on_jump, OnInterval&& on_interval)
    {
        while (t_ < t_end) {
            const DampedPropagator prop(rabi_sq_now(), op_.gamma);
            const double detect_rate = static_cast<double>(photons_) / op_.tau_p;
            const double t_detect = detect_rate > 0 ? rng_.exponential(detect_rate)
                                                    : std::numeric_limits<double>::infinity();
            const double v = rng_.uniform();
            const double t_cand = std::min(t_detect, t_end - t_);

            const double n_cand = checked_norm(prop, t_cand);
            double dt = t_cand;
            char kind = 0;
            if (n_cand <= v) {
                dt = emission_time(prop, v, t_cand, n_cand);
                kind = 'e';
            } else if (t_detect <= t_end - t_) {
                kind = 'd';
            }

            prop.apply(dt, c1_, c2_);
            on_interval(t_, dt, photons_);
            t_ = kind == 0 ? t_end : t_ + dt;
            if (kind == 'e') {
                ++photons_;
                c1_ = {1.0, 0.0};
                c2_ = {0.0, 0.0};
            } else {
                const double n = std::sqrt(std::norm(c1_) + std::norm(c2_));
                c1_ /= n;
                c2_ /= n;
                if (kind == 'd') --photons_;
            }
            if (kind != 0) on_jump(kind, t_);
        }
    }

    void run_until(double t_end)
    {
        run_until(t_end, [](char, double) {}, [](double, double, std::int64_t) {});
    }

  private:
    double checked_norm(const DampedPropagator& prop, double t) const
    {
        const double n = prop.norm_after(t, c1_, c2_);
        if (!(n <= 1.0 + norm_drift_limit) || !(n >= 0.0))
            throw std::runtime_error("LoopSimulator: norm drift beyond tolerance");
        return n;
    }

    /// The no-emission norm is non-increasing, so N(t) = v has one root in (0, t_max].
    double emission_time(const DampedPropagator& prop, double v, double t_max, double n_max) const
    {
        if (n_max == v) return t_max;
        const auto f = [&](double t) { return checked_norm(prop, t) - v; };
        const double tol = 1e-12 / op_.gamma;
        std::uintmax_t iterations = 200;
        const auto [lo, hi] = boost::math::tools::toms748_solve(
            f, 0.0, t_max, 1.0 - v, n_max - v,
            [tol](double a, double b) { return std::abs(b - a) <= tol; }, iterations);
        if (iterations >= 200)
            throw std::runtime_error("LoopSimulator: emission-time root finder did not converge");
        return 0.5 * (lo + hi);
    }

    OperatingPoint op_;
    LoopOptions options_;
    Rng rng_;
    std::int64_t photons_ = 0;
    complex c1_{1.0, 0.0};
    complex c2_{0.0, 0.0};
    double t_ = 0.0;
};

/// Runs warmup + horizon and records detections (and optionally emissions and
/// the photon-number trajectory) over [warmup, warmup + horizon], with times
/// shifted so the recorded span is [0, horizon].
inline LoopResult simulate_loop(const OperatingPoint& op, double horizon, std::uint64_t seed,
                                const LoopOptions& options = {})
{
    if (!(horizon > 0))
        throw std::invalid_argument("horizon must be positive");
    LoopSimulator sim(op, seed, options);
    if (options.warmup > 0) sim.run_until(options.warmup);
    const double t0 = sim.time();

    LoopResult out;
    out.detections.horizon = horizon;
    out.detections.seed = seed;
    out.detections.parameters = {{"J", op.J}, {"tau_p", op.tau_p}, {"volume", op.volume},
                                 {"mu", op.mu}, {"rabi_sq", op.rabi_sq}, {"gamma", op.gamma},
                                 {"a", op.a}};
    out.emissions.horizon = horizon;
    out.emissions.seed = seed;
    out.emissions.parameters = out.detections.parameters;
    out.detections.timestamps.reserve(static_cast<std::size_t>(1.1 * op.J * horizon) + 16);

    double mu_time = 0.0;
    double next_sample = 0.0;
    const double stride = options.trajectory_stride;
    std::size_t n_emit = 0;

    sim.run_until(
        t0 + horizon,
        [&](char kind, double t) {
            const double rel = t - t0;
            if (kind == 'd') {
                out.detections.timestamps.push_back(rel);
            } else {
                ++n_emit;
                if (options.record_emissions) out.emissions.timestamps.push_back(rel);
            }
        },
        [&](double t, double dt, std::int64_t mu) {
            mu_time += static_cast<double>(mu) * dt;
            if (stride > 0) {
                const double rel_end = t + dt - t0;
                while (next_sample < rel_end && next_sample <= horizon) {
                    out.trajectory.push_back({next_sample, mu});
                    next_sample += stride;
                }
            }
        });

    out.mean_mu = mu_time / horizon;
    out.detection_rate = static_cast<double>(out.detections.size()) / horizon;
    out.emission_rate = static_cast<double>(n_emit) / horizon;
    return out;
}

}  // namespace quietlaser
