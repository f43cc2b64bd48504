#pragma once

// Monte Carlo of the ordinary renewal process of decay events and the
// estimators applied to the resulting event trains: counting-window Fano
// factor and a Bartlett-averaged periodogram of the binned counting signal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "random.hpp"
#include "two_level.hpp"

namespace quietlaser {

/// Ordered event times in [0, horizon] plus the seed that produced them.
/// `parameters` holds whatever describes the generating process (written to
/// the CSV header).
struct EventTrain
{
    std::vector<double> timestamps;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> parameters;

    std::size_t size() const { return timestamps.size(); }

    /// Strictly increasing and inside [0, horizon].
    bool valid() const
    {
        if (!(horizon > 0)) return false;
        for (std::size_t i = 0; i < timestamps.size(); ++i) {
            const double t = timestamps[i];
            if (!(t >= 0 && t <= horizon)) return false;
            if (i > 0 && !(t > timestamps[i - 1])) return false;
        }
        return true;
    }

    friend bool operator==(const EventTrain&, const EventTrain&) = default;
};

/// Anything that can draw i.i.d. waiting times and knows their mean.
template <class S>
concept WaitingTimeSampler = requires(const S& s, Rng& rng) {
    { s(rng) } -> std::convertible_to<double>;
    { s.mean() } -> std::convertible_to<double>;
};

/// Inverse-CDF sampler for the first-decay law. Solves survival(t) = v for a
/// uniform v, which is the same as W(t) = 1 - v but keeps full precision in
/// the tail.
class DecaySampler
{
  public:
    static constexpr int max_iterations = 200;
    static constexpr double relative_tolerance = 1e-12;

    explicit DecaySampler(const CouplingParams& coupling) : law_(coupling) {}
    explicit DecaySampler(WaitingTimeLaw law) : law_(std::move(law)) {}

    double operator()(Rng& rng) const { return solve_survival(rng.uniform()); }

    /// W^{-1}(u). u = 0 maps to 0 and u = 1 to +inf.
    double quantile(double u) const
    {
        if (!(u >= 0 && u <= 1))
            throw std::invalid_argument("quantile level must lie in [0, 1]");
        if (u == 0.0) return 0.0;
        if (u == 1.0) return std::numeric_limits<double>::infinity();
        return solve_survival(1.0 - u);
    }

    double mean() const { return law_.mean(); }
    const WaitingTimeLaw& law() const { return law_; }

  private:
    double solve_survival(double v) const
    {
        const double tau = law_.mean();
        const auto f = [&](double t) { return law_.survival(t) - v; };
        double hi = 50.0 * tau;
        double f_hi = f(hi);
        for (int k = 0; f_hi > 0.0; ++k) {
            if (k == 64)
                throw std::runtime_error("DecaySampler: could not bracket the quantile");
            hi *= 2.0;
            f_hi = f(hi);
        }
        const double tol = relative_tolerance * tau;
        std::uintmax_t iterations = max_iterations;
        const auto [lo_t, hi_t] = boost::math::tools::toms748_solve(
            f, 0.0, hi, 1.0 - v, f_hi,
            [tol](double a, double b) { return std::abs(b - a) <= tol; }, iterations);
        if (iterations >= static_cast<std::uintmax_t>(max_iterations))
            throw std::runtime_error("DecaySampler: root finder did not converge");
        return 0.5 * (lo_t + hi_t);
    }

    WaitingTimeLaw law_;
};

/// Exponential waiting times (Poisson process), the shot-noise control.
class ExponentialSampler
{
  public:
    explicit ExponentialSampler(double rate) : rate_(rate)
    {
        if (!(rate > 0))
            throw std::invalid_argument("rate must be positive");
    }

    double operator()(Rng& rng) const { return rng.exponential(rate_); }
    double mean() const { return 1.0 / rate_; }

  private:
    double rate_;
};

inline double sample_waiting_time(const WaitingTimeLaw& law, Rng& rng)
{
    return DecaySampler(law)(rng);
}

/// Cumulative sums of i.i.d. waiting times, truncated at the horizon.
template <WaitingTimeSampler S>
EventTrain generate_event_train(const S& sampler, double horizon, std::uint64_t seed)
{
    if (!(horizon > 0))
        throw std::invalid_argument("horizon must be positive");
    EventTrain train;
    train.horizon = horizon;
    train.seed = seed;
    train.timestamps.reserve(static_cast<std::size_t>(1.1 * horizon / sampler.mean()) + 16);
    Rng rng(seed);
    double t = 0.0;
    for (;;) {
        const double next = t + sampler(rng);
        if (next > horizon) break;
        t = next > t ? next : std::nextafter(t, horizon);
        train.timestamps.push_back(t);
    }
    return train;
}

inline EventTrain generate_event_train(const WaitingTimeLaw& law, double horizon, std::uint64_t seed)
{
    EventTrain train = generate_event_train(DecaySampler(law), horizon, seed);
    train.parameters = {{"gamma", law.coupling().gamma()},
                        {"rabi_sq", law.coupling().rabi_sq()},
                        {"a", law.coupling().a()}};
    return train;
}

struct CountStatistics
{
    double window = 0.0;
    std::size_t windows = 0;
    double mean_count = 0.0;
    double fano = 0.0;
    double std_err = 0.0;
};

namespace detail {

/// Event counts in consecutive bins of width `width` covering [0, n*width).
inline std::vector<double> bin_counts(const EventTrain& train, double width, std::size_t n)
{
    std::vector<double> counts(n, 0.0);
    for (double t : train.timestamps) {
        const auto k = static_cast<std::size_t>(t / width);
        if (k < n) counts[k] += 1.0;
    }
    return counts;
}

/// Jackknife standard error of a statistic given its leave-one-out values.
inline double jackknife_error(std::span<const double> leave_one_out)
{
    const auto n = static_cast<double>(leave_one_out.size());
    double mean = 0.0;
    for (double v : leave_one_out) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : leave_one_out) ss += (v - mean) * (v - mean);
    return std::sqrt((n - 1.0) / n * ss);
}

}  // namespace detail

/// Variance-to-mean ratio of counts in disjoint windows, with a jackknife
/// (delete-one-window) standard error.
inline CountStatistics fano_factor(const EventTrain& train, double window)
{
    if (!(window > 0))
        throw std::invalid_argument("counting window must be positive");
    const auto n = static_cast<std::size_t>(std::floor(train.horizon / window));
    if (n < 10)
        throw std::invalid_argument("fano_factor needs at least 10 counting windows, got "
                                    + std::to_string(n));
    const std::vector<double> counts = detail::bin_counts(train, window, n);

    double s1 = 0.0, s2 = 0.0;
    for (double c : counts) {
        s1 += c;
        s2 += c * c;
    }
    if (s1 == 0.0)
        throw std::invalid_argument("fano_factor: no events in the counted span");
    const double nn = static_cast<double>(n);
    const auto fano_of = [](double sum, double sum_sq, double count) {
        const double mean = sum / count;
        const double var = (sum_sq - count * mean * mean) / (count - 1.0);
        return var / mean;
    };

    std::vector<double> loo(n);
    for (std::size_t i = 0; i < n; ++i)
        loo[i] = fano_of(s1 - counts[i], s2 - counts[i] * counts[i], nn - 1.0);

    return {window, n, s1 / nn, fano_of(s1, s2, nn), detail::jackknife_error(loo)};
}

struct SpectralPoint
{
    double omega = 0.0;
    double density = 0.0;   // double-sided, s^-1; equals the rate for a Poisson train
    double std_err = 0.0;
};

/// Periodogram of the binned, mean-centred counting signal, evaluated at the
/// requested angular frequencies and averaged over `segments` contiguous
/// segments (Bartlett). Normalised so that a Poisson train of rate R gives R.
inline std::vector<SpectralPoint> psd_estimate(const EventTrain& train,
                                               std::span<const double> omega_grid,
                                               double bin_width, std::size_t segments = 20)
{
    if (!(bin_width > 0))
        throw std::invalid_argument("bin width must be positive");
    if (segments < 20)
        throw std::invalid_argument("psd_estimate averages over at least 20 segments");
    if (omega_grid.empty())
        throw std::invalid_argument("omega grid is empty");
    if (train.timestamps.empty())
        throw std::invalid_argument("psd_estimate: train has no events");

    const double horizon = train.horizon;
    const double mean_interval = horizon / static_cast<double>(train.size());
    // The empirical interval scatters around tau, hence the 10% slack.
    if (bin_width > 1.1 * mean_interval / 5.0)
        throw std::invalid_argument("bin width must not exceed a fifth of the mean event interval");
    const double lo = 2.0 * std::numbers::pi / horizon;
    const double hi = std::numbers::pi / bin_width;
    for (double w : omega_grid)
        if (!(w >= lo && w <= hi))
            throw std::invalid_argument("omega " + std::to_string(w) + " outside resolvable band ["
                                        + std::to_string(lo) + ", " + std::to_string(hi) + "]");

    const auto n_bins = static_cast<std::size_t>(std::floor(horizon / bin_width));
    const std::size_t per_segment = n_bins / segments;
    if (per_segment < 2)
        throw std::invalid_argument("too few bins per segment");
    const std::size_t used = per_segment * segments;

    std::vector<double> x = detail::bin_counts(train, bin_width, used);
    double mean = 0.0;
    for (double c : x) mean += c;
    mean /= static_cast<double>(used);
    for (double& c : x) c -= mean;

    const double norm = 1.0 / (static_cast<double>(per_segment) * bin_width);
    std::vector<SpectralPoint> out;
    out.reserve(omega_grid.size());
    std::vector<double> per_seg(segments);
    for (double w : omega_grid) {
        const std::complex<double> step = std::polar(1.0, -w * bin_width);
        for (std::size_t s = 0; s < segments; ++s) {
            std::complex<double> phase(1.0, 0.0);
            std::complex<double> acc(0.0, 0.0);
            const double* seg = x.data() + s * per_segment;
            for (std::size_t k = 0; k < per_segment; ++k) {
                acc += seg[k] * phase;
                phase *= step;
            }
            per_seg[s] = std::norm(acc) * norm;
        }
        double avg = 0.0;
        for (double p : per_seg) avg += p;
        avg /= static_cast<double>(segments);
        double ss = 0.0;
        for (double p : per_seg) ss += (p - avg) * (p - avg);
        const double ms = static_cast<double>(segments);
        // Jackknife error of a mean reduces to the standard error.
        out.push_back({w, avg, std::sqrt(ss / (ms - 1.0) / ms)});
    }
    return out;
}

}  // namespace quietlaser
