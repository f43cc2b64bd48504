#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "quietlaser/two_level.hpp"

using namespace quietlaser;
using std::numbers::pi;

namespace {

// Draws (Omega_R, gamma) pairs covering both damping regimes.
std::vector<CouplingParams> random_couplings(int n, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> lg(-1.0, 1.0);
    std::uniform_real_distribution<double> lr(-1.5, 1.5);
    std::vector<CouplingParams> out;
    for (int i = 0; i < n; ++i) {
        const double gamma = std::pow(10.0, lg(gen));
        const double rabi = gamma * std::pow(10.0, lr(gen));
        out.emplace_back(rabi * rabi, gamma);
    }
    return out;
}

double quad_to_infinity(const auto& f, const CouplingParams& c)
{
    // Truncate at 50 tau; the tail is below 1e-12 for every law used here.
    const double tau = mean_waiting_time(c);
    return oracle::integrate(f, 0.0, 50.0 * tau, 400);
}

}  // namespace

TEST(Undamped, RabiSolution)
{
    const CouplingParams c(4.0, 1.0);   // Omega_R = 2
    EXPECT_EQ(undamped_upper_prob(0.0, c), 0.0);
    EXPECT_NEAR(undamped_upper_prob(pi / 2.0, c), 1.0, 1e-15);
    EXPECT_NEAR(undamped_upper_prob(pi / 4.0, c), 0.5, 1e-15);
    EXPECT_THROW(undamped_upper_prob(-1.0, c), std::invalid_argument);
}

TEST(WaitingLaw, AlphaSquaredIdentity)
{
    for (const auto& c : random_couplings(50, 3)) {
        const WaitingTimeLaw law(c);
        const std::complex<double> lhs = law.alpha() * law.alpha() + c.rabi_sq();
        const double g2 = c.gamma() * c.gamma();
        EXPECT_NEAR(std::abs(lhs - g2) / g2, 0.0, 1e-12);
    }
}

TEST(WaitingLaw, C2StartsAtZeroAndReducesToSineWhenUndamped)
{
    const WaitingTimeLaw law(CouplingParams(1.0, 1e-9));
    EXPECT_EQ(std::abs(law.damped_c2(0.0)), 0.0);
    for (double t = 0.0; t < 20.0; t += 0.37)
        EXPECT_NEAR(std::abs(law.damped_c2(t)), std::abs(std::sin(t / 2.0)), 1e-8);
}

TEST(WaitingLaw, C2MatchesOdeOracle)
{
    std::vector<double> times;
    for (int k = 1; k <= 40; ++k) times.push_back(0.05 * k * k);
    for (const auto& c : random_couplings(30, 5)) {
        const WaitingTimeLaw law(c);
        const double scale = 1.0 / c.gamma();
        std::vector<double> ts;
        for (double t : times) ts.push_back(t * scale);
        const auto ref = oracle::damped_amplitudes(c.rabi(), c.gamma(), ts);
        for (std::size_t i = 0; i < ts.size(); ++i) {
            EXPECT_NEAR(std::abs(law.damped_c2(ts[i]) - ref[i][1]), 0.0, 1e-8);
            EXPECT_NEAR(std::abs(law.damped_c1(ts[i]) - ref[i][0]), 0.0, 1e-8);
            EXPECT_LE(std::norm(law.damped_c2(ts[i])), 1.0);
        }
    }
}

TEST(WaitingLaw, DensityIntegratesToOneWithMeanTau)
{
    for (double a : {0.01, 0.25, 1.0, 4.0, 100.0}) {
        const auto c = CouplingParams::from_a(a, 1.3);
        const WaitingTimeLaw law(c);
        const double m0 = quad_to_infinity([&](double t) { return law.density(t); }, c);
        const double m1 = quad_to_infinity([&](double t) { return t * law.density(t); }, c);
        EXPECT_NEAR(m0, 1.0, 1e-8) << "a=" << a;
        EXPECT_NEAR(m1 / mean_waiting_time(c), 1.0, 1e-8) << "a=" << a;
    }
}

TEST(WaitingLaw, QuadraticOnsetAntibunching)
{
    for (double a : {0.1, 1.0, 10.0}) {
        const auto c = CouplingParams::from_a(a, 2.0);
        const WaitingTimeLaw law(c);
        const double t = 1e-4 / c.gamma();
        EXPECT_NEAR(law.density(t) / (c.gamma() * c.rabi_sq() * t * t / 2.0), 1.0, 1e-3);
    }
}

TEST(WaitingLaw, UnderdampedClosedForm)
{
    const double gamma = 0.7;
    const CouplingParams c(4.0 * gamma * gamma, gamma);   // Omega_R = 2 gamma
    const WaitingTimeLaw law(c);
    const double beta = std::sqrt(c.rabi_sq() - gamma * gamma);
    const double peak = gamma;   // density scale
    for (double t = 0.0; t < 40.0; t += 0.11) {
        const double ref = gamma * c.rabi_sq() / (beta * beta) * std::exp(-gamma * t) * (1.0 - std::cos(beta * t));
        EXPECT_NEAR(law.density(t), ref, 1e-12 * peak);
    }
}

TEST(WaitingLaw, DensityMatchesExponentialForm)
{
    // w = (g W^2 / 2 alpha^2)(e^{-(g-alpha)t} + e^{-(g+alpha)t} - 2 e^{-g t}) away from alpha = 0.
    for (const auto& c : random_couplings(20, 9)) {
        const WaitingTimeLaw law(c);
        const std::complex<double> al = law.alpha();
        if (std::abs(al) < 0.05 * c.gamma()) continue;
        const double g = c.gamma();
        for (double t = 0.0; t < 10.0 / g; t += 0.3 / g) {
            const std::complex<double> ref = g * c.rabi_sq() / (2.0 * al * al)
                                             * (std::exp(-(g - al) * t) + std::exp(-(g + al) * t) - 2.0 * std::exp(-g * t));
            EXPECT_NEAR(law.density(t), ref.real(), 1e-10 * g);
        }
    }
}

TEST(WaitingLaw, DensityNonNegativeOnDenseGrid)
{
    for (double a : {0.01, 0.25, 1.0, 4.0, 100.0}) {
        const WaitingTimeLaw law(CouplingParams::from_a(a, 1.0));
        const double tau = law.mean();
        for (int k = 0; k <= 20000; ++k) ASSERT_GE(law.density(k * 30.0 * tau / 20000), 0.0);
    }
}

TEST(WaitingLaw, CdfAgainstQuadrature)
{
    for (double a : {0.05, 0.5, 1.0, 3.0, 50.0}) {
        const auto c = CouplingParams::from_a(a, 1.0);
        const WaitingTimeLaw law(c);
        EXPECT_EQ(law.cdf(0.0), 0.0);
        const double tau = law.mean();
        for (double t : {0.01 * tau, 0.3 * tau, tau, 2.5 * tau, 10.0 * tau}) {
            const double q = oracle::integrate([&](double s) { return law.density(s); }, 0.0, t, 100);
            EXPECT_NEAR(law.cdf(t), q, 1e-9) << "a=" << a << " t=" << t;
        }
    }
    const WaitingTimeLaw unit(CouplingParams::from_a(1.0, 1.0));
    EXPECT_GT(unit.cdf(20.0 * unit.mean()), 0.9999);
}

TEST(WaitingLaw, CdfMonotoneAndDifferentiatesToDensity)
{
    for (double a : {0.02, 1.0, 30.0}) {
        const auto c = CouplingParams::from_a(a, 1.0);
        const WaitingTimeLaw law(c);
        // Five-point central stencil, step scaled to the fastest time scale.
        const double h = 1e-3 / std::max(c.rabi(), c.gamma());
        const auto W = [&](double t) { return law.cdf(t); };
        double prev = 0.0;
        for (double t = 2 * h; t < 30.0 * law.mean(); t += 0.05) {
            const double w = law.cdf(t);
            ASSERT_GE(w, prev - 1e-15);
            prev = w;
            const double deriv = (W(t - 2 * h) - 8 * W(t - h) + 8 * W(t + h) - W(t + 2 * h)) / (12 * h);
            EXPECT_NEAR(deriv, law.density(t), 1e-8);
        }
        EXPECT_NEAR(law.cdf(1e4 * law.mean()), 1.0, 1e-15);
    }
}

TEST(Rates, MeanWaitingTimeAndRate)
{
    const auto c = CouplingParams::from_a(1.0, 1.0);
    EXPECT_DOUBLE_EQ(mean_waiting_time(c), 2.0);
    EXPECT_DOUBLE_EQ(event_rate(c), 0.5);
    for (const auto& r : random_couplings(20, 13))
        EXPECT_DOUBLE_EQ(mean_waiting_time(r), 1.0 / event_rate(r));
}

TEST(Rates, MeanEqualsMinusLaplaceSlope)
{
    for (const auto& c : random_couplings(10, 17)) {
        const double h = 1e-5 * event_rate(c);
        const double slope = (laplace_w(h, c) - laplace_w(0.0, c)).real() / h;   // one-sided, p >= 0
        const double slope2 = (-3.0 * laplace_w(0.0, c) + 4.0 * laplace_w(h, c) - laplace_w(2 * h, c)).real() / (2 * h);
        EXPECT_NEAR(-slope2 / mean_waiting_time(c), 1.0, 1e-7);
        EXPECT_LT(slope, 0.0);
    }
}

TEST(Rates, WeakFieldLimit)
{
    const auto c = CouplingParams::from_a(1e6, 2.0);
    EXPECT_NEAR(event_rate(c) / (c.gamma() * c.rabi_sq() / (2 * c.gamma() * c.gamma())), 1.0, 1e-5);
    EXPECT_LT(event_rate(CouplingParams::from_a(1e12, 2.0)), 1e-11);
}

TEST(Laplace, NormalisationAndQuadrature)
{
    for (const auto& c : random_couplings(10, 19)) {
        EXPECT_NEAR(std::abs(laplace_w(0.0, c) - 1.0), 0.0, 1e-15);
        const WaitingTimeLaw law(c);
        for (std::complex<double> p : {std::complex<double>(c.gamma(), 0.0),
                                       std::complex<double>(0.3 * c.gamma(), 0.8 * c.gamma())}) {
            const auto q = oracle::integrate_complex(
                [&](double t) { return std::exp(-p * t) * law.density(t); }, 0.0, 50.0 * law.mean(), 400);
            EXPECT_NEAR(std::abs(q - laplace_w(p, c)), 0.0, 1e-8);
        }
    }
    EXPECT_THROW(laplace_w({-0.1, 0.0}, CouplingParams(1.0, 1.0)), std::domain_error);
}

TEST(Laplace, RegularPartMatchesRenewalIdentityAndPartialFractions)
{
    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (const auto& c : random_couplings(10, 29)) {
        const RenewalSpectrum s(c);
        const double R = event_rate(c);
        for (int i = 0; i < 10; ++i) {
            const std::complex<double> p(u(gen) * c.gamma() + 1e-3 * c.gamma(), (u(gen) - 1.5) * c.gamma());
            const auto w = laplace_w(p, c);
            const auto renewal = w / (1.0 - w) - R / p;
            const auto reg = laplace_G_regular(p, s);
            EXPECT_NEAR(std::abs(renewal - reg) / std::max(1.0, std::abs(reg)), 0.0, 1e-10);
            if (std::abs(s.kappa()) > 1e-3 * c.gamma()) {
                const auto lp = s.lambda_plus(), lm = s.lambda_minus(), k = s.kappa();
                const auto pf = R * (lm / (2.0 * k) / (p - lp) - lp / (2.0 * k) / (p - lm));
                EXPECT_NEAR(std::abs(pf - reg) / std::max(1.0, std::abs(reg)), 0.0, 1e-10);
            }
        }
        // Real on the real axis, vanishing at infinity.
        EXPECT_EQ(laplace_G_regular(0.7 * c.gamma(), s).imag(), 0.0);
        EXPECT_LT(std::abs(laplace_G_regular(1e12 * c.gamma(), s)), 1e-10);
    }
}

TEST(Laplace, ZeroFrequencyNoiseFromRegularPart)
{
    for (double a : {0.1, 0.25, 1.0, 4.0}) {
        const RenewalSpectrum s(CouplingParams::from_a(a, 1.7));
        EXPECT_NEAR(1.0 + 2.0 * laplace_G_regular(0.0, s).real(), pump_noise_ratio(a), 1e-14);
    }
}

TEST(Spectrum, VietaAndStability)
{
    for (const auto& c : random_couplings(50, 31)) {
        const RenewalSpectrum s(c);
        const double g = c.gamma();
        EXPECT_NEAR(std::abs(s.lambda_plus() + s.lambda_minus() + 3.0 * g) / g, 0.0, 1e-12);
        const double prod = 2 * g * g + c.rabi_sq();
        EXPECT_NEAR(std::abs(s.lambda_plus() * s.lambda_minus() - prod) / prod, 0.0, 1e-12);
        EXPECT_LT(s.lambda_plus().real(), 0.0);
        EXPECT_LT(s.lambda_minus().real(), 0.0);
    }
}

TEST(Correlation, ExcessStartsAtMinusOneAndDecays)
{
    for (const auto& c : random_couplings(20, 37)) {
        const RenewalSpectrum s(c);
        EXPECT_NEAR(g_excess(0.0, s), -1.0, 1e-15);
        EXPECT_NEAR(g_excess(400.0 / c.gamma(), s), 0.0, 1e-12);
    }
}

TEST(Correlation, IntegralReproducesPumpNoise)
{
    for (double a : {0.1, 0.25, 1.0, 4.0}) {
        const auto c = CouplingParams::from_a(a, 1.0);
        const RenewalSpectrum s(c);
        const double integral = oracle::integrate([&](double t) { return g_excess(t, s); }, 0.0, 60.0, 400);
        EXPECT_NEAR(1.0 + 2.0 * event_rate(c) * integral, 1.0 - 3.0 * a / ((1 + a) * (1 + a)), 1e-8);
    }
}

TEST(Correlation, MatchesRenewalSeriesByConvolution)
{
    // G(t) = w + w*w + ... solved as the renewal equation G = w + w*G on a grid.
    const auto c = CouplingParams::from_a(0.5, 1.0);
    const WaitingTimeLaw law(c);
    const RenewalSpectrum s(c);
    const double h = 2e-3;
    const int n = 5000;
    std::vector<double> w(n + 1), G(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = law.density(i * h);
    for (int i = 0; i <= n; ++i) {
        double conv = 0.0;
        for (int j = 1; j < i; ++j) conv += w[j] * G[i - j];
        conv += 0.5 * (w[i] * G[0] + w[0] * G[i]);
        G[i] = w[i] + h * conv;
    }
    const double R = event_rate(c);
    for (int i = 250; i <= n; i += 250)
        EXPECT_NEAR(G[i] / R - 1.0, g_excess(i * h, s), 2e-4);
}

TEST(Noise, PumpNoiseRatioValues)
{
    EXPECT_DOUBLE_EQ(pump_noise_ratio(1.0), 0.25);
    EXPECT_NEAR(pump_noise_ratio(0.25), 0.52, 1e-15);
    EXPECT_NEAR(pump_noise_ratio(1e9), 1.0, 1e-8);
    EXPECT_THROW(pump_noise_ratio(0.0), std::invalid_argument);
    EXPECT_THROW(pump_noise_ratio(-2.0), std::invalid_argument);
    EXPECT_DOUBLE_EQ(pump_noise_ratio(CouplingParams(2.0, 1.0)), 0.25);
}

TEST(Noise, PumpNoiseFloorIsOneQuarterAtAEqualsOne)
{
    for (double la = -3.0; la <= 3.0; la += 0.001) {
        const double a = std::pow(10.0, la);
        EXPECT_GE(pump_noise_ratio(a), 0.25 - 1e-15);
        if (std::abs(a - 1.0) > 1e-6) {
            EXPECT_GT(pump_noise_ratio(a), 0.25);
        }
    }
    const double h = 1e-6;
    EXPECT_LT(pump_noise_ratio(1.0 - h) - pump_noise_ratio(1.0 - 2 * h), 0.0);
    EXPECT_GT(pump_noise_ratio(1.0 + 2 * h) - pump_noise_ratio(1.0 + h), 0.0);
}

TEST(Noise, RateSensitivity)
{
    EXPECT_DOUBLE_EQ(rate_sensitivity(1.0), 0.5);
    EXPECT_NEAR(rate_sensitivity(1e-12), 0.0, 1e-11);
    EXPECT_THROW(rate_sensitivity(0.0), std::invalid_argument);
    // Finite difference of R(mu) with Omega_R^2 proportional to mu, gamma fixed.
    for (double a : {0.05, 0.25, 1.0, 7.0}) {
        const double gamma = 1.0, mu = 10.0;
        const double k = 2.0 * gamma * gamma / a / mu;   // Omega_R^2 = k mu
        const auto R = [&](double m) { return event_rate(CouplingParams(k * m, gamma)); };
        const double dm = 1e-4 * mu;
        const double fd = mu / R(mu) * (R(mu + dm) - R(mu - dm)) / (2 * dm);
        EXPECT_NEAR(fd, rate_sensitivity(a), 1e-6);
    }
}

TEST(Continuity, BranchPointsAgree)
{
    // Midpoint of values just on either side of alpha = 0 (or kappa = 0) must match
    // the value at the branch point, which is evaluated on the series path.
    const double gamma = 1.0;
    const double eps = 1e-6;
    for (double centre : {gamma, gamma / 2.0}) {
        const CouplingParams lo(std::pow(centre * (1 - eps), 2), gamma);
        const CouplingParams mid(centre * centre, gamma);
        const CouplingParams hi(std::pow(centre * (1 + eps), 2), gamma);
        const WaitingTimeLaw wl(lo), wm(mid), wh(hi);
        const RenewalSpectrum sl(lo), sm(mid), sh(hi);
        for (double t = 0.0; t < 30.0; t += 0.173) {
            EXPECT_NEAR(0.5 * (wl.density(t) + wh.density(t)), wm.density(t), 1e-10);
            EXPECT_NEAR(0.5 * (wl.cdf(t) + wh.cdf(t)), wm.cdf(t), 1e-10);
            EXPECT_NEAR(0.5 * (wl.damped_c2(t) + wh.damped_c2(t)).imag(), wm.damped_c2(t).imag(), 1e-10);
            EXPECT_NEAR(0.5 * (g_excess(t, sl) + g_excess(t, sh)), g_excess(t, sm), 1e-10);
        }
        const std::complex<double> p(0.3, 0.2);
        EXPECT_NEAR(std::abs(0.5 * (laplace_G_regular(p, sl) + laplace_G_regular(p, sh)) - laplace_G_regular(p, sm)), 0.0, 1e-10);
    }
}
