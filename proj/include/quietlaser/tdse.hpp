#pragma once

// First-principles check of the two-level picture: the driven box electron on
// a finite-difference grid, integrated with the implicit midpoint
// (Crank-Nicolson) scheme, plus the classical electron between reflecting
// walls. Links against LAPACK for the selected tridiagonal eigenpairs.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <lapacke.h>

#include "core_physics.hpp"

namespace quietlaser {

/// Interior points of [-d/2, d/2]; the wavefunction vanishes on both walls.
class SpatialGrid
{
  public:
    SpatialGrid(std::size_t n_points, const BoxGeometry& geom)
        : n_(n_points), width_(geom.width()), spacing_(geom.width() / static_cast<double>(n_points + 1))
    {
        if (n_points < 3)
            throw std::invalid_argument("grid needs at least 3 interior points");
    }

    std::size_t size() const { return n_; }
    double width() const { return width_; }
    double spacing() const { return spacing_; }
    double x(std::size_t j) const { return -width_ / 2.0 + static_cast<double>(j + 1) * spacing_; }
    BoxGeometry geometry() const { return BoxGeometry(width_); }

  private:
    std::size_t n_;
    double width_;
    double spacing_;
};

struct WaveFunction
{
    std::vector<std::complex<double>> amplitudes;
    double time = 0.0;

    double norm(const SpatialGrid& grid) const
    {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s * grid.spacing();
    }
};

/// Lowest two eigenpairs of the Dirichlet kinetic operator, normalised so that
/// sum psi^2 h = 1 and signed like cos(pi x/d) and sin(2 pi x/d).
struct BoxEigenstates
{
    std::array<double, 2> energies{};
    std::array<std::vector<double>, 2> functions;
};

inline BoxEigenstates eigenstates_numeric(const SpatialGrid& grid, const PhysicalConstants& c = {})
{
    const auto n = static_cast<lapack_int>(grid.size());
    std::vector<double> diag(grid.size(), 2.0);
    std::vector<double> off(grid.size() - 1, -1.0);
    std::vector<double> values(grid.size());
    std::vector<double> vectors(grid.size() * 2);
    std::vector<lapack_int> ifail(grid.size());
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(),
                                           0.0, 0.0, 1, 2, 0.0, &found, values.data(),
                                           vectors.data(), n, ifail.data());
    if (info != 0 || found != 2)
        throw std::runtime_error("eigenstates_numeric: LAPACK dstevx failed (info "
                                 + std::to_string(info) + ")");

    const double h = grid.spacing();
    const double scale = c.hbar * c.hbar / (2.0 * c.m * h * h);
    BoxEigenstates out;
    for (int k = 0; k < 2; ++k) {
        out.energies[k] = scale * values[k];
        std::vector<double> f(vectors.begin() + k * grid.size(),
                              vectors.begin() + (k + 1) * grid.size());
        double ss = 0.0, sign_probe = 0.0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            ss += f[j] * f[j];
            sign_probe += k == 0 ? f[j] : f[j] * grid.x(j);
        }
        const double norm = (sign_probe < 0 ? -1.0 : 1.0) / std::sqrt(ss * h);
        for (double& v : f) v *= norm;
        out.functions[k] = std::move(f);
    }
    return out;
}

/// x_12 = sum x psi_1 psi_2 h from numeric eigenfunctions.
inline double numeric_dipole(const SpatialGrid& grid, const BoxEigenstates& eig)
{
    double s = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        s += grid.x(j) * eig.functions[0][j] * eig.functions[1][j];
    return s * grid.spacing();
}

struct TdseSample
{
    double t;
    std::complex<double> c1;   // e^{i E_1 t/hbar} <psi_1|psi>
    std::complex<double> c2;
    double mean_x;             // <x>, m
    double energy;             // <H_0>, J
    double leakage;            // 1 - |C1|^2 - |C2|^2
};

struct TdseTrajectory
{
    std::vector<TdseSample> samples;
    WaveFunction final_state;
    double max_norm_drift = 0.0;
};

/// Crank-Nicolson integrator for H(t) = p^2/2m - (e v x / d) cos(omega t).
class TdseSolver
{
  public:
    static constexpr double norm_drift_limit = 1e-8;

    explicit TdseSolver(SpatialGrid grid, const PhysicalConstants& c = {})
        : grid_(grid), consts_(c), eig_(eigenstates_numeric(grid, c))
    {
    }

    const SpatialGrid& grid() const { return grid_; }
    const BoxEigenstates& eigenstates() const { return eig_; }
    const PhysicalConstants& constants() const { return consts_; }

    /// Numeric transition frequency (E_2 - E_1)/hbar.
    double transition_frequency() const { return (eig_.energies[1] - eig_.energies[0]) / consts_.hbar; }

    WaveFunction stationary_state(Level level) const
    {
        const auto& f = eig_.functions[level == Level::lower ? 0 : 1];
        WaveFunction psi;
        psi.amplitudes.assign(f.begin(), f.end());
        return psi;
    }

    /// Integrates from psi0.time to t_end with step dt, recording a sample every
    /// `record_every` steps (and at both ends).
    TdseTrajectory evolve(const WaveFunction& psi0, double v, double omega, double t_end, double dt,
                          std::size_t record_every = 1) const
    {
        if (!(omega > 0))
            throw std::invalid_argument("drive frequency must be positive");
        if (!(dt > 0) || dt > 0.01 * 2.0 * std::numbers::pi / omega * (1.0 + 1e-12))
            throw std::invalid_argument("dt must be positive and at most 1% of the drive period");
        if (psi0.amplitudes.size() != grid_.size())
            throw std::invalid_argument("wavefunction size does not match the grid");
        if (std::abs(psi0.norm(grid_) - 1.0) > 1e-10)
            throw std::invalid_argument("initial wavefunction must be normalised");
        if (record_every == 0) record_every = 1;

        const std::size_t n = grid_.size();
        const double h = grid_.spacing();
        const double kin = consts_.hbar * consts_.hbar / (2.0 * consts_.m * h * h);
        const double field = consts_.e * v / grid_.width();

        std::vector<double> xs(n);
        for (std::size_t j = 0; j < n; ++j) xs[j] = grid_.x(j);

        TdseTrajectory out;
        WaveFunction psi = psi0;
        std::vector<std::complex<double>> rhs(n), cprime(n);
        const double b = dt / (2.0 * consts_.hbar);
        const double bk = b * kin;

        const auto steps = static_cast<std::size_t>(std::ceil((t_end - psi0.time) / dt - 1e-9));
        out.samples.reserve(steps / record_every + 2);
        out.samples.push_back(sample(psi));
        for (std::size_t s = 0; s < steps; ++s) {
            const double t_mid = psi.time + dt / 2.0;
            const double drive = field * std::cos(omega * t_mid);
            auto& a = psi.amplitudes;
            // Complex products written out by hand: the library versions carry
            // inf/nan recovery that dominates this loop.
            // rhs = (1 - i b H) psi
            for (std::size_t j = 0; j < n; ++j) {
                const double bh = b * (2.0 * kin - drive * xs[j]);
                std::complex<double> nb = 0.0;
                if (j > 0) nb += a[j - 1];
                if (j + 1 < n) nb += a[j + 1];
                rhs[j] = {a[j].real() + bh * a[j].imag() - bk * nb.imag(),
                          a[j].imag() - bh * a[j].real() + bk * nb.real()};
            }
            // (1 + i b H) psi' = rhs by the Thomas algorithm; the off-diagonal is -i b kin.
            double cre = 0.0, cim = 0.0;
            std::complex<double> prev = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double dre = 1.0 - bk * cim;
                const double dim = b * (2.0 * kin - drive * xs[j]) + bk * cre;
                const double inv = 1.0 / (dre * dre + dim * dim);
                const double ire = dre * inv, iim = -dim * inv;
                cre = bk * iim;
                cim = -bk * ire;
                cprime[j] = {cre, cim};
                const double rre = rhs[j].real() - bk * prev.imag();
                const double rim = rhs[j].imag() + bk * prev.real();
                prev = {rre * ire - rim * iim, rre * iim + rim * ire};
                rhs[j] = prev;
            }
            a[n - 1] = rhs[n - 1];
            for (std::size_t j = n - 1; j-- > 0;) {
                const auto c = cprime[j];
                const auto x = a[j + 1];
                a[j] = {rhs[j].real() - (c.real() * x.real() - c.imag() * x.imag()),
                        rhs[j].imag() - (c.real() * x.imag() + c.imag() * x.real())};
            }
            psi.time = psi0.time + static_cast<double>(s + 1) * dt;

            if ((s + 1) % record_every == 0 || s + 1 == steps) {
                out.samples.push_back(sample(psi));
                out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.norm(grid_) - 1.0));
            }
        }
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.norm(grid_) - 1.0));
        if (out.max_norm_drift > norm_drift_limit)
            throw std::runtime_error("TdseSolver: norm drift exceeds tolerance");
        out.final_state = std::move(psi);
        return out;
    }

    TdseSample sample(const WaveFunction& psi) const
    {
        const std::size_t n = grid_.size();
        const double h = grid_.spacing();
        const double kin = consts_.hbar * consts_.hbar / (2.0 * consts_.m * h * h);
        std::complex<double> p1 = 0.0, p2 = 0.0, e0 = 0.0;
        double mx = 0.0;
        const auto& a = psi.amplitudes;
        for (std::size_t j = 0; j < n; ++j) {
            p1 += eig_.functions[0][j] * a[j];
            p2 += eig_.functions[1][j] * a[j];
            mx += grid_.x(j) * std::norm(a[j]);
            std::complex<double> ta = 2.0 * a[j];
            if (j > 0) ta -= a[j - 1];
            if (j + 1 < n) ta -= a[j + 1];
            e0 += std::conj(a[j]) * ta;
        }
        const double w1 = eig_.energies[0] / consts_.hbar;
        const double w2 = eig_.energies[1] / consts_.hbar;
        const auto c1 = std::polar(1.0, w1 * psi.time) * p1 * h;
        const auto c2 = std::polar(1.0, w2 * psi.time) * p2 * h;
        return {psi.time, c1, c2, mx * h, (e0 * kin * h).real(),
                psi.norm(grid_) - std::norm(c1) - std::norm(c2)};
    }

  private:
    SpatialGrid grid_;
    PhysicalConstants consts_;
    BoxEigenstates eig_;
};

/// <i(t)> = (e/d) d<x>/dt by central differences (one-sided at the ends).
inline std::vector<double> induced_current(const TdseTrajectory& traj, const BoxGeometry& geom,
                                           const PhysicalConstants& c = {})
{
    const auto& s = traj.samples;
    std::vector<double> out(s.size(), 0.0);
    if (s.size() < 2) return out;
    const double k = c.e / geom.width();
    for (std::size_t j = 0; j < s.size(); ++j) {
        const std::size_t lo = j == 0 ? 0 : j - 1;
        const std::size_t hi = j + 1 == s.size() ? j : j + 1;
        out[j] = k * (s[hi].mean_x - s[lo].mean_x) / (s[hi].t - s[lo].t);
    }
    return out;
}

/// max_t | |C2(t)|^2 - sin^2(rabi t / 2) |, times measured from the first sample.
inline double rabi_residual(const TdseTrajectory& traj, double rabi)
{
    double worst = 0.0;
    const double t0 = traj.samples.front().t;
    for (const auto& s : traj.samples) {
        const double r = std::sin(rabi * (s.t - t0) / 2.0);
        worst = std::max(worst, std::abs(std::norm(s.c2) - r * r));
    }
    return worst;
}

/// Least-squares fit of |C2|^2 = sin^2(W t/2), searching W in [0.7, 1.3] * guess.
inline double fit_rabi_frequency(const TdseTrajectory& traj, double guess)
{
    const double t0 = traj.samples.front().t;
    const auto cost = [&](double w) {
        double ss = 0.0;
        for (const auto& s : traj.samples) {
            const double r = std::sin(w * (s.t - t0) / 2.0);
            const double d = std::norm(s.c2) - r * r;
            ss += d * d;
        }
        return ss;
    };
    // Coarse scan first so Brent starts in the right basin.
    double best = guess, best_cost = cost(guess);
    for (int k = -30; k <= 30; ++k) {
        const double w = guess * (1.0 + 0.01 * k);
        const double cw = cost(w);
        if (cw < best_cost) {
            best_cost = cw;
            best = w;
        }
    }
    const auto [w, fw] = boost::math::tools::brent_find_minima(cost, best * 0.99, best * 1.01, 40);
    return w;
}

struct ClassicalSample
{
    double t;
    double x;        // m
    double p;        // kg m/s
    double current;  // (e/d) p/m, A
    int bounces;     // wall reflections so far
};

/// Classical electron driven by the uniform force (e v / d) cos(omega t),
/// velocity Verlet with elastic reflection at the walls x = +-d.
inline std::vector<ClassicalSample> classical_trajectory(double x0, double p0, double v, double omega,
                                                         double t_end, double dt,
                                                         const BoxGeometry& geom,
                                                         const PhysicalConstants& c = {})
{
    const double d = geom.width();
    if (!(std::abs(x0) <= d))
        throw std::invalid_argument("start position must lie between the walls at +-d");
    if (!(dt > 0) || !(t_end > 0))
        throw std::invalid_argument("dt and t_end must be positive");
    const double fscale = c.e * v / d;
    const auto force = [&](double t) { return fscale * std::cos(omega * t); };
    const double ik = c.e / d;

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    std::vector<ClassicalSample> out;
    out.reserve(steps + 1);
    double x = x0, p = p0, t = 0.0;
    int bounces = 0;
    out.push_back({t, x, p, ik * p / c.m, bounces});
    for (std::size_t s = 0; s < steps; ++s) {
        p += 0.5 * dt * force(t);
        x += dt * p / c.m;
        // A step is far shorter than a wall-to-wall transit, so one reflection suffices.
        if (x > d) {
            x = 2.0 * d - x;
            p = -p;
            ++bounces;
        } else if (x < -d) {
            x = -2.0 * d - x;
            p = -p;
            ++bounces;
        }
        t = static_cast<double>(s + 1) * dt;
        p += 0.5 * dt * force(t);
        out.push_back({t, x, p, ik * p / c.m, bounces});
    }
    return out;
}

}  // namespace quietlaser
