// Drives the box electron at its transition frequency and prints the upper
// level population next to the two-level prediction sin^2(Omega_R t / 2).

#include <cmath>
#include <cstdio>
#include <numbers>

#include "quietlaser/core_physics.hpp"
#include "quietlaser/tdse.hpp"

using namespace quietlaser;

int main()
{
    const double pi = std::numbers::pi;
    const BoxGeometry box = box_width_for_frequency(2.0 * pi * 1.42e9);
    const TdseSolver solver(SpatialGrid(512, box));
    const double omega = solver.transition_frequency();
    const double rabi = 1e-2 * omega;
    const double v = potential_for_rabi_frequency(rabi, box);

    std::printf("box width %.4g m, drive amplitude %.3g V, Omega_R/omega = %.0e\n", box.width(), v, rabi / omega);
    const auto tr = solver.evolve(solver.stationary_state(Level::lower), v, omega, 2.0 * pi / rabi,
                                  2.0 * pi / omega / 400.0, 2000);
    std::printf("%12s %12s %12s\n", "t*Omega_R", "|C2|^2", "sin^2");
    for (const auto& s : tr.samples) {
        const double r = std::sin(rabi * s.t / 2.0);
        std::printf("%12.4f %12.6f %12.6f\n", rabi * s.t, std::norm(s.c2), r * r);
    }
    std::printf("max residual %.4f, fitted Omega_R / predicted = %.5f\n", rabi_residual(tr, rabi),
                fit_rabi_frequency(tr, rabi) / rabi);
}
