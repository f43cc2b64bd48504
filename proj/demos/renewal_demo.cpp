// Counting statistics of the decay events for a few values of a: Fano factor
// at a long window against 1 - 3a/(1+a)^2, and how it falls from 1 as the
// window grows.

#include <cstdio>

#include "quietlaser/renewal.hpp"

using namespace quietlaser;

int main()
{
    std::printf("%8s %10s %10s %10s\n", "a", "fano", "std_err", "theory");
    for (double a : {0.1, 0.25, 1.0, 4.0, 100.0}) {
        const CouplingParams c = CouplingParams::from_a(a, 1.0);
        const double tau = mean_waiting_time(c);
        const EventTrain tr = generate_event_train(WaitingTimeLaw(c), 1e5 * tau, 1);
        const CountStatistics st = fano_factor(tr, 100.0 * tau);
        std::printf("%8g %10.4f %10.4f %10.4f\n", a, st.fano, st.std_err, pump_noise_ratio(a));
    }

    std::printf("\nwindow dependence at a = 1\n%10s %10s\n", "window/tau", "fano");
    const CouplingParams c = CouplingParams::from_a(1.0, 1.0);
    const double tau = mean_waiting_time(c);
    const EventTrain tr = generate_event_train(WaitingTimeLaw(c), 1e5 * tau, 2);
    for (double w : {0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0})
        std::printf("%10g %10.4f\n", w, fano_factor(tr, w * tau).fano);
}
