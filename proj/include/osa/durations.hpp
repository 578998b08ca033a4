#ifndef OSA_DURATIONS_HPP
#define OSA_DURATIONS_HPP

#include <vector>

namespace osa {
namespace durations {

// Phase-duration and probe-budget formulas used by the trekking policies
// and by the "explain" tooling. All ceilings are applied once, at the end,
// with a small guard against floating-point overshoot on exact ratios.

// Per-channel probe counts and their prefix sums. With 0-based rank r,
// m_budget[r] = sum of n_probe over all strictly better ranks (m_budget[0] = 0).
struct ProbeBudgetTable {
    std::vector<long> n_probe;
    std::vector<long> m_budget;
};

// Slots of uniform random hopping after which all SUs sit on
// non-overlapping channels with probability at least 1 - delta1.
long t_rh(int n, double theta, double delta1);

// Slots of sequential hopping after which every SU holds an
// epsilon-correct channel ranking with probability at least 1 - delta2.
long t_sh(int n, double epsilon, double delta2);

// Smallest k with (1 - mu_hat)^k <= delta_prime: probing a channel for k
// slots sees it vacant at least once with probability >= 1 - delta_prime.
long n_probe(double mu_hat, double delta_prime);

// Probe budgets for a best-first ranked estimate vector.
ProbeBudgetTable m_table(const std::vector<double>& ranked_mu_hat,
                         double delta_prime);

// Worst-case total trekking time until all U SUs settle in top channels.
long t_tr(int n, double theta, double delta3, int u);

// Worst-case duration of one best-channel-identification pass (dynamic
// networks). Independent of the SU count; formula uses delta/3.
long t_bci(int n, double theta, double delta);

// Number of TL<->BCI switches over horizon T for an SU arriving at t_en
// (t_en = 0 gives x_0). Zero when the SU arrives too late to ever switch.
long x_switches(long t_horizon, long t_cc, long t_bci_slots, long t_tl,
                long t_en);

// Default per-probe failure probability: delta3 split by a union bound
// over N channels and the worst-case U = N SUs.
double default_delta_prime(int n, double delta3);

}  // namespace durations
}  // namespace osa

#endif
