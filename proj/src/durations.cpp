#include "osa/durations.hpp"

#include <cmath>
#include <stdexcept>

namespace osa {
namespace durations {

namespace {

// Guard against results landing an epsilon above an integer, either from
// raw floating-point noise (ln(0.25)/ln(0.5) = 2 + 4e-16) or from
// accumulated relative error in larger products.
constexpr double kCeilGuard = 1e-9;

long guarded_ceil(double x) {
    double guard = std::max(kCeilGuard, std::abs(x) * 1e-6);
    return static_cast<long>(std::ceil(x - guard));
}

void check_prob(double p, const char* name) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument(std::string(name) + " must be in (0,1)");
}

}  // namespace

long t_rh(int n, double theta, double delta1) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    check_prob(theta, "theta");
    check_prob(delta1, "delta1");
    // (1 - 1/N)^(N-1) with the N = 1 case defined as 1 (0^0).
    double stay = n == 1 ? 1.0 : std::pow(1.0 - 1.0 / n, n - 1);
    double p_nc = theta * stay;
    return guarded_ceil(std::log(delta1 / n) / std::log(1.0 - p_nc));
}

long t_sh(int n, double epsilon, double delta2) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("epsilon must be in (0,1]");
    check_prob(delta2, "delta2");
    double val = (2.0 * n / (epsilon * epsilon)) * std::log(2.0 * n * n / delta2);
    return guarded_ceil(val);
}

long n_probe(double mu_hat, double delta_prime) {
    check_prob(delta_prime, "delta_prime");
    if (mu_hat >= 1.0) return 1;  // certain vacancy, first probe conclusive
    if (!(mu_hat > 0.0))
        throw std::invalid_argument("mu_hat must be positive: channel never vacant");
    return guarded_ceil(std::log(delta_prime) / std::log(1.0 - mu_hat));
}

ProbeBudgetTable m_table(const std::vector<double>& ranked_mu_hat,
                         double delta_prime) {
    ProbeBudgetTable table;
    table.n_probe.reserve(ranked_mu_hat.size());
    table.m_budget.reserve(ranked_mu_hat.size());
    long prefix = 0;
    for (double mu : ranked_mu_hat) {
        table.m_budget.push_back(prefix);
        long n = n_probe(mu, delta_prime);
        table.n_probe.push_back(n);
        prefix += n;
    }
    return table;
}

long t_tr(int n, double theta, double delta3, int u) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (u < 1 || u > n) throw std::invalid_argument("u must be in [1, n]");
    check_prob(theta, "theta");
    check_prob(delta3, "delta3");
    if (n == 1) return 0;
    long per_channel =
        guarded_ceil(std::log(delta3 / (static_cast<double>(n) * u)) /
                     std::log(1.0 - theta));
    return per_channel * (static_cast<long>(n) * (n - 1) / 2);
}

long t_bci(int n, double theta, double delta) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    check_prob(theta, "theta");
    check_prob(delta, "delta");
    if (n == 1) return 0;
    long per_channel =
        guarded_ceil(std::log(delta / 3.0) / std::log(1.0 - theta));
    return per_channel * (static_cast<long>(n) * (n - 1) / 2);
}

long x_switches(long t_horizon, long t_cc, long t_bci_slots, long t_tl,
                long t_en) {
    long numerator = t_horizon - t_cc - t_bci_slots - t_en;
    if (numerator <= 0) return 0;
    long cycle = t_tl + t_bci_slots;
    if (cycle <= 0) throw std::invalid_argument("t_tl + t_bci must be positive");
    return (numerator + cycle - 1) / cycle;
}

double default_delta_prime(int n, double delta3) {
    return delta3 / (static_cast<double>(n) * n);
}

}  // namespace durations
}  // namespace osa
