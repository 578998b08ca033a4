#include "osa/channel_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "osa/rng.hpp"

namespace osa {

ChannelModel::ChannelModel(std::vector<double> mu, double theta,
                           std::uint64_t seed)
    : mu_(std::move(mu)), theta_(theta), seed_(seed) {
    if (mu_.empty()) throw std::invalid_argument("mu must be non-empty");
    double mu_min = 1.0;
    for (std::size_t i = 0; i < mu_.size(); ++i) {
        if (!(mu_[i] > 0.0) || mu_[i] > 1.0)
            throw std::invalid_argument("mu[" + std::to_string(i) +
                                        "] outside (0,1]");
        mu_min = std::min(mu_min, mu_[i]);
        for (std::size_t j = 0; j < i; ++j)
            if (mu_[i] == mu_[j])
                throw std::invalid_argument("channel statistics must be distinct");
    }
    if (!(theta_ > 0.0) || theta_ > mu_min)
        throw std::invalid_argument("theta must satisfy 0 < theta <= min(mu)");
}

bool ChannelModel::channel_vacant(int channel, long t) const {
    std::uint64_t bits = counter_hash(seed_, static_cast<std::uint64_t>(channel),
                                      static_cast<std::uint64_t>(t));
    return to_unit_double(bits) < mu_[static_cast<std::size_t>(channel)];
}

VacancyVector ChannelModel::sample_slot(long t) const {
    if (t < 1) throw std::invalid_argument("slot index must be >= 1");
    VacancyVector v;
    v.slot = t;
    v.vacant.resize(mu_.size());
    for (int i = 0; i < num_channels(); ++i) v.vacant[i] = channel_vacant(i, t);
    return v;
}

ScriptedVacancies::ScriptedVacancies(int n,
                                     std::map<int, std::vector<long>> vacant_slots)
    : n_(n), vacant_(static_cast<std::size_t>(n)) {
    for (auto& [ch, slots] : vacant_slots) {
        if (ch < 0 || ch >= n) throw std::invalid_argument("scripted channel out of range");
        for (long s : slots) vacant_[static_cast<std::size_t>(ch)][s] = true;
    }
}

VacancyVector ScriptedVacancies::sample_slot(long t) const {
    VacancyVector v;
    v.slot = t;
    v.vacant.resize(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
        v.vacant[i] = vacant_[static_cast<std::size_t>(i)].count(t) > 0;
    return v;
}

}  // namespace osa
