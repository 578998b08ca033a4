#ifndef OSA_CHANNEL_MODEL_HPP
#define OSA_CHANNEL_MODEL_HPP

#include <cstdint>
#include <map>
#include <vector>

namespace osa {

// Per-slot ground truth: vacant[i] == true means no PU on channel i.
struct VacancyVector {
    long slot = 0;
    std::vector<bool> vacant;
};

// Source of the shared vacancy realizations all SUs observe.
class VacancySource {
  public:
    virtual ~VacancySource() = default;
    virtual int num_channels() const = 0;
    virtual VacancyVector sample_slot(long t) const = 0;
};

// Ground-truth channel statistics. Channel i is vacant in any slot with
// probability mu[i], i.i.d. across slots and independent across channels.
// Realizations are generated counter-mode from (seed, channel, slot), so
// any slot can be queried in any order with identical results.
class ChannelModel : public VacancySource {
  public:
    ChannelModel(std::vector<double> mu, double theta, std::uint64_t seed);

    int num_channels() const override { return static_cast<int>(mu_.size()); }
    VacancyVector sample_slot(long t) const override;
    bool channel_vacant(int channel, long t) const;

    const std::vector<double>& mu() const { return mu_; }
    double theta() const { return theta_; }
    std::uint64_t seed() const { return seed_; }

  private:
    std::vector<double> mu_;
    double theta_;
    std::uint64_t seed_;
};

// Fixed vacancy script for replay fixtures: every channel is PU-busy in
// every slot except those listed per channel.
class ScriptedVacancies : public VacancySource {
  public:
    ScriptedVacancies(int n, std::map<int, std::vector<long>> vacant_slots);

    int num_channels() const override { return n_; }
    VacancyVector sample_slot(long t) const override;

  private:
    int n_;
    std::vector<std::map<long, bool>> vacant_;
};

}  // namespace osa

#endif
