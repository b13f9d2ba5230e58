#pragma once

#include <cmath>
#include <cstdint>

namespace credit {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// Each (seed, scenario, stream) triple owns an independent substream, so
// simulation results do not depend on thread count or scheduling.
//
// Counter layout: {block_index, stream_id, scenario_lo, scenario_hi},
// key = {seed_lo, seed_hi}.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t scenario, std::uint32_t stream)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_(stream),
          scen_lo_(static_cast<std::uint32_t>(scenario)),
          scen_hi_(static_cast<std::uint32_t>(scenario >> 32)) {}

    std::uint64_t next_u64() {
        if (have_words_) {
            have_words_ = false;
            return spare_words_;
        }
        std::uint32_t c0 = block_++;
        std::uint32_t x0 = c0, x1 = stream_, x2 = scen_lo_, x3 = scen_hi_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(0xD2511F53u) * x0;
            std::uint64_t p1 = static_cast<std::uint64_t>(0xCD9E8D57u) * x2;
            std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            std::uint32_t y0 = hi1 ^ x1 ^ k0;
            std::uint32_t y1 = lo1;
            std::uint32_t y2 = hi0 ^ x3 ^ k1;
            std::uint32_t y3 = lo0;
            x0 = y0; x1 = y1; x2 = y2; x3 = y3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        spare_words_ = (static_cast<std::uint64_t>(x2) << 32) | x3;
        have_words_ = true;
        return (static_cast<std::uint64_t>(x0) << 32) | x1;
    }

    /// Uniform draw in the open interval (0,1).
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    /// Standard normal draw via Box-Muller on two uniforms.
    double next_normal() {
        if (have_normal_) {
            have_normal_ = false;
            return spare_normal_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.2831853071795864769 * u2;
        spare_normal_ = r * std::sin(a);
        have_normal_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint32_t key0_, key1_;
    std::uint32_t stream_, scen_lo_, scen_hi_;
    std::uint32_t block_ = 0;
    std::uint64_t spare_words_ = 0;
    double spare_normal_ = 0.0;
    bool have_words_ = false;
    bool have_normal_ = false;
};

} // namespace credit
