#pragma once

#include <cmath>
#include <cstdint>

namespace liq {

/// Counter-based generator (Philox4x32-10). A (seed, stream) pair selects an
/// independent sequence; output is a pure function of (seed, stream, counter),
/// so simulations are bitwise reproducible regardless of thread count.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          ctr2_(static_cast<std::uint32_t>(stream)),
          ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

    std::uint64_t next_u64() {
        if (have_ == 0) refill();
        --have_;
        return buf_[have_];
    }

    /// Uniform on (0, 1).
    double uniform01() {
        const std::uint64_t u = next_u64() >> 11;  // 53 bits
        return (static_cast<double>(u) + 0.5) * (1.0 / 9007199254740992.0);
    }

    /// Uniform on [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Exponential with the given rate.
    double exponential(double rate) { return -std::log(uniform01()) / rate; }

  private:
    static std::uint32_t mulhi(std::uint32_t a, std::uint32_t b) {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) >> 32);
    }

    void refill() {
        std::uint32_t c0 = static_cast<std::uint32_t>(n_);
        std::uint32_t c1 = static_cast<std::uint32_t>(n_ >> 32);
        std::uint32_t c2 = ctr2_, c3 = ctr3_;
        std::uint32_t k0 = key0_, k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            const std::uint32_t hi0 = mulhi(0xD2511F53u, c0);
            const std::uint32_t lo0 = 0xD2511F53u * c0;
            const std::uint32_t hi1 = mulhi(0xCD9E8D57u, c2);
            const std::uint32_t lo1 = 0xCD9E8D57u * c2;
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0; c1 = n1; c2 = n2; c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = (static_cast<std::uint64_t>(c1) << 32) | c0;
        buf_[1] = (static_cast<std::uint64_t>(c3) << 32) | c2;
        have_ = 2;
        ++n_;
    }

    std::uint32_t key0_, key1_, ctr2_, ctr3_;
    std::uint64_t n_ = 0;
    std::uint64_t buf_[2] = {0, 0};
    int have_ = 0;
};

}  // namespace liq
