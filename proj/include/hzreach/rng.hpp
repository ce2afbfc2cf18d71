#pragma once

#include <cstdint>

namespace hzreach
{

/// splitmix64; self-contained so seeded runs are reproducible byte-for-byte
/// across standard libraries.
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double sign() { return (next() & 1ull) ? 1.0 : -1.0; }

private:
    std::uint64_t state_;
};

} // namespace hzreach
