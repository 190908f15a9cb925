#ifndef ITISC_RNG_HPP
#define ITISC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace itisc {

inline constexpr double kPi = 3.14159265358979323846;

/// Seeded random source with a fully pinned cross-platform stream.
///
/// Backed by std::mt19937_64, whose raw 64-bit output sequence is fixed by the
/// C++ standard. All derived draws use documented mappings of that sequence
/// (never std::uniform_*_distribution, whose outputs are implementation
/// defined), so equal seeds give bit-identical streams everywhere:
///  - uniform():   (next_u64() >> 11) * 2^-53, in [0, 1)
///  - gaussian():  Box-Muller on one uniform in (0, 1] and one in [0, 1),
///                 second variate of each pair cached and returned next
///  - uniform_index(n): rejection sampling on masked low bits, unbiased
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform draw in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform draw in (0, 1]; safe as a logarithm argument.
    double uniform_positive() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal draw via the Box-Muller transform.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_positive();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * kPi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Uniform integer in [0, n). Rejection on masked bits keeps it unbiased.
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
        if (n == 1) return 0;
        std::uint64_t mask = n - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next_u64() & mask;
            if (v < n) return static_cast<std::size_t>(v);
        }
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace itisc

#endif  // ITISC_RNG_HPP
