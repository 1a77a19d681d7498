#ifndef BOARDSIM_RNG_HPP
#define BOARDSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace boardsim {

using Rng = std::mt19937_64;

// Independent purposes inside one run draw from separate streams, so two
// scenarios sharing a master seed see the same network for the same run index.
enum class Stream : std::uint64_t {
    network = 1,
    board_sizes = 2,
    initial_seats = 3,
    dynamics = 4,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t run_index,
                                       Stream purpose) noexcept
{
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ splitmix64(run_index + 0x632be59bd9b4e019ULL));
    return splitmix64(h ^ static_cast<std::uint64_t>(purpose));
}

inline Rng make_rng(std::uint64_t master, std::uint64_t run_index, Stream purpose)
{
    return Rng{substream_seed(master, run_index, purpose)};
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be > 0.
inline std::size_t uniform_index(Rng& rng, std::size_t n)
{
    return std::uniform_int_distribution<std::size_t>{0, n - 1}(rng);
}

} // namespace boardsim

#endif // BOARDSIM_RNG_HPP
