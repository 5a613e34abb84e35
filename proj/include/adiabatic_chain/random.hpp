#pragma once

#include <cstdint>
#include <random>

namespace adiabatic_chain {

/// SplitMix64 finalizer. Used to derive independent, platform-stable stream
/// seeds from a master seed and a cell index.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept
{
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

/// Uniform draw on the open interval (0, 1) with 53-bit resolution.
/// std::uniform_real_distribution is not bit-identical across standard
/// libraries, so the mapping from engine output is done by hand.
inline double open_unit_uniform(std::mt19937_64& engine)
{
  constexpr double scale = 1.0 / 9007199254740992.0; // 2^-53
  return (static_cast<double>(engine() >> 11) + 0.5) * scale;
}

} // namespace adiabatic_chain
