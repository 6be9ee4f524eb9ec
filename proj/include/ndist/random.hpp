#pragma once

#include <cstdint>
#include <random>

namespace ndist {

using Rng = std::mt19937_64;

namespace detail {
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

/// Independent stream keyed by (seed, index). Results depend only on the
/// key, never on which worker draws them or in what order.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index, std::uint64_t domain = 0) {
  const std::uint64_t a = detail::splitmix64(seed ^ detail::splitmix64(domain));
  const std::uint64_t b = detail::splitmix64(a ^ detail::splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

// Stream domains, so sampling and refinement never share draws.
inline constexpr std::uint64_t kSampleDomain = 1;
inline constexpr std::uint64_t kRefineDomain = 2;
inline constexpr std::uint64_t kPermutationDomain = 3;

}  // namespace ndist
