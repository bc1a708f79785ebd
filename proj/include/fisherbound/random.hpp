#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace fisherbound {

/// Identifies one reproducible random stream.
///
/// Streams are generated in fixed-size blocks; each block owns an engine
/// seeded from (seed, stream, substream, block index), so any range of a
/// stream can be produced independently and the result never depends on
/// evaluation order or thread count.
struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t substream = 0;

  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

inline constexpr std::size_t kStreamBlockSize = std::size_t{1} << 16;

/// Fills `out` with standard normal variates from the stream.
void fill_standard_normals(const StreamKey& key, std::span<double> out);

/// Fills `out` with uniforms on the open interval (0, 1).
void fill_uniforms(const StreamKey& key, std::span<double> out);

}  // namespace fisherbound
