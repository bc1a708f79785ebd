#include "fisherbound/random.hpp"

#include <algorithm>
#include <random>

namespace fisherbound {
namespace {

std::mt19937_64 block_engine(const StreamKey& key, std::uint64_t block) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(key.seed),      hi(key.seed),      lo(key.stream), hi(key.stream),
                    lo(key.substream), hi(key.substream), lo(block),      hi(block)};
  return std::mt19937_64(seq);
}

template <typename Fill>
void fill_blocks(const StreamKey& key, std::span<double> out, Fill fill) {
  for (std::size_t start = 0, block = 0; start < out.size(); start += kStreamBlockSize, ++block) {
    const std::size_t count = std::min(kStreamBlockSize, out.size() - start);
    auto engine = block_engine(key, block);
    fill(engine, out.subspan(start, count));
  }
}

}  // namespace

void fill_standard_normals(const StreamKey& key, std::span<double> out) {
  fill_blocks(key, out, [](std::mt19937_64& engine, std::span<double> chunk) {
    std::normal_distribution<double> normal;
    for (double& v : chunk) v = normal(engine);
  });
}

void fill_uniforms(const StreamKey& key, std::span<double> out) {
  fill_blocks(key, out, [](std::mt19937_64& engine, std::span<double> chunk) {
    for (double& v : chunk) {
      // 53 random bits mapped to the centre of their cell: never 0 or 1.
      v = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    }
  });
}

}  // namespace fisherbound
