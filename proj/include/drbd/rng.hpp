#pragma once

#include <array>
#include <cstdint>

namespace drbd {

/// Philox 4x32-10 block function (Salmon et al., "Parallel random
/// numbers: as easy as 1, 2, 3"). Counter-based, so any (counter, key)
/// pair can be generated independently of all others.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Uniform variate in [0, 1) for the given (seed, stream, counter)
/// triple. Streams index blocks and draw slots, counters index samples;
/// the value depends only on the triple, never on call order, which makes
/// parallel simulation bit-reproducible for any worker count.
double u01(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

}  // namespace drbd
