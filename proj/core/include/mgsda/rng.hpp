#pragma once

#include <cstdint>
#include <random>

namespace mgsda {

// Derive an independent sub-stream seed from a base seed and a stream index.
// Splitmix64 finalizer: cheap, well-mixed, and stable across platforms.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

} // namespace mgsda
