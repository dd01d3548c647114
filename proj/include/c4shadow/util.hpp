#pragma once

#include <cstdint>
#include <string>

namespace c4s {

// splitmix64 finalizer; bijective avalanche mix.
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Formats with 12 significant digits (%.12g), the precision used for all
// numeric output: reports, store files, CSV, and circuit dumps.
std::string g12(double v);

}  // namespace c4s
