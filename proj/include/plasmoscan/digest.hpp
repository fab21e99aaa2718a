#pragma once

#include <cstdint>
#include <cstring>
#include <vector>

namespace plasmoscan {

inline constexpr std::uint64_t kFnvOffsetBasis = 1469598103934665603ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

/// FNV-1a over a byte range; used for intermediate-stage digests.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = kFnvOffsetBasis) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

template <typename T>
std::uint64_t fnv1a64_values(const std::vector<T>& v,
                             std::uint64_t h = kFnvOffsetBasis) {
    return fnv1a64(v.data(), v.size() * sizeof(T), h);
}

}  // namespace plasmoscan
