#pragma once
#include <cstddef>
#include <cstdint>

namespace lk {

inline std::size_t hash_mix(std::size_t h, std::size_t v) {
    // 64-bit variant of boost::hash_combine
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 12) + (h >> 4);
    return h;
}

inline std::size_t hash_str(char const * s, std::size_t len, std::size_t seed) {
    std::size_t h = seed ^ 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; i++) {
        h ^= static_cast<unsigned char>(s[i]);
        h *= 0x100000001b3ull;
    }
    return h;
}

}
