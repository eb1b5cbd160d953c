#pragma once

#include <cstdint>
#include <string>

namespace gonal {

// Gonal values grow like (m-2)x^2/2; 64 bits overflow already for
// m, x near 2^31, so all evaluation runs through 128-bit integers.
using int128 = __int128;
using uint128 = unsigned __int128;

inline std::string to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    uint128 u = neg ? uint128(-(v + 1)) + 1 : uint128(v);
    char buf[48];
    int pos = 48;
    while (u > 0) {
        buf[--pos] = char('0' + int(u % 10));
        u /= 10;
    }
    if (neg) buf[--pos] = '-';
    return std::string(buf + pos, std::string::size_type(48 - pos));
}

// floor(sqrt(n)) by pure integer Newton iteration. Seeded from the bit
// length so it converges in a handful of steps; never touches floating
// point, which matters when n sits next to a perfect square.
inline uint128 isqrt(uint128 n) {
    if (n == 0) return 0;
    int bits = 0;
    for (uint128 t = n; t > 0; t >>= 1) ++bits;
    uint128 x = uint128(1) << ((bits + 1) / 2);  // x >= sqrt(n)
    while (true) {
        uint128 y = (x + n / x) >> 1;
        if (y >= x) break;
        x = y;
    }
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

// exact square test; root receives floor(sqrt(n)) either way
inline bool is_square(uint128 n, uint128& root) {
    root = isqrt(n);
    return root * root == n;
}

}  // namespace gonal
