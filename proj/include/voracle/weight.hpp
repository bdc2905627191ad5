#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace voracle {

/// Lexicographic arc weight: a non-negative length plus a perturbation
/// component used to make shortest paths unique. Comparison is strictly
/// lexicographic (length first), addition is componentwise and checked.
struct Weight {
    std::uint64_t length = 0;
    std::uint64_t tie = 0;

    static constexpr std::uint64_t kInfLength =
        std::numeric_limits<std::uint64_t>::max();

    static constexpr Weight zero() { return Weight{0, 0}; }
    static constexpr Weight infinity() { return Weight{kInfLength, 0}; }

    constexpr bool is_infinite() const { return length == kInfLength; }

    friend constexpr bool operator==(const Weight& a, const Weight& b) {
        return a.length == b.length && a.tie == b.tie;
    }
    friend constexpr bool operator!=(const Weight& a, const Weight& b) {
        return !(a == b);
    }
    friend constexpr bool operator<(const Weight& a, const Weight& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.tie < b.tie;
    }
    friend constexpr bool operator>(const Weight& a, const Weight& b) { return b < a; }
    friend constexpr bool operator<=(const Weight& a, const Weight& b) { return !(b < a); }
    friend constexpr bool operator>=(const Weight& a, const Weight& b) { return !(a < b); }

    /// Checked addition. Infinity absorbs; finite sums that would wrap or
    /// reach the reserved infinite length throw.
    friend Weight operator+(const Weight& a, const Weight& b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        Weight r;
        if (__builtin_add_overflow(a.length, b.length, &r.length) ||
            r.length == kInfLength)
            throw std::overflow_error("weight length overflow");
        if (__builtin_add_overflow(a.tie, b.tie, &r.tie))
            throw std::overflow_error("weight tie overflow");
        return r;
    }
    Weight& operator+=(const Weight& b) { return *this = *this + b; }

    std::string str() const {
        if (is_infinite()) return "inf";
        return std::to_string(length) + "+" + std::to_string(tie) + "t";
    }
};

/// splitmix64; the fixed mixer behind arc perturbation.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Perturbation ties are bounded so that sums over any simple path fit
/// comfortably in 64 bits (n below 2^20 leaves 2^64 / 2^40 headroom).
constexpr std::uint64_t kTieBits = 40;
constexpr std::uint64_t kTieMask = (std::uint64_t{1} << kTieBits) - 1;

constexpr std::uint64_t tie_for_dart(std::uint64_t seed, std::uint32_t dart) {
    return mix64(seed ^ (0xa5a5a5a5ULL * (dart + 1))) & kTieMask;
}

}  // namespace voracle
