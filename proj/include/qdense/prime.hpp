#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qdense/rational.hpp"

namespace qdense {
namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs. The witness set
/// {2,...,37} is exact for every n < 3.3e24, which covers uint64.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace detail

/// A validated prime number. Construction runs a primality check that is
/// deterministic over the whole 64-bit range; anything larger is out of
/// this library's intended range and must be rejected by the caller.
class Prime {
public:
    explicit Prime(std::uint64_t value) : value_(value) {
        if (!detail::is_prime_u64(value))
            throw std::invalid_argument("Prime: " + std::to_string(value) + " is not prime");
    }

    std::uint64_t value() const { return value_; }
    bool is_two() const { return value_ == 2; }
    Int as_int() const { return Int(static_cast<unsigned long>(value_)); }

    friend bool operator==(const Prime& a, const Prime& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Prime& a, const Prime& b) { return a.value_ != b.value_; }
    friend bool operator<(const Prime& a, const Prime& b) { return a.value_ < b.value_; }

private:
    std::uint64_t value_;
};

} // namespace qdense
