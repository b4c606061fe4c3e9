#pragma once

// Binary extension fields GF(2^w), w in {8, 16, 32}. Addition is XOR of
// coefficient vectors; multiplication is carry-less followed by reduction
// modulo a fixed irreducible polynomial.

#include <bit>
#include <cstdint>
#include <random>

namespace kconv {

template <unsigned W>
struct FieldModulus;

// x^8 + x^4 + x^3 + x + 1
template <>
struct FieldModulus<8> {
    static constexpr std::uint64_t value = 0x11B;
};
// x^16 + x^12 + x^3 + x + 1
template <>
struct FieldModulus<16> {
    static constexpr std::uint64_t value = 0x1100B;
};
// x^32 + x^7 + x^3 + x^2 + 1
template <>
struct FieldModulus<32> {
    static constexpr std::uint64_t value = 0x10000008DULL;
};

template <unsigned W>
class GF2w {
    static_assert(W == 8 || W == 16 || W == 32, "supported extension degrees: 8, 16, 32");

public:
    static constexpr unsigned bits = W;
    static constexpr std::uint64_t modulus = FieldModulus<W>::value;
    static constexpr std::uint64_t mask = (std::uint64_t{1} << W) - 1;

    constexpr GF2w() = default;
    constexpr explicit GF2w(std::uint64_t v) : value_(v & mask) {}

    static constexpr GF2w zero() { return GF2w(0); }
    static constexpr GF2w one() { return GF2w(1); }

    template <class Rng>
    static GF2w random(Rng& rng) {
        return GF2w(std::uniform_int_distribution<std::uint64_t>(0, mask)(rng));
    }

    constexpr std::uint64_t value() const { return value_; }
    constexpr bool is_zero() const { return value_ == 0; }

    friend constexpr GF2w operator+(GF2w a, GF2w b) { return GF2w(a.value_ ^ b.value_); }
    friend constexpr GF2w operator-(GF2w a, GF2w b) { return a + b; }
    constexpr GF2w& operator+=(GF2w o) {
        value_ ^= o.value_;
        return *this;
    }

    friend constexpr GF2w operator*(GF2w a, GF2w b) { return GF2w(reduce(clmul(a.value_, b.value_))); }
    constexpr GF2w& operator*=(GF2w o) { return *this = *this * o; }

    /// Multiplicative inverse via a^(2^W - 2). Zero maps to zero.
    constexpr GF2w inverse() const {
        GF2w result = one();
        GF2w base = *this;
        std::uint64_t e = mask - 1;
        while (e) {
            if (e & 1)
                result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    friend constexpr GF2w operator/(GF2w a, GF2w b) { return a * b.inverse(); }

    friend constexpr bool operator==(GF2w, GF2w) = default;

private:
    static constexpr std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
        std::uint64_t r = 0;
        for (unsigned i = 0; i < W; ++i)
            r ^= (a << i) & (std::uint64_t{0} - ((b >> i) & 1));
        return r;
    }

    // Fold the high part back using x^W = modulus - x^W.
    static constexpr std::uint64_t reduce(std::uint64_t p) {
        constexpr std::uint64_t low = modulus & mask;
        while (p >> W) {
            const std::uint64_t hi = p >> W;
            p &= mask;
            for (std::uint64_t l = low; l; l &= l - 1)
                p ^= hi << std::countr_zero(l);
        }
        return p;
    }

    std::uint64_t value_ = 0;
};

using Gf32 = GF2w<32>;

} // namespace kconv
