#include <gtest/gtest.h>

#include <random>

#include <kconv/gf2w.hpp>

using namespace kconv;

namespace {

// GF(2)[x] helpers on 64-bit words, for polynomials of degree < 64.
int degree(std::uint64_t p) { return p ? 63 - __builtin_clzll(p) : -1; }

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
    const int dm = degree(m);
    while (degree(a) >= dm)
        a ^= m << (degree(a) - dm);
    return a;
}

// a*b mod m with a, b already reduced (degree < deg m <= 32)
std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t r = 0;
    for (int i = 0; i <= degree(b); ++i)
        if (b >> i & 1)
            r ^= a << i;
    return poly_mod(r, m);
}

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        a = poly_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// x^(2^e) mod m by repeated squaring
std::uint64_t frobenius_x(unsigned e, std::uint64_t m) {
    std::uint64_t r = 0b10;
    for (unsigned i = 0; i < e; ++i)
        r = poly_mulmod(r, r, m);
    return r;
}

// Rabin: m of degree w is irreducible iff x^(2^w) = x mod m and
// gcd(x^(2^(w/q)) - x, m) = 1 for every prime q | w. Here w is a power of 2.
bool rabin_irreducible(std::uint64_t m) {
    const unsigned w = static_cast<unsigned>(degree(m));
    if (frobenius_x(w, m) != 0b10)
        return false;
    return poly_gcd(m, frobenius_x(w / 2, m) ^ 0b10) == 1;
}

// shift-and-add multiplication, reducing as we go
template <unsigned W>
std::uint64_t slow_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < W; ++i) {
        if (b >> i & 1)
            r ^= a;
        a <<= 1;
        if (a >> W & 1)
            a ^= GF2w<W>::modulus;
    }
    return r;
}

template <class F>
class FieldTest : public ::testing::Test {};

using Fields = ::testing::Types<GF2w<8>, GF2w<16>, GF2w<32>>;
TYPED_TEST_SUITE(FieldTest, Fields);

} // namespace

TEST(Modulus, Irreducible) {
    EXPECT_TRUE(rabin_irreducible(GF2w<8>::modulus));
    EXPECT_TRUE(rabin_irreducible(GF2w<16>::modulus));
    EXPECT_TRUE(rabin_irreducible(GF2w<32>::modulus));
    // sanity: x^8 + 1 = (x + 1)^8 and x^4 + x^2 + 1 = (x^2 + x + 1)^2 are reducible
    EXPECT_FALSE(rabin_irreducible(0x101));
    EXPECT_FALSE(rabin_irreducible(0x15));
    EXPECT_TRUE(rabin_irreducible(0x13)); // x^4 + x + 1
}

TEST(Gf8, KnownProduct) {
    // the usual AES example: 0x57 * 0x83 = 0xC1
    EXPECT_EQ((GF2w<8>(0x57) * GF2w<8>(0x83)).value(), 0xC1u);
    EXPECT_EQ(GF2w<8>(0x53).inverse().value(), 0xCAu);
}

TYPED_TEST(FieldTest, Axioms) {
    using F = TypeParam;
    std::mt19937_64 rng(F::bits);
    for (int t = 0; t < 2000; ++t) {
        F a = F::random(rng), b = F::random(rng), c = F::random(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + F::zero(), a);
        EXPECT_EQ(a * F::one(), a);
        EXPECT_EQ(a + a, F::zero());
        EXPECT_EQ(a - b, a + b);
        EXPECT_EQ((a * b).value(), slow_mul<F::bits>(a.value(), b.value()));
        if (!a.is_zero()) {
            EXPECT_EQ(a * a.inverse(), F::one());
            EXPECT_EQ((b / a) * a, b);
        }
    }
    EXPECT_EQ(F::zero().inverse(), F::zero());
}

TYPED_TEST(FieldTest, ValuesStayInRange) {
    using F = TypeParam;
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t)
        EXPECT_LE(F::random(rng).value(), F::mask);
    EXPECT_EQ(F(F::mask + 1).value(), 0u);
}

TEST(Gf8, MultiplicativeGroupIsCyclic) {
    // x + 1 generates GF(256)^*: its order is exactly 255
    GF2w<8> g(3), p = GF2w<8>::one();
    for (int i = 1; i <= 255; ++i) {
        p *= g;
        if (i < 255) {
            EXPECT_NE(p, GF2w<8>::one()) << i;
        }
    }
    EXPECT_EQ(p, GF2w<8>::one());
}
