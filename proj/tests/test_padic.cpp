#include <random>

#include "doctest.h"
#include "volk/padic.hpp"

using namespace volk;

namespace {

PadicScalar random_scalar(std::mt19937_64& rng, long p, long w) {
    std::uniform_int_distribution<long> vdist(-2, 2);
    BigInt u = 0;
    std::uniform_int_distribution<long> ddist(0, p - 1);
    for (long i = 0; i < w; ++i) u = u * p + ddist(rng);
    if (u == 0) u = 1;
    return PadicScalar::from_unit_part(p, u, vdist(rng), w);
}

}  // namespace

TEST_CASE("inverse of 2 in Z_5 at two digits") {
    auto two = PadicScalar::from_integer(5, 2, 2);
    auto inv2 = two.inverse();
    CHECK(inv2.valuation() == 0);
    CHECK(inv2.unit_part() == 13);  // 2*13 = 26 = 1 mod 25
    auto prod = two * inv2;
    CHECK(prod.valuation() == 0);
    CHECK(prod.unit_part() == 1);
}

TEST_CASE("additive inverse collapses to the zero state") {
    auto a = PadicScalar::from_rational(7, 22, 5, 10);
    auto z = a + (-a);
    CHECK(z.is_zero());
    CHECK(z.abs_precision() >= a.abs_precision());
}

TEST_CASE("valuation is additive on products") {
    auto u = PadicScalar::from_integer(5, 7, 8);
    auto x = u.shift(3);  // p^3 * u
    CHECK(x.valuation() == 3);
    auto y = PadicScalar::from_integer(5, 2, 8);
    CHECK((x * y).valuation() == 3);
    CHECK((x * x).valuation() == 6);
}

TEST_CASE("division by an exact zero and prime mismatch are rejected") {
    auto a = PadicScalar::from_integer(5, 3, 8);
    CHECK_THROWS_AS(a / PadicScalar::zero(5), std::domain_error);
    CHECK_THROWS_AS(PadicScalar::zero(5).inverse(), std::domain_error);
    auto b = PadicScalar::from_integer(7, 3, 8);
    CHECK_THROWS_AS(a + b, std::invalid_argument);
}

TEST_CASE("division by p^k lowers the reported absolute precision by k") {
    auto a = PadicScalar::from_integer(5, 7, 12);
    long before = a.abs_precision();
    auto b = a / PadicScalar::from_integer(5, 25, 12);
    CHECK(b.valuation() == -2);
    CHECK(b.abs_precision() == before - 2);
}

TEST_CASE("teichmuller lifts at p = 5") {
    auto w1 = teichmuller(5, 1, 3);
    CHECK(w1.unit_part() == 1);

    auto w2 = teichmuller(5, 2, 3);
    CHECK(w2.unit_part() == 57);  // fixed point of x -> x^5 mod 125
    auto sq = w2 * w2;
    CHECK(sq.unit_part() == 124);  // 57^2 = -1 mod 125

    auto w4 = teichmuller(5, 4, 3);
    CHECK(w4.indistinguishable_from(sq));

    CHECK_THROWS_AS(teichmuller(5, 0, 3), std::domain_error);
}

TEST_CASE("teichmuller is multiplicative") {
    for (long p : {5L, 7L, 11L}) {
        for (long a = 1; a < p; ++a)
            for (long b = 1; b < p; ++b) {
                auto lhs = teichmuller(p, a, 8) * teichmuller(p, b, 8);
                auto rhs = teichmuller(p, (a * b) % p, 8);
                CHECK(lhs.indistinguishable_from(rhs));
            }
        // (p-1)-st power is 1
        auto w = teichmuller(p, 2 % p == 0 ? 3 : 2, 8);
        CHECK(w.pow(static_cast<unsigned long>(p - 1))
                  .indistinguishable_from(PadicScalar::from_integer(p, 1, 8)));
    }
}

TEST_CASE("log of 1+5 at three digits") {
    auto u = PadicScalar::from_integer(5, 6, 3);
    auto l = log_one_unit(u);
    // 5 - 25/2 + ... = 55 mod 125
    CHECK(l.integer_residue(3) == 55);

    auto u2 = PadicScalar::from_integer(5, 36, 3);
    auto l2 = log_one_unit(u2);
    CHECK(l2.indistinguishable_from(l + l));
}

TEST_CASE("log of 1 is exactly zero") {
    auto one = PadicScalar::from_integer(5, 1, 10);
    CHECK(log_one_unit(one).is_zero());
}

TEST_CASE("log rejects non-principal units") {
    CHECK_THROWS_AS(log_one_unit(PadicScalar::from_integer(5, 2, 6)), std::domain_error);
}

TEST_CASE("log is a homomorphism on random principal units") {
    std::mt19937_64 rng(12345);
    for (long p : {3L, 5L, 7L}) {
        for (int rep = 0; rep < 20; ++rep) {
            BigInt a = 0, b = 0;
            std::uniform_int_distribution<long> d(0, p - 1);
            for (int i = 0; i < 12; ++i) {
                a = a * p + d(rng);
                b = b * p + d(rng);
            }
            auto u = PadicScalar::from_integer(p, 1 + p * a, 14);
            auto v = PadicScalar::from_integer(p, 1 + p * b, 14);
            auto lhs = log_one_unit(u * v);
            auto rhs = log_one_unit(u) + log_one_unit(v);
            CHECK(lhs.indistinguishable_from(rhs));
            auto sq = log_one_unit(u * u);
            CHECK(sq.indistinguishable_from(log_one_unit(u) + log_one_unit(u)));
        }
    }
}

TEST_CASE("ring axioms hold on reported digits for random triples") {
    std::mt19937_64 rng(987654);
    long p = 5, w = 16;
    for (int rep = 0; rep < 1000; ++rep) {
        auto a = random_scalar(rng, p, w);
        auto b = random_scalar(rng, p, w);
        auto c = random_scalar(rng, p, w);
        CHECK(((a + b) + c).indistinguishable_from(a + (b + c)));
        CHECK(((a * b) * c).indistinguishable_from(a * (b * c)));
        CHECK((a * (b + c)).indistinguishable_from(a * b + a * c));
        CHECK((a + b).indistinguishable_from(b + a));
    }
}
