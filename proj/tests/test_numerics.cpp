#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "hzone/complex.hpp"
#include "hzone/real.hpp"

using namespace hzone;

namespace {

// Deterministic generator for property inputs.
struct SplitMix {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; } // [0,1)
};

} // namespace

TEST_CASE("context invariants") {
    CHECK_THROWS_AS(PrecisionContext(20), DomainError);
    CHECK_THROWS_AS(PrecisionContext(50, 5), DomainError);
    PrecisionContext ctx(50);
    CHECK(ctx.digits() == 50);
    CHECK(ctx.guard() == 30);
    CHECK(ctx.bits() >= 80 * 3); // at least 80 digits worth of bits
}

TEST_CASE("parse_decimal basics") {
    PrecisionContext ctx(50);
    BigReal x = parse_decimal("1.5", ctx);
    CHECK(x == parse_decimal("3", ctx) / 2); // dyadic-free decimal, exact
    BigReal z = parse_decimal("0", ctx);
    CHECK(z.is_zero());
    CHECK(z.sign() == 0);
    CHECK(format_decimal(z) == "0");
    // zero keeps the positive sign convention
    CHECK(format_decimal(parse_decimal("-0", ctx)) == "0");

    CHECK_THROWS_AS(parse_decimal("", ctx), ParseError);
    CHECK_THROWS_AS(parse_decimal("abc", ctx), ParseError);
    CHECK_THROWS_AS(parse_decimal("1.5ee3", ctx), ParseError);
    CHECK_THROWS_AS(parse_decimal("1,5", ctx), ParseError);
    CHECK_THROWS_AS(parse_decimal("1.5e", ctx), ParseError);
}

TEST_CASE("decimal round trips") {
    PrecisionContext ctx(50);
    // short literal round-trips verbatim (splitting-constant style value)
    const std::string table3 = "2.47442559355325105e6";
    CHECK(format_decimal(parse_decimal(table3, ctx)) == table3);
    CHECK(format_decimal(parse_decimal("1.5", ctx)) == "1.5");
    CHECK(format_decimal(parse_decimal("-0.125", ctx)) == "-0.125");
    CHECK(format_decimal(parse_decimal("1e-30", ctx)) == "1e-30");

    // parse(format(x)) == x exactly for random values
    SplitMix rng{12345};
    for (int i = 0; i < 200; ++i) {
        BigReal x = ctx.make_real(static_cast<long>(rng.next() % 1000000) - 500000);
        x = x / ctx.make_real(static_cast<long>(rng.next() % 999983) + 7);
        x = x * exp(ctx.make_real(static_cast<long>(rng.next() % 200) - 100));
        BigReal back = parse_decimal(format_decimal(x), ctx);
        CHECK(back == x);
    }
}

TEST_CASE("exp/log round trip accuracy") {
    PrecisionContext ctx(60);
    // |exp(log x) - x|/x < 10^-(D+g-2) for x in [1e-3, 1e3]
    BigReal bound = ctx.rounding_floor();
    SplitMix rng{99};
    for (int i = 0; i < 100; ++i) {
        double u = rng.uniform() * 6.0 - 3.0;
        BigReal x = exp(ctx.make_real(static_cast<long>(u * 1000)) / 1000 * log(ctx.make_real(10)));
        BigReal err = abs(exp(log(x)) - x) / x;
        CHECK(err < bound);
    }
}

TEST_CASE("elementary function domain errors") {
    PrecisionContext ctx(40);
    CHECK_THROWS_AS(log(ctx.make_real(0)), DomainError);
    CHECK_THROWS_AS(log(ctx.make_real(-2)), DomainError);
    CHECK_THROWS_AS(sqrt(ctx.make_real(-1)), DomainError);
    CHECK_THROWS_AS(ctx.make_real(1) / ctx.make_real(0), DomainError);
}

TEST_CASE("complex_power identities") {
    PrecisionContext ctx(50);
    BigReal tol = ctx.pow10(-(ctx.digits() + ctx.guard() - 5));

    BigComplex one(1, ctx);
    CHECK(complex_power(one, parse_decimal("17.25", ctx)) == one);

    BigComplex four(4, ctx);
    BigComplex r = complex_power(four, ctx.make_real(1) / 2);
    CHECK(abs(r - BigComplex(2, ctx)) < tol);

    // i^2 = -1 against the repeated-multiplication oracle
    BigComplex i(ctx.make_real(0), ctx.make_real(1));
    BigComplex i2 = complex_power(i, ctx.make_real(2));
    CHECK(abs(i2 - i * i) < tol);
    CHECK(abs(i2.re + 1) < tol);
    CHECK(abs(i2.im) < tol);
}

TEST_CASE("complex_power equals m-fold products") {
    PrecisionContext ctx(50);
    BigReal tol = ctx.pow10(-(ctx.digits() + ctx.guard() - 5));
    SplitMix rng{2024};
    for (int rep = 0; rep < 20; ++rep) {
        BigComplex z(ctx.make_real(static_cast<long>(rng.next() % 2000) - 1000) / 333,
                     ctx.make_real(static_cast<long>(rng.next() % 2000) + 1) / 333);
        BigComplex prod = z;
        for (long m = 2; m <= 6; ++m) {
            prod = prod * z;
            BigComplex pw = complex_power(z, ctx.make_real(m));
            CHECK(abs(pw - prod) / abs(prod) < tol);
        }
    }
}

TEST_CASE("complex branch cut and polar consistency") {
    PrecisionContext ctx(40);
    CHECK_THROWS_AS(complex_power(BigComplex(-2, ctx), ctx.make_real(1) / 2), DomainError);
    CHECK_THROWS_AS(complex_power(BigComplex(ctx.make_real(0), ctx.make_real(0)), ctx.make_real(2)), DomainError);

    // z == |z| exp(i arg z) to guard precision
    BigComplex z(parse_decimal("-1.25", ctx), parse_decimal("0.75", ctx));
    BigReal r = abs(z);
    BigReal th = arg(z);
    BigComplex back = BigComplex(r * cos(th), r * sin(th));
    CHECK(abs(back - z) < ctx.rounding_floor() * r * 10);
}

TEST_CASE("real_pow_complex matches exp(t log b)") {
    PrecisionContext ctx(50);
    BigReal lam = parse_decimal("0.8586", ctx);
    BigComplex t(parse_decimal("0.25", ctx), parse_decimal("3.5", ctx));
    BigComplex a = real_pow_complex(lam, t);
    BigComplex b = exp(t * log(lam));
    CHECK(abs(a - b) < ctx.rounding_floor());
    CHECK_THROWS_AS(real_pow_complex(ctx.make_real(-1), t), DomainError);
}
