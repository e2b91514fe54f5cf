#include <doctest.h>

#include "otlck/rational.hpp"

using namespace otlck;

TEST_CASE("parse_rational accepts integers and fractions") {
    CHECK(parse_rational("7") == Rat(7));
    CHECK(parse_rational("-7") == Rat(-7));
    CHECK(parse_rational("3/4") == Rat(3, 4));
    CHECK(parse_rational("-3/4") == Rat(-3, 4));
    CHECK(parse_rational("6/4") == Rat(3, 2)); // canonicalized
    CHECK(parse_rational("0") == Rat(0));
}

TEST_CASE("parse_rational rejects malformed input") {
    for (const char* bad : {"", "x", "1.5", "1/", "/2", "1/-2", "1/0", "2 3", "--1", "1e3"}) {
        CHECK_THROWS_AS(parse_rational(bad), error);
    }
    try {
        parse_rational("1/0");
    } catch (const error& e) {
        CHECK(e.code() == errc::parse_error);
    }
}

TEST_CASE("to_string round-trips through parse_rational") {
    for (const Rat& q : {Rat(0), Rat(5), Rat(-5), Rat(22, 7), Rat(-1, 3)}) {
        CHECK(parse_rational(to_string(q)) == q);
    }
    CHECK(to_string(Rat(22, 7)) == "22/7");
    CHECK(to_string(Rat(4)) == "4");
}

TEST_CASE("pow2 covers negative exponents exactly") {
    CHECK(pow2(0) == Rat(1));
    CHECK(pow2(10) == Rat(1024));
    CHECK(pow2(-3) == Rat(1, 8));
    CHECK(pow2(-1) * pow2(1) == Rat(1));
}

TEST_CASE("ceil_log2 is the exact ceiling") {
    CHECK(ceil_log2(Rat(1)) == 0);
    CHECK(ceil_log2(Rat(2)) == 1);
    CHECK(ceil_log2(Rat(3)) == 2);
    CHECK(ceil_log2(Rat(4)) == 2);
    CHECK(ceil_log2(Rat(5)) == 3);
    CHECK(ceil_log2(Rat(1, 2)) == -1);
    CHECK(ceil_log2(Rat(1, 3)) == -1); // 2^-2 < 1/3 <= 2^-1
    CHECK(ceil_log2(Rat(1, 4)) == -2);
    CHECK_THROWS_AS(ceil_log2(Rat(0)), error);
    CHECK_THROWS_AS(ceil_log2(Rat(-2)), error);
}

TEST_CASE("dyadic rounding brackets the value at the requested grain") {
    Rat x(22, 7);
    for (long bits : {0L, 4L, 16L, 80L}) {
        Rat lo = dyadic_floor(x, bits);
        Rat hi = dyadic_ceil(x, bits);
        CHECK(lo <= x);
        CHECK(hi >= x);
        CHECK(hi - lo <= pow2(-bits) * 2);
    }
    // dyadic values are fixed points
    CHECK(dyadic_floor(Rat(3, 8), 3) == Rat(3, 8));
    CHECK(dyadic_ceil(Rat(3, 8), 3) == Rat(3, 8));
    // negative values round outward consistently
    CHECK(dyadic_floor(Rat(-1, 3), 2) <= Rat(-1, 3));
    CHECK(dyadic_ceil(Rat(-1, 3), 2) >= Rat(-1, 3));
}

TEST_CASE("decimal_string renders exact and rounded values deterministically") {
    CHECK(decimal_string(Rat(0), 10) == "0");
    CHECK(decimal_string(Rat(1, 2), 5) == "0.5");
    CHECK(decimal_string(Rat(2), 5) == "2");
    CHECK(decimal_string(Rat(-7, 4), 3) == "-1.75");
    CHECK(decimal_string(Rat(1, 3), 5) == "0.33333");
    CHECK(decimal_string(Rat(2, 3), 4) == "0.6667"); // rounds half away from zero
    CHECK(decimal_string(Rat(1000), 2) == "1000");
    // the same rational always renders to the same bytes
    CHECK(decimal_string(Rat(355, 113), 20) == decimal_string(Rat(355, 113), 20));
}
