#include <catch2/catch_amalgamated.hpp>

#include "gpl/scalar.hpp"

using namespace gpl;

TEST_CASE("rational parsing accepts reduced and unreduced fractions") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("0") == 0);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("x"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("gaussian rational arithmetic") {
    Scalar a(Rational(1, 2), Rational(3));
    Scalar b(Rational(-2), Rational(1, 3));

    CHECK((a + b) - b == a);
    CHECK(a * b == b * a);
    CHECK((a * b) / b == a);
    CHECK(a - a == Scalar(0));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));

    CHECK(a.conj().conj() == a);
    CHECK((a * a.conj()).is_real());
    CHECK(a.norm2() == Rational(1, 4) + Rational(9));

    CHECK(a * a.inv() == Scalar(1));
    CHECK_THROWS_AS(Scalar(0).inv(), Error);
    CHECK_THROWS_AS(a / Scalar(0), Error);
}

TEST_CASE("scalar string form is stable") {
    CHECK(Scalar(Rational(1, 2), Rational(-3, 4)).str() == "1/2 - 3/4*i");
    CHECK(Scalar(0).str() == "0");
    CHECK(Scalar::i().str() == "0 + 1*i");
    CHECK(Scalar(5).str() == "5");
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK_THROWS_AS(parse_rational(" 1"), Error);
    CHECK_THROWS_AS(parse_rational("1/-2"), Error);
}

TEST_CASE("scalar ordering is a strict total order on distinct values") {
    Scalar a(1), b(Rational(1, 2)), c(0, 1);
    CHECK(scalar_cmp(a, a) == 0);
    CHECK(scalar_cmp(a, b) == -scalar_cmp(b, a));
    // transitivity spot check
    Scalar x[3] = {a, b, c};
    std::sort(std::begin(x), std::end(x),
              [](const Scalar& u, const Scalar& v) { return scalar_cmp(u, v) < 0; });
    CHECK(scalar_cmp(x[0], x[1]) < 0);
    CHECK(scalar_cmp(x[1], x[2]) < 0);
}
