#include <doctest.h>

#include <cmath>

#include "dqcalc/expr.hpp"

using namespace dqcalc;

TEST_CASE("polynomial text lowers to an exact rational map") {
    ParsedExpr e = parse_expr("x1^2 + 2*x1*x2");
    CHECK(e.polynomial);
    CHECK(e.arity == 2);
    auto v = e.poly.eval({RingElem::rational(1, 2), RingElem::rational(3)});
    CHECK(v[0] == RingElem::rational(13, 4));
    CHECK(e.smooth(Vec{0.5, 3.0})[0] == doctest::Approx(3.25));
}

TEST_CASE("transcendental text lowers to a black-box map") {
    ParsedExpr e = parse_expr("sin(x1)");
    CHECK_FALSE(e.polynomial);
    CHECK(e.arity == 1);
    CHECK(e.smooth(Vec{0.3})[0] == doctest::Approx(std::sin(0.3)));
}

TEST_CASE("numbers: integers, ratios, decimals are exact rationals") {
    CHECK(parse_expr("2/3").poly.eval({RingElem::rational(0)})[0] ==
          RingElem::rational(2, 3));
    CHECK(parse_expr("1.5").poly.eval({RingElem::rational(0)})[0] ==
          RingElem::rational(3, 2));
    CHECK(parse_expr("0.125*x1").poly.eval({RingElem::rational(8)})[0] ==
          RingElem::rational(1));
}

TEST_CASE("precedence and unary minus") {
    ParsedExpr e = parse_expr("-x1^2 + 2*3");
    // -x^2 reads -(x^2)
    CHECK(e.poly.eval({RingElem::rational(2)})[0] == RingElem::rational(2));
    CHECK(parse_expr("2^3^2").smooth(Vec{0.0})[0] == doctest::Approx(512.0));
    CHECK(parse_expr("(2^3)^2").smooth(Vec{0.0})[0] == doctest::Approx(64.0));
}

TEST_CASE("syntax errors carry the byte position") {
    try {
        parse_expr("x1/");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.position == 4);
    }
    CHECK_THROWS_AS(parse_expr("(x1"), SyntaxError);
    CHECK_THROWS_AS(parse_expr("x1 +"), SyntaxError);
    CHECK_THROWS_AS(parse_expr(""), SyntaxError);
    CHECK_THROWS_AS(parse_expr("tan(x1)"), UnknownFunction);
}

TEST_CASE("division by a variable leaves the polynomial fragment") {
    ParsedExpr e = parse_expr("1/x1");
    CHECK_FALSE(e.polynomial);
    CHECK(e.smooth(Vec{4.0})[0] == doctest::Approx(0.25));
    ParsedExpr c = parse_expr("x1/2");
    CHECK(c.polynomial);
    CHECK(c.poly.eval({RingElem::rational(5)})[0] == RingElem::rational(5, 2));
}

TEST_CASE("re-emitted text re-parses to an equal polynomial") {
    for (const char* s : {"x1^2 + 2*x1*x2", "1/2*x1 - x2^3", "(x1 + x2)^2",
                          "0.75 - x1*x1", "x1*x2*x3 + 7"}) {
        ParsedExpr a = parse_expr(s);
        REQUIRE(a.polynomial);
        ParsedExpr b = parse_expr(a.canonical);
        REQUIRE(b.polynomial);
        CHECK(poly_equal(a.poly, b.poly));
    }
}

TEST_CASE("arity comes from the highest variable index") {
    CHECK(parse_expr("x3 + 1").arity == 3);
    CHECK(parse_expr("7").arity == 1);  // constants act as maps of one slot
}
