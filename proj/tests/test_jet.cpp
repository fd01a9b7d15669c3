// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "solstat/jet.hpp"

using solstat::Jet;

TEST_CASE("variable seeds") {
    const Jet a = Jet::variable(2, 0, 3.0);
    CHECK(a.value() == 3.0);
    CHECK(a.d(0) == 1.0);
    CHECK(a.d(1) == 0.0);
    CHECK(a.d2(0, 0) == 0.0);
    CHECK(a.d3(0, 0, 0) == 0.0);

    const Jet b = Jet::variable(2, 1, 0.0);
    CHECK(b.value() == 0.0);
    CHECK(b.d(1) == 1.0);

    CHECK_THROWS_AS(Jet::variable(2, 2, 0.0), solstat::Error);
}

TEST_CASE("square of a variable") {
    const Jet x = Jet::variable(1, 0, 3.0);
    const Jet sq = x * x;
    CHECK(sq.value() == 9.0);
    CHECK(sq.d(0) == 6.0);
    CHECK(sq.d2(0, 0) == 2.0);
    CHECK(sq.d3(0, 0, 0) == 0.0);
}

TEST_CASE("sin at zero and exp of a constant") {
    const Jet s = sin(Jet::variable(1, 0, 0.0));
    CHECK(s.value() == 0.0);
    CHECK(s.d(0) == 1.0);
    CHECK(s.d2(0, 0) == 0.0);
    CHECK(s.d3(0, 0, 0) == -1.0);

    const Jet e = exp(Jet::constant(3, 2.0));
    CHECK(e.value() == Catch::Approx(std::exp(2.0)).epsilon(1e-15));
    CHECK(e.is_constant());
}

TEST_CASE("polynomials of degree <= 3 are exact to a few ulps") {
    // p(x,y) = 2 + x - 3y + x^2 y ; all stored partials have closed forms
    auto p = [](const Jet& x, const Jet& y) { return 2.0 + x - 3.0 * y + x * x * y; };
    oracle::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const double xv = rng.uniform(-2, 2), yv = rng.uniform(-2, 2);
        const Jet j = p(Jet::variable(2, 0, xv), Jet::variable(2, 1, yv));
        auto close = [](double got, double want) {
            const double ulp = std::abs(want) * 2.3e-15 + 1e-300;
            return std::abs(got - want) <= 10 * std::max(ulp, 2.3e-15);
        };
        CHECK(close(j.value(), 2 + xv - 3 * yv + xv * xv * yv));
        CHECK(close(j.d(0), 1 + 2 * xv * yv));
        CHECK(close(j.d(1), -3 + xv * xv));
        CHECK(close(j.d2(0, 0), 2 * yv));
        CHECK(close(j.d2(0, 1), 2 * xv));
        CHECK(close(j.d2(1, 1), 0.0));
        CHECK(close(j.d3(0, 0, 1), 2.0));
        CHECK(close(j.d3(0, 0, 0), 0.0));
    }
}

TEST_CASE("product third derivative matches the finite-difference oracle") {
    // random univariate cubics multiplied together, checked against FD
    oracle::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        double a0 = rng.uniform(-1, 1), a1 = rng.uniform(-1, 1), a2 = rng.uniform(-1, 1),
               a3 = rng.uniform(-1, 1);
        double b0 = rng.uniform(-1, 1), b1 = rng.uniform(-1, 1), b2 = rng.uniform(-1, 1),
               b3 = rng.uniform(-1, 1);
        auto f = [&](const std::vector<double>& x) {
            const double t = x[0];
            const double fa = a0 + t * (a1 + t * (a2 + t * a3));
            const double fb = b0 + t * (b1 + t * (b2 + t * b3));
            return fa * fb;
        };
        const double t0 = rng.uniform(-0.8, 0.8);
        const Jet t = Jet::variable(1, 0, t0);
        const Jet fj = (a0 + t * (a1 + t * (a2 + t * a3))) * (b0 + t * (b1 + t * (b2 + t * b3)));
        const double fd = oracle::d3(f, {t0}, 0, 0, 0);
        CHECK(fj.d3(0, 0, 0) == Catch::Approx(fd).margin(1e-6).epsilon(1e-6));
    }
}

TEST_CASE("arithmetic is commutative and associative at value level") {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const Jet a = sin(Jet::variable(2, 0, rng.uniform(-2, 2)));
        const Jet b = exp(Jet::variable(2, 1, rng.uniform(-1, 1)));
        const Jet c = Jet::constant(2, rng.uniform(-2, 2));
        CHECK(std::abs((a * b).value() - (b * a).value()) <= 1e-14);
        CHECK(std::abs((a + b).value() - (b + a).value()) <= 1e-14);
        CHECK(std::abs(((a * b) * c).value() - (a * (b * c)).value()) <= 1e-14);
    }
}

TEST_CASE("chain rule through nested transcendental functions vs oracle") {
    oracle::Rng rng(17);
    solstat::Expression e;  // only used to reuse the value evaluator shape
    auto f = [](const std::vector<double>& x) {
        return std::sin(x[0] * x[1]) * std::exp(0.3 * x[1]) + std::log(2.0 + std::cos(x[0]));
    };
    for (int trial = 0; trial < 10; ++trial) {
        const double xv = rng.uniform(-1, 1), yv = rng.uniform(-1, 1);
        const Jet x = Jet::variable(2, 0, xv), y = Jet::variable(2, 1, yv);
        const Jet j = sin(x * y) * exp(0.3 * y) + log(2.0 + cos(x));
        for (int i = 0; i < 2; ++i)
            CHECK(j.d(i) == Catch::Approx(oracle::d1(f, {xv, yv}, i)).margin(1e-8).epsilon(1e-7));
        for (int i = 0; i < 2; ++i)
            for (int jj = i; jj < 2; ++jj)
                CHECK(j.d2(i, jj) ==
                      Catch::Approx(oracle::d2(f, {xv, yv}, i, jj)).margin(1e-6).epsilon(1e-5));
        CHECK(j.d3(0, 0, 1) ==
              Catch::Approx(oracle::d3(f, {xv, yv}, 0, 0, 1)).margin(1e-4).epsilon(1e-4));
    }
}

TEST_CASE("partial shifts coefficients down one order") {
    const Jet x = Jet::variable(2, 0, 0.7), y = Jet::variable(2, 1, -0.4);
    const Jet f = sin(x) * cos(y) + x * y * y;
    const Jet fx = f.partial(0);
    CHECK(fx.valid_order() == 2);
    CHECK(fx.value() == f.d(0));
    CHECK(fx.d(1) == f.d2(0, 1));
    CHECK(fx.d2(1, 1) == f.d3(0, 1, 1));
    CHECK_THROWS_AS(fx.d3(0, 0, 0), std::logic_error);
    const Jet fxy = fx.partial(1);
    CHECK(fxy.valid_order() == 1);
    CHECK(fxy.d(1) == f.d3(0, 1, 1));
}

TEST_CASE("domain errors") {
    const Jet zero = Jet::variable(1, 0, 0.0);
    CHECK_THROWS_AS(Jet::constant(1, 1.0) / zero, solstat::DivisionByZero);
    CHECK_THROWS_AS(log(zero), solstat::DomainError);
    CHECK_THROWS_AS(log(Jet::constant(1, -1.0)), solstat::DomainError);
    CHECK_THROWS_AS(sqrt(Jet::constant(1, -4.0)), solstat::DomainError);
    CHECK_THROWS_AS(abs(zero), solstat::DomainError);
    CHECK_THROWS_AS(pow(Jet::constant(1, -2.0), 0.5), solstat::DomainError);
}

TEST_CASE("pow handles integer exponents on negative and zero bases") {
    const Jet x = Jet::variable(1, 0, -2.0);
    const Jet p = pow(x, 3.0);
    CHECK(p.value() == -8.0);
    CHECK(p.d(0) == 12.0);
    CHECK(p.d2(0, 0) == -12.0);
    CHECK(p.d3(0, 0, 0) == 6.0);

    const Jet z = Jet::variable(1, 0, 0.0);
    const Jet q = pow(z, 2.0);
    CHECK(q.value() == 0.0);
    CHECK(q.d(0) == 0.0);
    CHECK(q.d2(0, 0) == 2.0);

    // jet^jet with varying exponent
    const Jet b = Jet::variable(2, 0, 1.5), w = Jet::variable(2, 1, 0.5);
    const Jet r = pow(b, w);
    auto f = [](const std::vector<double>& x) { return std::pow(x[0], x[1]); };
    CHECK(r.d(0) == Catch::Approx(oracle::d1(f, {1.5, 0.5}, 0)).epsilon(1e-7));
    CHECK(r.d2(0, 1) == Catch::Approx(oracle::d2(f, {1.5, 0.5}, 0, 1)).epsilon(1e-5));
}

TEST_CASE("dimension limits") {
    CHECK_THROWS_AS(Jet::constant(9, 1.0), solstat::Error);
    // dim 8 works end to end
    std::vector<double> x(8);
    for (int i = 0; i < 8; ++i) x[static_cast<std::size_t>(i)] = 0.1 * (i + 1);
    Jet acc = Jet::constant(8, 0.0);
    for (int i = 0; i < 8; ++i) acc = acc + Jet::variable(8, i, x[static_cast<std::size_t>(i)]) *
                                            Jet::variable(8, (i + 1) % 8, x[static_cast<std::size_t>((i + 1) % 8)]);
    const Jet s = sin(acc);
    CHECK(s.dim() == 8);
    CHECK(std::isfinite(s.d3(0, 3, 7)));
    CHECK(s.d2(2, 5) == s.d2(5, 2));
}
