// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "solstat/expr.hpp"
#include "solstat/geometry.hpp"

using namespace solstat;

namespace {

MetricField metric(int n, std::initializer_list<const char*> comps) {
    std::vector<Expression> e;
    for (const char* s : comps) e.push_back(Expression::parse(s));
    return MetricField::from_exprs(n, std::move(e));
}

const MetricField kFlat2 = metric(2, {"1", "0", "0", "1"});
const MetricField kSphere = metric(2, {"1", "0", "0", "sin(x0)^2"});
const MetricField kHyperbolic = metric(2, {"1/x1^2", "0", "0", "1/x1^2"});
const MetricField kWarped = metric(2, {"1", "0", "0", "(2 + cos(x0))^2"});

} // namespace

TEST_CASE("levi-civita on flat space vanishes") {
    const auto G = kFlat2.at({0.3, 0.8});
    const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
    for (const Jet& c : gam.comp) CHECK(c.max_abs_coeff() == 0.0);
}

TEST_CASE("levi-civita on the round sphere matches the hand computation") {
    const double th = 1.1;
    const auto G = kSphere.at({th, 2.0});
    const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
    CHECK(gam(0, 1, 1).value() == Catch::Approx(-std::sin(th) * std::cos(th)).epsilon(1e-12));
    CHECK(gam(1, 0, 1).value() == Catch::Approx(std::cos(th) / std::sin(th)).epsilon(1e-12));
    CHECK(gam(1, 1, 0).value() == Catch::Approx(std::cos(th) / std::sin(th)).epsilon(1e-12));
    CHECK(gam(0, 0, 0).value() == 0.0);
}

TEST_CASE("curvature of model surfaces") {
    SECTION("flat torus: everything vanishes") {
        const auto G = kFlat2.at({1.0, 2.0});
        const JetTensor R = riemann(christoffel_lc(2, G.g, G.g_inv, G.x));
        for (const Jet& c : R.comp) CHECK(c.max_abs_coeff() == 0.0);
    }
    SECTION("unit sphere: Ric = g, scal = 2") {
        const auto G = kSphere.at({0.9, 0.4});
        const JetTensor ric = ricci_of_connection(christoffel_lc(2, G.g, G.g_inv, G.x));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(ric(i, j).value() == Catch::Approx(G.gj(i, j).value()).margin(1e-12));
        CHECK(scalar_curvature(G, ric).value() == Catch::Approx(2.0).epsilon(1e-12));
    }
    SECTION("hyperbolic half-plane: Ric = -g, scal = -2") {
        const auto G = kHyperbolic.at({0.2, 1.5});
        const JetTensor ric = ricci_of_connection(christoffel_lc(2, G.g, G.g_inv, G.x));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(ric(i, j).value() == Catch::Approx(-G.gj(i, j).value()).margin(1e-12));
        CHECK(scalar_curvature(G, ric).value() == Catch::Approx(-2.0).epsilon(1e-11));
    }
}

TEST_CASE("first Bianchi identity for torsion-free connections") {
    oracle::Rng rng(43);
    for (int t = 0; t < 10; ++t) {
        const Point x{rng.uniform(0.4, 2.6), rng.uniform(0.0, 6.0)};
        for (const MetricField* m : {&kSphere, &kWarped, &kHyperbolic}) {
            if (m == &kHyperbolic && x[1] < 0.4) continue;
            const auto G = m->at(x);
            const JetTensor R = riemann(christoffel_lc(2, G.g, G.g_inv, G.x));
            for (int l = 0; l < 2; ++l)
                for (int k = 0; k < 2; ++k)
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j) {
                            const double cyc = R(l, k, i, j).value() + R(l, i, j, k).value() +
                                               R(l, j, k, i).value();
                            CHECK(std::abs(cyc) <= 1e-10);
                        }
        }
    }
}

TEST_CASE("levi-civita is torsion-free and metric") {
    oracle::Rng rng(47);
    for (int t = 0; t < 8; ++t) {
        const Point x{rng.uniform(0.5, 2.5), rng.uniform(0.5, 2.0)};
        const auto G = kWarped.at(x);
        const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        const JetTensor tor = torsion(gam);
        for (const Jet& c : tor.comp) CHECK(std::abs(c.value()) <= 1e-12);
        JetTensor h(2, {Variance::Lower, Variance::Lower}, x);
        h.comp = G.g;
        const JetTensor dh = covd_02(gam, h);
        for (const Jet& c : dh.comp) CHECK(std::abs(c.value()) <= 1e-10);
    }
}

TEST_CASE("gradient, hessian, laplacian on R^n with f = |x|^2/2") {
    const auto f = Expression::parse("(x0^2 + x1^2)/2");
    const Point x{0.7, -0.2};
    const auto G = kFlat2.at(x);
    const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
    const Jet fj = f.eval_jet(x);
    const auto grad = gradient(G, fj);
    CHECK(grad[0].value() == Catch::Approx(0.7));
    CHECK(grad[1].value() == Catch::Approx(-0.2));
    const JetTensor hess = hessian(G, gam, grad);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(hess(i, j).value() == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-14));
    CHECK(laplacian(G, gam, fj).value() == Catch::Approx(2.0).margin(1e-14));
}

TEST_CASE("hessian of the first spherical harmonic: Hess(cos th) = -cos th * g") {
    const auto f = Expression::parse("cos(x0)");
    oracle::Rng rng(53);
    for (int t = 0; t < 6; ++t) {
        const Point x{rng.uniform(0.3, 2.8), rng.uniform(0.0, 6.2)};
        const auto G = kSphere.at(x);
        const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        const Jet fj = f.eval_jet(x);
        const JetTensor hess = hessian(G, gam, gradient(G, fj));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(hess(i, j).value() ==
                      Catch::Approx(-std::cos(x[0]) * G.gj(i, j).value()).margin(1e-11));
        CHECK(laplacian(G, gam, fj).value() == Catch::Approx(-2.0 * std::cos(x[0])).margin(1e-11));
        // hessian of the Levi-Civita connection is symmetric
        CHECK(std::abs(hess(0, 1).value() - hess(1, 0).value()) <= 1e-11);
    }
}

TEST_CASE("second covariant derivative antisymmetrization recovers curvature") {
    // nabla^2_{X,Y} V - nabla^2_{Y,X} V = R(X,Y)V for torsion-free connections
    const auto f = Expression::parse("cos(x0)");
    const Point x{1.2, 0.7};
    const auto G = kSphere.at(x);
    const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
    const auto v = gradient(G, f.eval_jet(x));
    const JetTensor dd = second_covd_vector(gam, v);
    const JetTensor R = riemann(gam);
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                double rv = 0.0;
                for (int m = 0; m < 2; ++m) rv += R(k, m, i, j).value() * v[static_cast<std::size_t>(m)].value();
                CHECK(std::abs(dd(k, i, j).value() - dd(k, j, i).value() - rv) <= 1e-9);
            }
}

TEST_CASE("bochner residual vanishes for smooth data") {
    SECTION("flat torus, f = sin(x)") {
        const auto f = Expression::parse("sin(x0)");
        oracle::Rng rng(59);
        for (int t = 0; t < 10; ++t) {
            const Point x{rng.uniform(0, 6.28), rng.uniform(0, 6.28)};
            CHECK(std::abs(bochner_residual(kFlat2.at(x), f.eval_jet(x))) <= 1e-10);
        }
    }
    SECTION("unit sphere, f = cos(theta)") {
        const auto f = Expression::parse("cos(x0)");
        oracle::Rng rng(61);
        for (int t = 0; t < 10; ++t) {
            const Point x{rng.uniform(0.3, 2.8), rng.uniform(0, 6.28)};
            CHECK(std::abs(bochner_residual(kSphere.at(x), f.eval_jet(x))) <= 1e-10);
        }
    }
    SECTION("warped torus, df = dx") {
        const auto f = Expression::parse("x0");
        oracle::Rng rng(67);
        for (int t = 0; t < 10; ++t) {
            const Point x{rng.uniform(0, 6.28), rng.uniform(0, 6.28)};
            CHECK(std::abs(bochner_residual(kWarped.at(x), f.eval_jet(x))) <= 1e-10);
        }
    }
}

TEST_CASE("koszul difference formula") {
    SECTION("einstein case: h = Ric = g on the unit sphere, residual tiny") {
        const Point x{1.0, 0.5};
        const auto G = kSphere.at(x);
        const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        JetTensor ric = ricci_of_connection(gam);
        CHECK(koszul_difference_residual(G, gam, ric) <= 1e-11);
    }
    SECTION("h = Ric on the warped torus away from flat points") {
        oracle::Rng rng(71);
        int tested = 0;
        for (int t = 0; t < 20 && tested < 8; ++t) {
            const Point x{rng.uniform(0, 6.28), rng.uniform(0, 6.28)};
            if (std::abs(std::cos(x[0])) < 0.3) continue;  // Ric degenerates where K = 0
            const auto G = kWarped.at(x);
            const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
            const JetTensor ric = ricci_of_connection(gam);
            CHECK(koszul_difference_residual(G, gam, ric) <= 1e-9);
            ++tested;
        }
        CHECK(tested >= 5);
    }
    SECTION("h = Hess(f) for f = x^4 + y^2 + xy on a shifted box") {
        const auto f = Expression::parse("x0^4 + x1^2 + x0*x1");
        oracle::Rng rng(73);
        for (int t = 0; t < 8; ++t) {
            const Point x{rng.uniform(0.6, 1.4), rng.uniform(-1.0, 1.0)};
            const auto G = kFlat2.at(x);
            const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
            const JetTensor hess = hessian(G, gam, gradient(G, f.eval_jet(x)));
            CHECK(koszul_difference_residual(G, gam, hess) <= 1e-9);
        }
    }
    SECTION("degenerate h is reported") {
        const Point x{1.0, 1.0};
        const auto G = kFlat2.at(x);
        const JetTensor gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        const JetTensor ric = ricci_of_connection(gam);  // zero on flat space
        CHECK_THROWS_AS(koszul_difference_residual(G, gam, ric), DegenerateMetric);
    }
}

TEST_CASE("ricci of a levi-civita connection is symmetric") {
    oracle::Rng rng(79);
    for (int t = 0; t < 10; ++t) {
        const Point x{rng.uniform(0.4, 2.7), rng.uniform(0.2, 2.0)};
        for (const MetricField* m : {&kSphere, &kWarped, &kHyperbolic}) {
            const auto G = m->at(x);
            const JetTensor ric = ricci_of_connection(christoffel_lc(2, G.g, G.g_inv, G.x));
            CHECK(std::abs(ric(0, 1).value() - ric(1, 0).value()) <= 1e-11);
        }
    }
}

TEST_CASE("field-level connection constructors agree with the pointwise kernels") {
    const Point x{1.1, 0.6};
    SECTION("levi_civita of the metric field") {
        const ConnectionField lc = levi_civita(kSphere);
        const auto G = kSphere.at(x);
        const JetTensor direct = christoffel_lc(2, G.g, G.g_inv, x);
        const JetTensor viafield = lc.at(x);
        for (std::size_t t = 0; t < direct.comp.size(); ++t)
            CHECK(viafield.comp[t].value() == direct.comp[t].value());
        CHECK(lc.provenance == "levi-civita");
    }
    SECTION("levi_civita_of the Ricci field on an Einstein chart equals levi_civita(g)") {
        // unit sphere: Ric = g, so the difference tensor vanishes
        const ConnectionField lc_ric = levi_civita_of(ricci_field(levi_civita(kSphere)));
        const auto G = kSphere.at(x);
        const JetTensor gam_g = christoffel_lc(2, G.g, G.g_inv, x);
        const JetTensor gam_ric = lc_ric.at(x);
        for (std::size_t t = 0; t < gam_g.comp.size(); ++t)
            CHECK(std::abs(gam_ric.comp[t].value() - gam_g.comp[t].value()) <= 1e-10);
    }
    SECTION("levi_civita_of throws on a degenerate field") {
        const ConnectionField lc_ric = levi_civita_of(ricci_field(levi_civita(kFlat2)));
        CHECK_THROWS_AS(lc_ric.at(x), DegenerateMetric);
    }
}
