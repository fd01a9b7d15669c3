// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle.hpp"
#include "solstat/eta.hpp"
#include "solstat/manifold.hpp"

using namespace solstat;

namespace {

MetricField metric(int n, std::initializer_list<const char*> comps) {
    std::vector<Expression> e;
    for (const char* s : comps) e.push_back(Expression::parse(s));
    return MetricField::from_exprs(n, std::move(e));
}

const MetricField kFlat2 = metric(2, {"1", "0", "0", "1"});
const MetricField kWarped = metric(2, {"1", "0", "0", "(2 + cos(x0))^2"});

EtaJets eta_at(const MetricJets& G, std::initializer_list<const char*> comps) {
    std::vector<Jet> eta;
    for (const char* s : comps) eta.push_back(Expression::parse(s).eval_jet(G.x));
    return eta_jets(G, std::move(eta));
}

} // namespace

TEST_CASE("eta connection coefficients") {
    SECTION("eta = 0 gives back levi-civita") {
        const Point x{1.2, 0.5};
        const auto G = kWarped.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"0", "0"});
        const auto gam = eta_christoffels(G, gam_g, e);
        for (std::size_t t = 0; t < gam.comp.size(); ++t)
            CHECK(gam.comp[t].value() == gam_g.comp[t].value());
    }
    SECTION("constant eta = dx on flat R^2 reproduces the hand-computed coefficients") {
        const auto G = kFlat2.at({0.4, -0.3});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto gam = eta_christoffels(G, gam_g, eta_at(G, {"1", "0"}));
        CHECK(gam(0, 0, 0).value() == 3.0);  // Gamma^x_xx
        CHECK(gam(0, 1, 1).value() == 1.0);  // Gamma^x_yy
        CHECK(gam(1, 0, 1).value() == 1.0);  // Gamma^y_xy
        CHECK(gam(1, 1, 0).value() == 1.0);  // Gamma^y_yx
        CHECK(gam(0, 0, 1).value() == 0.0);
        CHECK(gam(1, 1, 1).value() == 0.0);
    }
}

TEST_CASE("curvature difference formula vs direct computation") {
    oracle::Rng rng(211);
    SECTION("eta = 0: difference vanishes") {
        const Point x{1.0, 1.0};
        const auto G = kWarped.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        CHECK(curvature_difference_residual(G, gam_g, eta_at(G, {"0", "0"})) <= 1e-13);
    }
    SECTION("non-gradient eta on the warped torus") {
        for (int t = 0; t < 10; ++t) {
            const Point x{rng.uniform(0, 6.28), rng.uniform(0, 6.28)};
            const auto G = kWarped.at(x);
            const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
            CHECK(curvature_difference_residual(G, gam_g, eta_at(G, {"sin(x1)", "cos(x0)"})) <= 1e-10);
        }
    }
    SECTION("flat R^2, eta = x dy: fixed trace values") {
        const Point x{1.0, 0.2};
        const auto G = kFlat2.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"0", "x0"});
        CHECK(curvature_difference_residual(G, gam_g, e) <= 1e-12);
        const auto ric = ricci_of_connection(eta_christoffels(G, gam_g, e));
        CHECK(ric(0, 0).value() == Catch::Approx(2.0).margin(1e-12));  // 2x^2 at x=1
        CHECK(ric(0, 1).value() == Catch::Approx(-3.0).margin(1e-12));
        CHECK(ric(1, 0).value() == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("ricci expansion formula vs direct") {
    SECTION("constant eta on flat R^2: Ric^eta = 2|xi|^2 g") {
        const auto G = kFlat2.at({0.3, 0.9});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"1", "0"});
        const auto ric = ricci_of_connection(eta_christoffels(G, gam_g, e));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(ric(i, j).value() == Catch::Approx(i == j ? 2.0 : 0.0).margin(1e-13));
        CHECK(ricci_eta_residual(G, gam_g, e) <= 1e-13);
    }
    SECTION("random eta on the warped torus") {
        oracle::Rng rng(223);
        for (int t = 0; t < 10; ++t) {
            const Point x{rng.uniform(0, 6.28), rng.uniform(0, 6.28)};
            const auto G = kWarped.at(x);
            const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
            CHECK(ricci_eta_residual(G, gam_g, eta_at(G, {"x1 - 3", "sin(x0)"})) <= 1e-10);
        }
    }
    SECTION("eta = 0 on the sphere gives Ric^g") {
        const MetricField sphere = metric(2, {"1", "0", "0", "sin(x0)^2"});
        const auto G = sphere.at({1.2, 0.4});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto ric = ricci_of_connection(eta_christoffels(G, gam_g, eta_at(G, {"0", "0"})));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(ric(i, j).value() == Catch::Approx(G.gj(i, j).value()).margin(1e-11));
    }
}

TEST_CASE("conjugate ricci residuals") {
    SECTION("flat R^2, eta = x dy: equality 6, transpose 2, derived sum exact") {
        const auto G = kFlat2.at({1.0, 0.0});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto r = conjugate_ricci_residuals(G, gam_g, eta_at(G, {"0", "x0"}));
        CHECK(r.equality == Catch::Approx(6.0).margin(1e-11));
        CHECK(r.transpose == Catch::Approx(2.0).margin(1e-11));
        CHECK(r.derived_sum <= 1e-11);
    }
    SECTION("parallel xi: both readings hold (flat torus, constant one-form)") {
        const auto G = kFlat2.at({0.2, 0.7});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto r = conjugate_ricci_residuals(G, gam_g, eta_at(G, {"1", "0"}));
        CHECK(r.equality <= 1e-12);
        CHECK(r.transpose <= 1e-12);
        CHECK(r.derived_sum <= 1e-12);
    }
    SECTION("eta = 0: everything vanishes") {
        const auto G = kWarped.at({1.0, 2.0});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto r = conjugate_ricci_residuals(G, gam_g, eta_at(G, {"0", "0"}));
        CHECK(r.equality <= 1e-12);
        CHECK(r.transpose <= 1e-12);
    }
    SECTION("gradient eta with nonzero Hessian: equality fails, derived sum still exact") {
        // confirms the desk computation behind the README discrepancy note
        const auto f = Expression::parse("x0^2");
        const auto G = kFlat2.at({0.5, 0.1});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_jets(G, one_form_from_potential(f.eval_jet(G.x), 2));
        const auto r = conjugate_ricci_residuals(G, gam_g, e);
        CHECK(r.equality == Catch::Approx(4.0).margin(1e-11));
        CHECK(r.derived_sum <= 1e-11);
    }
}

TEST_CASE("gradient formula harness on the warped torus") {
    const auto f = Expression::parse("sin(x0) + 0.5*cos(x1)");
    oracle::Rng rng(227);
    for (int t = 0; t < 8; ++t) {
        const Point x{rng.uniform(0, 6.28), rng.uniform(0, 6.28)};
        const auto G = kWarped.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const Jet fj = f.eval_jet(x);
        const auto e = eta_jets(G, one_form_from_potential(fj, 2));

        // Ric^{df} formula vs direct
        const auto form = ric_df_formula(G, gam_g, fj);
        const auto direct = ricci_of_connection(eta_christoffels(G, gam_g, e));
        for (std::size_t c = 0; c < form.comp.size(); ++c)
            CHECK(std::abs(form.comp[c] - direct.comp[c].value()) <= 1e-10);

        // Hess^{df} formula vs direct
        const auto hf = hess_df_formula(G, gam_g, fj);
        const auto hd = hessian(G, eta_christoffels(G, gam_g, e), gradient(G, fj));
        for (std::size_t c = 0; c < hf.comp.size(); ++c)
            CHECK(std::abs(hf.comp[c] - hd.comp[c].value()) <= 1e-10);

        CHECK(hess_eta_relation_residual(G, gam_g, eta_at(G, {"sin(x1)", "1"}), fj) <= 1e-10);
        CHECK(div_relation_residual(G, gam_g, fj) <= 1e-10);
        const Jet h = Expression::parse("cos(x0)*cos(x1)").eval_jet(x);
        CHECK(laplace_relation_residual(G, gam_g, fj, h) <= 1e-10);
        CHECK(scal_relation_residual(G, gam_g, fj) <= 1e-9);
    }
}

TEST_CASE("div relation on flat R^2 with f = x is exactly (n+2)") {
    const auto f = Expression::parse("x0");
    const auto G = kFlat2.at({0.0, 0.0});
    const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
    const Jet fj = f.eval_jet(G.x);
    const auto e = eta_jets(G, one_form_from_potential(fj, 2));
    const auto gam_eta = eta_christoffels(G, gam_g, e);
    // X = d_x: div^{df}(X) - div^g(X) = (n+2) df(X) = 4
    double d_eta = 0.0, d_g = 0.0;
    for (int k = 0; k < 2; ++k) {
        d_eta += gam_eta(k, k, 0).value();
        d_g += gam_g(k, k, 0).value();
    }
    CHECK(d_eta - d_g == Catch::Approx(4.0).margin(1e-14));
}

TEST_CASE("scal relation on the flat torus: scal^{df} = (n-1)(n+2)") {
    const auto f = Expression::parse("x0");  // df = dx, |grad f| = 1
    const auto G = kFlat2.at({1.0, 2.0});
    const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
    const Jet fj = f.eval_jet(G.x);
    const auto e = eta_jets(G, one_form_from_potential(fj, 2));
    const auto ric = ricci_of_connection(eta_christoffels(G, gam_g, e));
    CHECK(scalar_curvature(G, ric).value() == Catch::Approx(4.0).margin(1e-12));
    CHECK(scal_relation_residual(G, gam_g, fj) <= 1e-12);
}

TEST_CASE("xi parallelism and geodesic displays") {
    SECTION("the expansion identity holds for random eta") {
        oracle::Rng rng(229);
        for (int t = 0; t < 8; ++t) {
            const Point x{rng.uniform(0, 6.28), rng.uniform(0, 6.28)};
            const auto G = kWarped.at(x);
            const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
            const auto rep = xi_parallel_soliton(G, gam_g, eta_at(G, {"cos(x1)", "x1 - 3"}));
            CHECK(rep.expansion <= 1e-11);
            CHECK(std::abs(rep.xi_parallel - rep.soliton_residual_xi) <= 1e-11);
            CHECK(geodesic_condition_residual(G, gam_g, eta_at(G, {"cos(x1)", "x1 - 3"})) <= 1e-10);
        }
    }
    SECTION("flat R^2 with eta = dx: nabla^eta_xi xi = 3 xi") {
        const auto G = kFlat2.at({0.0, 0.0});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"1", "0"});
        const auto nx_eta = covd_vector(eta_christoffels(G, gam_g, e), e.xi);
        double v0 = 0.0;
        for (int i = 0; i < 2; ++i) v0 += nx_eta(0, i).value() * e.xi[static_cast<std::size_t>(i)].value();
        CHECK(v0 == Catch::Approx(3.0).margin(1e-13));
        CHECK(geodesic_condition_residual(G, gam_g, e) <= 1e-13);
    }
}

TEST_CASE("kenmotsu model identities") {
    const ManifoldSpec ken = builtin("kenmotsu-3");
    const MetricField g = ken.metric_field();
    oracle::Rng rng(233);
    for (int t = 0; t < 6; ++t) {
        const Point x{rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)};
        const auto G = g.at(x);
        const auto gam_g = christoffel_lc(3, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"1", "0", "0"});

        // nabla^g xi = I - eta x xi
        const auto nxg = covd_vector(gam_g, e.xi);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i) {
                const double want = (k == i ? 1.0 : 0.0) -
                                    e.eta[static_cast<std::size_t>(i)].value() *
                                        e.xi[static_cast<std::size_t>(k)].value();
                CHECK(std::abs(nxg(k, i).value() - want) <= 1e-11);
            }
        // nabla^eta xi = 2I + eta x xi
        const auto nxe = covd_vector(eta_christoffels(G, gam_g, e), e.xi);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i) {
                const double want = (k == i ? 2.0 : 0.0) +
                                    e.eta[static_cast<std::size_t>(i)].value() *
                                        e.xi[static_cast<std::size_t>(k)].value();
                CHECK(std::abs(nxe(k, i).value() - want) <= 1e-11);
            }
    }
}

TEST_CASE("pp-wave: xi is null and parallel, difference curvature lies in ker eta") {
    const ManifoldSpec pp = builtin("pp-wave-4");
    const MetricField g = pp.metric_field();
    oracle::Rng rng(239);
    for (int t = 0; t < 5; ++t) {
        const Point x{rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9),
                      rng.uniform(-0.9, 0.9)};
        const auto G = g.at(x);
        const auto gam_g = christoffel_lc(4, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"1", "0", "0", "0"});
        CHECK(std::abs(e.xi_norm2.value()) <= 1e-13);             // null
        CHECK(max_abs_value(covd_vector(gam_g, e.xi)) <= 1e-13);  // parallel
        CHECK(walker_kernel_residual(G, gam_g, e) <= 1e-11);
        CHECK(curvature_difference_residual(G, gam_g, e) <= 1e-10);
    }
}
