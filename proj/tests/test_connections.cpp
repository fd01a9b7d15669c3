// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracle.hpp"
#include "solstat/connection.hpp"
#include "solstat/eta.hpp"

using namespace solstat;

namespace {

MetricField metric(int n, std::initializer_list<const char*> comps) {
    std::vector<Expression> e;
    for (const char* s : comps) e.push_back(Expression::parse(s));
    return MetricField::from_exprs(n, std::move(e));
}

const MetricField kFlat2 = metric(2, {"1", "0", "0", "1"});
const MetricField kSphere = metric(2, {"1", "0", "0", "sin(x0)^2"});
const MetricField kWarped = metric(2, {"1", "0", "0", "(2 + cos(x0))^2"});

EtaJets eta_at(const MetricJets& G, std::initializer_list<const char*> comps) {
    std::vector<Jet> eta;
    for (const char* s : comps) eta.push_back(Expression::parse(s).eval_jet(G.x));
    return eta_jets(G, std::move(eta));
}

} // namespace

TEST_CASE("torsion") {
    SECTION("levi-civita output is torsion-free") {
        const auto G = kWarped.at({1.2, 0.4});
        const auto tor = torsion(christoffel_lc(2, G.g, G.g_inv, G.x));
        CHECK(max_abs_value(tor) == 0.0);
    }
    SECTION("eta connections are torsion-free") {
        const auto G = kSphere.at({1.0, 0.5});
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"sin(x1)", "x0"});
        CHECK(max_abs_value(torsion(eta_christoffels(G, gam_g, e))) <= 1e-14);
    }
    SECTION("a custom asymmetric connection shows its torsion") {
        // Gamma^0_{01} = 1, everything else zero, on flat R^2
        JetTensor gam(2, {Variance::Upper, Variance::Lower, Variance::Lower}, {0.0, 0.0});
        for (auto& c : gam.comp) c = Jet::constant(2, 0.0);
        gam(0, 0, 1) = Jet::constant(2, 1.0);
        const auto tor = torsion(gam);
        CHECK(tor(0, 0, 1).value() == 1.0);
        CHECK(tor(0, 1, 0).value() == -1.0);
    }
}

TEST_CASE("d_nabla") {
    SECTION("metricity: d^{nabla^g} g = 0") {
        const auto G = kSphere.at({0.8, 0.3});
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        JetTensor gt(2, {Variance::Lower, Variance::Lower}, G.x);
        gt.comp = G.g;
        CHECK(max_abs_value(d_nabla(gam, gt)) <= 1e-12);
    }
    SECTION("d^{nabla^eta} g = 0 for eta = x dy on flat R^2") {
        oracle::Rng rng(101);
        for (int t = 0; t < 20; ++t) {
            const Point x{rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const auto G = kFlat2.at(x);
            const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
            const auto e = eta_at(G, {"0", "x0"});
            const auto gam_eta = eta_christoffels(G, gam_g, e);
            JetTensor gt(2, {Variance::Lower, Variance::Lower}, x);
            gt.comp = G.g;
            CHECK(max_abs_value(d_nabla(gam_eta, gt)) <= 1e-13);
        }
    }
    SECTION("theorem 1: d^{nabla^g} Hess(f) equals the radial curvature term on the sphere") {
        const auto f = Expression::parse("cos(x0)");
        const Point x{1.2, 2.0};
        const auto G = kSphere.at(x);
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto rep = hess_radial_curvature(G, gam, gradient(G, f.eval_jet(x)));
        CHECK(rep.stated <= 1e-10);
        CHECK(rep.corrected <= 1e-10);
        CHECK(rep.both_sides > 0.1);  // both sides simultaneously nonzero
    }
}

TEST_CASE("dual connections") {
    SECTION("the levi-civita connection is self-dual") {
        const auto G = kSphere.at({1.1, 0.2});
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto dual = dual_christoffels(G, gam);
        for (std::size_t t = 0; t < gam.comp.size(); ++t)
            CHECK(std::abs(dual.comp[t].value() - gam.comp[t].value()) <= 1e-12);
    }
    SECTION("dual of nabla^eta is nabla^{-eta}, and duality defect vanishes") {
        oracle::Rng rng(103);
        for (int t = 0; t < 10; ++t) {
            const Point x{rng.uniform(0.4, 2.6), rng.uniform(0, 6)};
            const auto G = kWarped.at(x);
            const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
            const auto e = eta_at(G, {"sin(x0)", "cos(x1)"});
            EtaJets minus = e;
            for (auto& c : minus.eta) c = -c;
            for (auto& c : minus.xi) c = -c;
            const auto gam_p = eta_christoffels(G, gam_g, e);
            const auto gam_m = eta_christoffels(G, gam_g, minus);
            const auto dual = dual_christoffels(G, gam_p);
            for (std::size_t k = 0; k < dual.comp.size(); ++k)
                CHECK(std::abs(dual.comp[k].value() - gam_m.comp[k].value()) <= 1e-11);
            CHECK(duality_defect(G, gam_p, gam_m) <= 1e-10);
        }
    }
    SECTION("dual is an involution") {
        const Point x{0.9, 1.7};
        const auto G = kSphere.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"x1", "cos(x0)"});
        const auto gam_eta = eta_christoffels(G, gam_g, e);
        const auto back = dual_christoffels(G, dual_christoffels(G, gam_eta));
        for (std::size_t t = 0; t < back.comp.size(); ++t)
            CHECK(std::abs(back.comp[t].value() - gam_eta.comp[t].value()) <= 1e-11);
    }
}

TEST_CASE("structure taxonomy") {
    SECTION("(g, nabla^g) is statistical") {
        const auto G = kSphere.at({1.3, 0.1});
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        JetTensor gt(2, {Variance::Lower, Variance::Lower}, G.x);
        gt.comp = G.g;
        const auto r = structure_residuals(gam, gt);
        CHECK(r.statistical() <= 1e-12);
        CHECK(r.nearly_statistical() <= 1e-12);
        CHECK(r.quasi_statistical() <= 1e-12);
    }
    SECTION("(g, nabla^eta) is statistical for random eta") {
        oracle::Rng rng(107);
        for (int t = 0; t < 10; ++t) {
            const Point x{rng.uniform(0.3, 2.8), rng.uniform(0, 6)};
            const auto G = kSphere.at(x);
            const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
            const auto e = eta_at(G, {"x1 - 3", "sin(x0)*x1"});
            JetTensor gt(2, {Variance::Lower, Variance::Lower}, x);
            gt.comp = G.g;
            CHECK(structure_residuals(eta_christoffels(G, gam_g, e), gt).statistical() <= 1e-11);
        }
    }
    SECTION("(Hess f, nabla^g) fails on the sphere, passes on the flat torus (theorem 1)") {
        const auto f = Expression::parse("cos(x0)");
        const Point x{1.0, 0.7};
        const auto G = kSphere.at(x);
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        const JetTensor hess = hessian(G, gam, gradient(G, f.eval_jet(x)));
        const auto r = structure_residuals(gam, hess);
        CHECK(r.statistical() > 0.1);  // radial curvature obstruction

        const auto f2 = Expression::parse("x0");  // df = a dx on the flat torus
        const Point y{2.0, 3.0};
        const auto G2 = kFlat2.at(y);
        const auto gam2 = christoffel_lc(2, G2.g, G2.g_inv, G2.x);
        const JetTensor hess2 = hessian(G2, gam2, gradient(G2, f2.eval_jet(y)));
        CHECK(structure_residuals(gam2, hess2).statistical() <= 1e-12);
    }
}

TEST_CASE("equiaffinity and self-adjointness") {
    SECTION("nabla^{df} has symmetric Ricci") {
        const auto f = Expression::parse("cos(x0)*sin(x1)");
        oracle::Rng rng(109);
        for (int t = 0; t < 6; ++t) {
            const Point x{rng.uniform(0.4, 2.6), rng.uniform(0, 6)};
            const auto G = kWarped.at(x);
            const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
            const auto e = eta_jets(G, one_form_from_potential(f.eval_jet(x), 2));
            const auto ric = ricci_of_connection(eta_christoffels(G, gam_g, e));
            CHECK(ricci_asymmetry(ric) <= 1e-10);
        }
    }
    SECTION("eta = x dy on flat R^2: Ric asymmetric, nabla^g xi not self-adjoint") {
        const Point x{1.0, 0.5};
        const auto G = kFlat2.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"0", "x0"});
        const auto ric = ricci_of_connection(eta_christoffels(G, gam_g, e));
        CHECK(ric(0, 1).value() == Catch::Approx(-3.0).margin(1e-12));
        CHECK(ric(1, 0).value() == Catch::Approx(1.0).margin(1e-12));
        CHECK(ric(0, 0).value() == Catch::Approx(2.0 * x[0] * x[0]).margin(1e-12));
        CHECK(ricci_asymmetry(ric) == Catch::Approx(4.0).margin(1e-12));
        const auto nx = covd_vector(gam_g, e.xi);
        CHECK(self_adjoint_defect(G, nx) == Catch::Approx(1.0).margin(1e-12));
        // exact proportionality: asym(Ric^eta)(j,k) = (n+2)[g(d_j, nab_k xi) - g(d_k, nab_j xi)]
        const double lhs = ric(0, 1).value() - ric(1, 0).value();
        double a01 = 0.0;
        for (int m = 0; m < 2; ++m)
            a01 += G.gj(0, m).value() * nx(m, 1).value() - G.gj(1, m).value() * nx(m, 0).value();
        CHECK(std::abs(lhs - 4.0 * a01) <= 1e-12);
    }
    SECTION("gradient eta keeps nabla^g xi self-adjoint and Ric^eta symmetric") {
        const auto f = Expression::parse("sin(x0) + x1^2");
        const Point x{0.3, -0.4};
        const auto G = kFlat2.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_jets(G, one_form_from_potential(f.eval_jet(x), 2));
        CHECK(self_adjoint_defect(G, covd_vector(gam_g, e.xi)) <= 1e-12);
        CHECK(ricci_asymmetry(ricci_of_connection(eta_christoffels(G, gam_g, e))) <= 1e-11);
    }
}

TEST_CASE("codazzi, killing and the omega lemma") {
    SECTION("J = x I on flat R^2: Codazzi residuals of J and Omega coincide") {
        const Point x{0.7, 0.2};
        const auto G = kFlat2.at(x);
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        JetTensor j(2, {Variance::Upper, Variance::Lower}, x);
        const Jet phi = Expression::parse("x0").eval_jet(x);
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i) j(k, i) = k == i ? phi : Jet::constant(2, 0.0);
        const auto rep = omega_codazzi_lemma(G, gam, j);
        CHECK(rep.identity <= 1e-11);
        CHECK(std::abs(rep.omega_codazzi - rep.j_codazzi) <= 1e-11);
        CHECK(rep.j_codazzi > 0.5);  // d(phi) = dx is not zero
    }
    SECTION("constant-coefficient J on flat R^2 is Codazzi, Killing and parallel") {
        const Point x{0.1, 0.9};
        const auto G = kFlat2.at(x);
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        JetTensor j(2, {Variance::Upper, Variance::Lower}, x);
        j(0, 0) = Jet::constant(2, 1.0);
        j(0, 1) = Jet::constant(2, 2.0);
        j(1, 0) = Jet::constant(2, -1.0);
        j(1, 1) = Jet::constant(2, 3.0);
        CHECK(codazzi_defect_11(gam, j) == 0.0);
        CHECK(killing_defect_11(gam, j) == 0.0);
        CHECK(max_abs_value(covd_11(gam, j)) == 0.0);
    }
    SECTION("J = nabla grad(cos theta) on the sphere: nonzero Codazzi defect, lemma identity holds") {
        const auto f = Expression::parse("cos(x0)");
        const Point x{1.1, 0.3};
        const auto G = kSphere.at(x);
        const auto gam = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto j = covd_vector(gam, gradient(G, f.eval_jet(x)));
        const auto rep = omega_codazzi_lemma(G, gam, j);
        CHECK(rep.identity <= 1e-10);
        CHECK(rep.j_codazzi > 0.1);
    }
}

TEST_CASE("field-level dual and eta connection builders") {
    const Point x{0.9, 1.4};
    std::vector<Expression> comps{Expression::parse("sin(x0)"), Expression::parse("x1 - 2")};
    const TensorField eta = field_from_exprs(2, {Variance::Lower}, std::move(comps));
    const ConnectionField nabla_eta = build_eta_connection(kWarped, eta);
    CHECK(nabla_eta.provenance == "eta");
    const auto G = kWarped.at(x);
    const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
    const auto direct = eta_christoffels(G, gam_g, eta_jets(G, eta.at(x).comp));
    const auto viafield = nabla_eta.at(x);
    for (std::size_t t = 0; t < direct.comp.size(); ++t)
        CHECK(viafield.comp[t].value() == direct.comp[t].value());

    const ConnectionField dual = dual_connection(kWarped, nabla_eta);
    CHECK(dual.provenance == "dual");
    const auto dual_direct = dual_christoffels(G, direct);
    const auto dual_viafield = dual.at(x);
    for (std::size_t t = 0; t < dual_direct.comp.size(); ++t)
        CHECK(dual_viafield.comp[t].value() == dual_direct.comp[t].value());
}

TEST_CASE("second-covariant commutator also holds for the statistical eta connection") {
    oracle::Rng rng(401);
    for (int t = 0; t < 6; ++t) {
        const Point x{rng.uniform(0.5, 2.6), rng.uniform(0.2, 6.0)};
        const auto G = kWarped.at(x);
        const auto gam_g = christoffel_lc(2, G.g, G.g_inv, G.x);
        const auto e = eta_at(G, {"sin(x1)", "x0/4"});
        const auto gam = eta_christoffels(G, gam_g, e);
        const std::vector<Jet> v = e.xi;
        const auto dd = second_covd_vector(gam, v);
        const auto R = riemann(gam);
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    double rv = 0.0;
                    for (int m = 0; m < 2; ++m) rv += R(k, m, i, j).value() * v[static_cast<std::size_t>(m)].value();
                    CHECK(std::abs(dd(k, i, j).value() - dd(k, j, i).value() - rv) <= 1e-9);
                }
    }
}
