#include <catch2/catch.hpp>

#include "nlsb/lax.hpp"
#include "nlsb/quadrature.hpp"

using namespace nlsb;
using Catch::Matchers::WithinAbs;

namespace {
const FieldEval unit_bg = [](double, double) { return cplx(1.0); };
const SpaceTimeGrid res_grid = SpaceTimeGrid::make(-2.0, 2.0, 96, -1.0, 1.0, 257);
}  // namespace

TEST_CASE("adaptive quadrature basics") {
    auto q1 = integrate([](double x) { return cplx(x * x); }, 0.0, 1.0);
    CHECK(q1.converged);
    CHECK_THAT(q1.value.real(), WithinAbs(1.0 / 3.0, 1e-14));
    auto q2 = integrate([](double x) { return std::exp(iu * x); }, 0.0, 2.0 * pi);
    CHECK(std::abs(q2.value) < 1e-13);
    // a peaked integrand still certifies its tolerance
    auto q3 = integrate([](double x) { return cplx(1.0 / (1e-4 + x * x)); }, -1.0, 1.0, 1e-10);
    CHECK(q3.converged);
    CHECK_THAT(q3.value.real(), WithinAbs(2.0 * std::atan(100.0) * 100.0, 1e-6 * q3.value.real()));
}

TEST_CASE("background solutions solve the Lax system") {
    for (const cplx lambda :
         {cplx(0.6), cplx(1.0), cplx(-1.0), cplx(-0.6), cplx(0.0, 0.3), cplx(0.0, -0.8),
          cplx(0.0, 2.1817)}) {
        for (const VectorSolution& s : background_solutions(lambda)) {
            if (s.role == SolutionRole::GeneralizedEigenfunction) continue;
            const LaxResidual r = lax_residual(unit_bg, s.lambda, s, res_grid);
            INFO("lambda = " << lambda << " x-res " << r.x_residual << " t-res " << r.t_residual);
            CHECK(r.x_residual < 1e-9);
            CHECK(r.t_residual < 1e-9);
        }
    }
}

TEST_CASE("lambda = 0 structure") {
    const auto sols = background_solutions(0.0);
    REQUIRE(sols.size() == 4);
    // eigenfunctions (1,-i) e^{-ix}, (1,i) e^{ix}
    const Vec2 p = sols[0](0.7, 0.3);
    CHECK_THAT(std::abs(p.p - std::exp(-iu * 0.7)), WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(p.q + iu * std::exp(-iu * 0.7)), WithinAbs(0.0, 1e-14));
    // generalized pair solves (L - 0) phi_g = phi
    CHECK(eigen_chain_residual(unit_bg, 0.0, sols[2], &sols[0], res_grid) < 1e-9);
    CHECK(eigen_chain_residual(unit_bg, 0.0, sols[3], &sols[1], res_grid) < 1e-9);
    // the t/( -1-it) structure
    const Vec2 g = sols[2](0.0, 1.7);
    CHECK_THAT(std::abs(g.p - 1.7), WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(g.q - cplx(-1.0, -1.7)), WithinAbs(0.0, 1e-14));
}

TEST_CASE("lambda = 0.6: wavenumber and temporal rate") {
    const auto sols = background_solutions(0.6);
    REQUIRE(sols.size() == 2);
    // spatial wavenumber k/2 = 0.8 -> the solution is 4pi/k periodic
    CHECK_THAT(sols[0].period, WithinAbs(4.0 * pi / 1.6, 1e-12));
    const double shift = 2.0 * pi / 0.8;
    CHECK((sols[0](0.3 + shift, 0.2) - sols[0](0.3, 0.2)).norm() < 1e-12);
    // temporal rate lambda k = 0.96
    const double ratio = sols[0](0.0, 1.0).norm() / sols[0](0.0, 0.0).norm();
    CHECK_THAT(ratio, WithinAbs(std::exp(0.48), 1e-10));

    // perturbed solution fails the residual oracle (negative control)
    VectorSolution bad = sols[0];
    bad.eval = [f = sols[0].eval](double x, double t) {
        Vec2 v = f(x, t);
        v.q *= 1.01;
        return v;
    };
    CHECK(lax_residual(unit_bg, bad.lambda, bad, res_grid).x_residual > 1e-3);
}

TEST_CASE("lambda = 1: constant eigenvector plus linearly growing partner") {
    const auto sols = background_solutions(1.0);
    REQUIRE(sols.size() == 2);
    const Vec2 v = sols[0](1.3, -0.8);
    CHECK(std::abs(v.p - 1.0) < 1e-14);
    CHECK(std::abs(v.q + 1.0) < 1e-14);
    CHECK(sols[1].role == SolutionRole::SecondSolution);
    CHECK(sols[1].boundary == BoundaryClass::Unbounded);
}

TEST_CASE("off-spectrum lambda is rejected") {
    CHECK_THROWS_AS(background_solutions(cplx(0.5, 0.5)), std::domain_error);
    CHECK_THROWS_AS(background_solutions(cplx(1.5, 0.0)), std::domain_error);
}

TEST_CASE("symmetry map") {
    const auto one = background_solutions(1.0);
    const VectorSolution partner = symmetry_partner(one[0]);
    CHECK_THAT(std::abs(partner.lambda - cplx(-1.0)), WithinAbs(0.0, 1e-14));
    const Vec2 v = partner(0.4, 0.1);
    CHECK(std::abs(v.p - 1.0) < 1e-14);
    CHECK(std::abs(v.q - 1.0) < 1e-14);

    // involution up to sign
    const VectorSolution twice = symmetry_partner(partner);
    for (double x : {-0.7, 0.4})
        CHECK((twice(x, 0.2) + one[0](x, 0.2)).norm() < 1e-14);

    // the partner of the (0,1) eigenfunction solves the system at -lambda
    const auto s6 = background_solutions(0.6);
    const VectorSolution p6 = symmetry_partner(s6[0]);
    const LaxResidual r = lax_residual(unit_bg, p6.lambda, p6, res_grid);
    CHECK(r.x_residual < 1e-10);
    CHECK(r.t_residual < 1e-10);
}

TEST_CASE("Wronskian of the lambda in (0,1) pair is constant") {
    const auto sols = background_solutions(0.6);
    const cplx w0 = wronskian(sols[0], sols[1], 0.0, 0.0);
    CHECK(std::abs(w0) > 1e-12);
    for (double x : {-1.3, 0.2, 2.4})
        for (double t : {-0.9, 0.0, 1.1})
            CHECK(std::abs(wronskian(sols[0], sols[1], x, t) - w0) < 1e-10 * std::abs(w0));
}

TEST_CASE("background spectrum classification") {
    auto rec = classify_background_lambda({cplx(1.0), SpectralDomain::WholeLine});
    CHECK((rec.geometric == 1 && rec.algebraic == 1));
    rec = classify_background_lambda({cplx(0.0), SpectralDomain::WholeLine});
    CHECK((rec.geometric == 2 && rec.algebraic == 4));
    rec = classify_background_lambda({cplx(0.0, 0.3), SpectralDomain::WholeLine});
    CHECK((rec.geometric == 2 && rec.algebraic == 2));
    CHECK_THROWS_AS(classify_background_lambda({cplx(0.4, 0.4), SpectralDomain::WholeLine}),
                    std::domain_error);

    // lambda_1^(A) = 0.6 for L = 2 pi / 1.6
    const double L = 2.0 * pi / 1.6;
    CHECK_THAT(std::abs(background_discrete_eigenvalue(1, L) - 0.6), WithinAbs(0.0, 1e-9));
    rec = classify_background_lambda({cplx(0.6), SpectralDomain::AntiperiodicL, L});
    CHECK((rec.geometric == 2 && rec.algebraic == 2));
    CHECK_THROWS_AS(classify_background_lambda({cplx(0.95), SpectralDomain::AntiperiodicL, L}),
                    std::domain_error);
    rec = classify_background_lambda({cplx(1.0), SpectralDomain::PeriodicL, L});
    CHECK((rec.geometric == 1 && rec.algebraic == 1));
    // lambda = 0 enters the periodic spectrum at L = 2 pi (m = 2)
    rec = classify_background_lambda({cplx(0.0), SpectralDomain::PeriodicL, 2.0 * pi});
    CHECK((rec.geometric == 2 && rec.algebraic == 4));
}

TEST_CASE("Fredholm pairings at the constant background") {
    const auto sols = background_solutions(0.6);
    const VectorSolution star = adjoint_eigenfunction(sols[0]);
    const double L = sols[0].period;
    const cplx at0 = fredholm_inner_product(star, sols[0], 0.0, L, 0.0);
    CHECK_THAT(std::abs(at0 - cplx(-1.2 * L)), WithinAbs(0.0, 1e-9));
    // the pairing carries the e^{lambda k t} factor
    const cplx at7 = fredholm_inner_product(star, sols[0], 0.0, L, 0.7);
    CHECK_THAT(std::abs(at7 - cplx(-1.2 * L * std::exp(0.96 * 0.7))), WithinAbs(0.0, 1e-8));

    const auto zero = background_solutions(0.0);
    const VectorSolution zstar = adjoint_eigenfunction(zero[0]);
    CHECK(std::abs(fredholm_inner_product(zstar, zero[0], 0.0, 2.0 * pi, 0.0)) < 1e-12);
    const cplx gen = fredholm_inner_product(zstar, zero[2], 0.0, 2.0 * pi, 0.4);
    CHECK_THAT(std::abs(gen - cplx(-2.0 * pi)), WithinAbs(0.0, 1e-9));
}
