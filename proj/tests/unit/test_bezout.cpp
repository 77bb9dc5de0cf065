#include <catch2/catch_amalgamated.hpp>

#include <hurwitz/bezout.hpp>

#include "generators.hpp"
#include "golden_example.hpp"

using namespace hurwitz;

TEST_CASE("Anderson-Jury Bezoutian of the stable scalar quadruple") {
    // f = z^2+3z+2: -i B(L1^v, L1; L^v, L) = diag(12, 6)
    const auto sr = split(MatrixPolynomial::scalar({1, 3, 2}));
    const auto quad = build_quadruple(sr);
    const auto full = anderson_jury(adjoint_vee(quad.l1_poly), quad.l1_poly, adjoint_vee(quad.l_poly), quad.l_poly);
    REQUIRE(full.rows() == 2);
    REQUIRE(full.cols() == 2);
    const ComplexMatrix mib = Complex(0, -1) * full;
    CHECK(std::abs(mib(0, 0) - Complex(12, 0)) < 1e-12);
    CHECK(std::abs(mib(1, 1) - Complex(6, 0)) < 1e-12);
    CHECK(std::abs(mib(0, 1)) < 1e-12);
    CHECK(std::abs(mib(1, 0)) < 1e-12);
}

TEST_CASE("identical products produce the empty Bezoutian") {
    const auto id = MatrixPolynomial::identity(3);
    const auto full = anderson_jury(id, id, id, id);
    CHECK(full.rows() == 0);
}

TEST_CASE("commuting linear pair") {
    // (z(w+1) - (z+1)w)/(z-w) = 1
    const auto l_ = MatrixPolynomial::scalar({1, 0});   // z
    const auto lt = MatrixPolynomial::scalar({1, 1});   // z+1
    const auto full = anderson_jury(l_, lt, lt, l_);
    REQUIRE(full.rows() == 1);
    REQUIRE(full.cols() == 1);
    CHECK(std::abs(full(0, 0) - Complex(1, 0)) < 1e-14);
}

TEST_CASE("the common-multiple precondition is enforced") {
    const auto a = MatrixPolynomial::scalar({1, 0});
    const auto b = MatrixPolynomial::scalar({1, 1});
    CHECK_THROWS_AS(anderson_jury(a, a, a, b), NotACommonMultipleError);
}

TEST_CASE("worked example congruence") {
    const auto chk = bezout_inertia_check(golden::example_f());
    CHECK(chk.match);
    CHECK(chk.inertia_bezout == Inertia{8, 0, 0});
    CHECK(chk.inertia_hankel_direct_sum == Inertia{8, 0, 0});
    CHECK(chk.bezout_hermitian_deviation < 1e-10);
}

TEST_CASE("scalar congruences with frozen inertias") {
    {
        const auto chk = bezout_inertia_check(MatrixPolynomial::scalar({1, 3, 2}));
        CHECK(chk.match);
        CHECK(chk.inertia_bezout == Inertia{2, 0, 0});
    }
    {
        const auto chk = bezout_inertia_check(MatrixPolynomial::scalar({1, -3, 2}));
        CHECK(chk.match);
        CHECK(chk.inertia_bezout == Inertia{0, 2, 0});
    }
}

TEST_CASE("congruence and zero structure hold on generated Hermitian instances") {
    gen::Rng rng(503);
    for (int trial = 0; trial < 25; ++trial) {
        const auto f = gen::diag_real_instance(rng, 1 + trial % 3, 5);
        Tolerances tol;
        const auto pl = run_pipeline(f, tol);
        const auto quad = build_quadruple(pl.sr);
        const auto full =
            anderson_jury(adjoint_vee(quad.l1_poly), quad.l1_poly, adjoint_vee(quad.l_poly), quad.l_poly);
        const auto fin = finite_bezoutian(full, pl.sr.cdeg_f, pl.sr.cdeg_f, f.size());
        CHECK(fin.offgrid_max <= 1e-10 * std::max(1.0, full.cwiseAbs().maxCoeff()));

        const auto chk = bezout_inertia_check(f, tol);
        CHECK(chk.bezout_hermitian_deviation < 1e-10);
        CHECK(chk.match);
    }
}

TEST_CASE("L and L1 relate to the split as constructed") {
    const auto norm = qr_normalize(golden::example_f());
    const auto sr = split(norm.f_norm);
    const auto quad = build_quadruple(sr);
    const int n = 3;
    // L = F(iz) coefficient-wise
    for (int e = 0; e <= n; ++e) {
        const Complex ph = std::pow(Complex(0, 1), e);
        CHECK((quad.l_poly.coeff_of_power(e) - ph * norm.f_norm.coeff_of_power(e)).cwiseAbs().maxCoeff() < 1e-12);
    }
    // (L1)_hcdc = D~_hcdc and cdeg L1 = cdeg F
    const auto l1_prof = column_profile(quad.l1_poly);
    const auto dt_prof = column_profile(quad.d_tilde);
    CHECK(l1_prof.cdeg == sr.cdeg_f);
    CHECK(l1_prof.column_reduced);
    CHECK((l1_prof.hcdc - dt_prof.hcdc).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("column index sets of D~ interleave the Hankel index sets") {
    gen::Rng rng(509);
    for (int trial = 0; trial < 15; ++trial) {
        const auto f = gen::diag_real_instance(rng, 1 + trial % 3, 5);
        const auto pl = run_pipeline(f);
        const auto quad = build_quadruple(pl.sr);
        const auto dt_prof = column_profile(quad.d_tilde);
        CHECK(dt_prof.cdeg == pl.sr.cdeg_f);
        for (int j = 0; j <= pl.sr.m; ++j) {
            std::vector<int> odd_set, even_set;
            for (int k = 0; k < f.size(); ++k) {
                if (2 * j + 1 < dt_prof.cdeg[static_cast<std::size_t>(k)]) odd_set.push_back(k);
                if (2 * j < dt_prof.cdeg[static_cast<std::size_t>(k)]) even_set.push_back(k);
            }
            CHECK(odd_set == pl.idx.i_set(j));
            CHECK(even_set == pl.idx.tilde_set(j));
        }
    }
}
