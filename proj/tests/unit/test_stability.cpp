#include <catch2/catch_amalgamated.hpp>

#include <hurwitz/eig_oracle.hpp>
#include <hurwitz/stability.hpp>

#include "generators.hpp"
#include "golden_example.hpp"

using namespace hurwitz;

TEST_CASE("hermitian inertia basics") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d(0, 0) = 1.0;
    d(1, 1) = -2.0;
    const Inertia in = hermitian_inertia(d);
    CHECK(in.pi == 1);
    CHECK(in.nu == 1);
    CHECK(in.delta == 1);

    const Inertia empty = hermitian_inertia(ComplexMatrix(0, 0));
    CHECK(empty.pi == 0);
    CHECK(empty.nu == 0);
    CHECK(empty.delta == 0);
    CHECK(empty.positive_definite());
}

TEST_CASE("hermitian inertia of the worked-example H0") {
    const Inertia in = hermitian_inertia(golden::h0());
    CHECK(in.pi == 5);
    CHECK(in.nu == 0);
    CHECK(in.delta == 0);
    auto eigs = hermitian_eigenvalues(golden::h0());
    std::reverse(eigs.begin(), eigs.end());
    const auto expect = golden::h0_eigs_descending();
    REQUIRE(eigs.size() == expect.size());
    for (std::size_t k = 0; k < eigs.size(); ++k) {
        CHECK(std::abs(eigs[k] - expect[k]) < 1e-3);
    }
}

TEST_CASE("non-Hermitian input to the inertia is rejected") {
    ComplexMatrix m(2, 2);
    m << Complex(1, 0), Complex(1, 0), Complex(0, 0), Complex(1, 0);
    CHECK_THROWS_AS(hermitian_inertia(m), NotHermitianError);
}

TEST_CASE("verdicts on the worked example and frozen scalar cases") {
    const auto rep = hurwitz_check(golden::example_f());
    CHECK(rep.verdict == Verdict::Stable);
    CHECK(rep.h0_inertia.pi == 5);
    CHECK(rep.h1_inertia.pi == 3);
    CHECK(rep.sequence_hermitian);

    const auto bad = hurwitz_check(MatrixPolynomial::scalar({1, -3, 2}));
    CHECK(bad.verdict == Verdict::NotStable);
    REQUIRE(bad.h0_eigs.size() == 1);
    REQUIRE(bad.h1_eigs.size() == 1);
    CHECK(std::abs(bad.h0_eigs[0] - (-3.0)) < 1e-12);
    CHECK(std::abs(bad.h1_eigs[0] - (-6.0)) < 1e-12);

    const auto good = hurwitz_check(MatrixPolynomial::scalar({1, 2, 2, 1}));
    CHECK(good.verdict == Verdict::Stable);
}

TEST_CASE("stable verdicts imply positive spectra of the full expected size") {
    gen::Rng rng(401);
    int stable_seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto f = gen::diag_real_instance(rng, 1 + trial % 3, 5);
        const auto rep = hurwitz_check(f);
        if (rep.verdict != Verdict::Stable) continue;
        ++stable_seen;
        int cdeg_sum = 0;
        for (int c : rep.cdeg) cdeg_sum += c;
        CHECK(static_cast<int>(rep.h0_eigs.size() + rep.h1_eigs.size()) == cdeg_sum);
        for (double e : rep.h0_eigs) CHECK(e > 0.0);
        for (double e : rep.h1_eigs) CHECK(e > 0.0);
        const auto spec = finite_spectrum(f);
        CHECK(static_cast<int>(spec.finite_eigs.size()) == cdeg_sum);
    }
    CHECK(stable_seen > 0);
}

TEST_CASE("polynomial inertia triples") {
    {
        const auto [triple, det] = polynomial_inertia(golden::example_f());
        CHECK(det);
        CHECK(triple == std::array<int, 3>{0, 8, 0});
    }
    {
        const auto [triple, det] = polynomial_inertia(MatrixPolynomial::scalar({1, -3, 2}));
        CHECK(det);
        CHECK(triple == std::array<int, 3>{2, 0, 0});
    }
    {
        const auto [triple, det] = polynomial_inertia(MatrixPolynomial::scalar({1, 3, 2}));
        CHECK(det);
        CHECK(triple == std::array<int, 3>{0, 2, 0});
    }
}

TEST_CASE("polynomial inertia agrees with the eigenvalue oracle") {
    gen::Rng rng(419);
    for (int trial = 0; trial < 30; ++trial) {
        const auto f = gen::diag_real_instance(rng, 1 + trial % 3, 5);
        Tolerances tol;
        const auto pl = run_pipeline(f, tol);
        const auto rep = detail::report_from_pipeline(pl, tol);
        if (!rep.inertia_determinate || !rep.sequence_hermitian) continue;
        const auto spec = finite_spectrum(f);
        CHECK(rep.inertia_f == spec.inertia_imag_axis);
    }
}

TEST_CASE("scalar ground truth against root signs") {
    gen::Rng rng(421);
    int disagreements = 0, indeterminate = 0, total = 100;
    for (int trial = 0; trial < total; ++trial) {
        const auto rs = gen::scalar_from_roots(rng, 8);
        const auto rep = hurwitz_check(MatrixPolynomial::scalar(rs.coeffs));
        if (rep.verdict == Verdict::Indeterminate) {
            ++indeterminate;
            continue;
        }
        const bool said_stable = rep.verdict == Verdict::Stable;
        disagreements += said_stable == rs.stable ? 0 : 1;
    }
    CHECK(disagreements == 0);
    CHECK(indeterminate * 20 < total);  // < 5%
}

TEST_CASE("verdict is invariant under left-unitary mixing and positive scaling") {
    gen::Rng rng(431);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = gen::diag_real_instance(rng, 2 + trial % 2, 4);
        const auto base = hurwitz_check(f).verdict;

        const auto v = gen::random_unitary(rng, f.size());
        CHECK(hurwitz_check(gen::left_multiply(v, f)).verdict == base);

        std::vector<ComplexMatrix> scaled;
        for (const auto& c : f.coefficients()) scaled.push_back(3.25 * c);
        CHECK(hurwitz_check(MatrixPolynomial(scaled)).verdict == base);
    }
}

TEST_CASE("explicit column degrees drive the whole pipeline") {
    // representation degree 2 but actual degree 1: leading coefficient is zero
    std::vector<ComplexMatrix> cs(3, ComplexMatrix::Zero(1, 1));
    cs[1](0, 0) = 1.0;
    cs[2](0, 0) = 1.0;  // z + 1
    const MatrixPolynomial f{cs};
    const std::vector<int> degs{1};
    const auto rep = hurwitz_check(f, {}, degs);
    CHECK(rep.verdict == Verdict::Stable);
    CHECK(rep.cdeg == degs);
    // detection finds the same degrees on its own
    const auto rep2 = hurwitz_check(f);
    CHECK(rep2.verdict == Verdict::Stable);
}

TEST_CASE("non-Hermitian sequences yield an indeterminate verdict with diagnostics") {
    gen::Rng rng(433);
    const auto f = gen::random_column_reduced(rng, 2, 4);
    const auto rep = hurwitz_check(f);
    CHECK(rep.verdict == Verdict::Indeterminate);
    CHECK_FALSE(rep.sequence_hermitian);
    CHECK_FALSE(rep.diagnostics.empty());
    CHECK_THROWS_AS(polynomial_inertia(f), NotHermitianSequenceError);
}
