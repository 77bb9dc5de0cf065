#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <string>
#include <vector>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include "hurwitz/matpoly.hpp"

namespace hurwitz {

/**
 * Finite spectrum of a regular matrix polynomial plus the multiplicity of the
 * eigenvalue at infinity and the inertia triple with respect to the imaginary
 * axis.  |finite_eigs| + gamma_infinity = n*p.
 */
struct SpectrumReport {
    std::vector<Complex> finite_eigs;          // with multiplicity, unordered
    int gamma_infinity = 0;                    // = n*p - deg det F
    std::array<int, 3> inertia_imag_axis{0, 0, 0};  // (gamma'_+, gamma'_-, gamma'_0)

    bool hurwitz_stable() const { return inertia_imag_axis[0] == 0 && inertia_imag_axis[2] == 0; }
};

namespace detail {

// Generalized eigenvalues of the pencil lambda*E - C as (alpha, beta) pairs.
inline void zggev_pairs(ComplexMatrix c, ComplexMatrix e, std::vector<Complex>& alpha,
                        std::vector<Complex>& beta) {
    const lapack_int n = static_cast<lapack_int>(c.rows());
    alpha.assign(static_cast<std::size_t>(n), Complex(0, 0));
    beta.assign(static_cast<std::size_t>(n), Complex(0, 0));
    const lapack_int info =
        LAPACKE_zggev(LAPACK_COL_MAJOR, 'N', 'N', n, c.data(), n, e.data(), n, alpha.data(), beta.data(),
                      nullptr, 1, nullptr, 1);
    if (info != 0) {
        throw SolverFailureError("zggev failed with info = " + std::to_string(info));
    }
}

}  // namespace detail

/**
 * Spectrum via the first companion linearization lambda*diag(A0,I,..,I) - C
 * solved with the dense QZ routine.  Pairs with |beta| <= 1e-12 (|alpha|+|beta|)
 * or |alpha/beta| > 1e12 count toward the eigenvalue at infinity; A0 is
 * singular for genuinely nonmonic inputs, so such pairs are expected.
 */
inline SpectrumReport finite_spectrum(const MatrixPolynomial& f, double axis_tol = 1e-9) {
    const int p = f.size();
    const int n = f.degree();
    if (n == 0) {
        // constant polynomial: no finite eigenvalues, nothing at infinity
        SpectrumReport rep;
        return rep;
    }
    const int np = n * p;
    ComplexMatrix e = ComplexMatrix::Identity(np, np);
    e.topLeftCorner(p, p) = f.coeff(0);
    ComplexMatrix c = ComplexMatrix::Zero(np, np);
    for (int k = 1; k <= n; ++k) {
        c.block(0, (k - 1) * p, p, p) = -f.coeff(k);
    }
    for (int k = 1; k < n; ++k) {
        c.block(k * p, (k - 1) * p, p, p) = ComplexMatrix::Identity(p, p);
    }

    std::vector<Complex> alpha, beta;
    detail::zggev_pairs(std::move(c), std::move(e), alpha, beta);

    SpectrumReport rep;
    int indeterminate_pairs = 0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        const double aa = std::abs(alpha[k]);
        const double bb = std::abs(beta[k]);
        if (aa == 0.0 && bb == 0.0) {
            ++indeterminate_pairs;  // singular pencil indicator
            continue;
        }
        if (bb <= 1e-12 * (aa + bb) || aa / bb > 1e12) {
            ++rep.gamma_infinity;
        } else {
            rep.finite_eigs.push_back(alpha[k] / beta[k]);
        }
    }
    if (indeterminate_pairs > 0) {
        throw NotRegularError("companion pencil is singular (" + std::to_string(indeterminate_pairs) +
                              " indeterminate eigenvalue pairs)");
    }
    for (const Complex& z : rep.finite_eigs) {
        const double thr = axis_tol * std::max(1.0, std::abs(z));
        if (z.real() > thr) {
            ++rep.inertia_imag_axis[0];
        } else if (z.real() < -thr) {
            ++rep.inertia_imag_axis[1];
        } else {
            ++rep.inertia_imag_axis[2];
        }
    }
    return rep;
}

}  // namespace hurwitz
