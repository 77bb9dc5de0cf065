#pragma once

#include <vector>

#include "hurwitz/matpoly.hpp"

namespace hurwitz {

struct NormalizedPolynomial {
    ComplexMatrix q;          // unitary factor of the hcdc QR decomposition
    MatrixPolynomial f_norm;  // q^* F, with upper triangular positive-diagonal hcdc
};

/**
 * Left-multiply F by Q^* so that the hcdc becomes upper triangular with real
 * positive diagonal.  The diagonal phase of R is absorbed into Q, which makes
 * the factorization unique and results reproducible.
 */
inline NormalizedPolynomial qr_normalize(const MatrixPolynomial& f, const ColumnProfile& prof) {
    if (!prof.column_reduced) {
        throw NotColumnReducedError("hcdc is numerically rank deficient; cannot normalize");
    }
    const int p = f.size();
    Eigen::HouseholderQR<ComplexMatrix> qr(prof.hcdc);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = q.adjoint() * prof.hcdc;
    for (int k = 0; k < p; ++k) {
        const double a = std::abs(r(k, k));
        if (a == 0.0) {
            throw NotColumnReducedError("zero diagonal in R factor of the hcdc");
        }
        q.col(k) *= r(k, k) / a;
    }
    std::vector<ComplexMatrix> cs;
    cs.reserve(static_cast<std::size_t>(f.degree()) + 1);
    const ComplexMatrix qh = q.adjoint();
    for (const auto& c : f.coefficients()) {
        cs.push_back(qh * c);
    }
    return NormalizedPolynomial{std::move(q), MatrixPolynomial(std::move(cs))};
}

inline NormalizedPolynomial qr_normalize(const MatrixPolynomial& f, double zero_tol = 1e-12) {
    return qr_normalize(f, column_profile(f, zero_tol));
}

}  // namespace hurwitz
