#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "hurwitz/matpoly.hpp"

namespace hurwitz {

/**
 * Result of the column-wise adaptive Lienard-Chipard splitting.
 *
 * fd/fs are the dominant and subordinated parts as matrix polynomials of
 * representation degree m.  A and B are the column degree coefficient
 * matrices: column j of A[k] is the coefficient of z^{cdeg_fd[j]-k} in column
 * j of fd (structurally zero when cdeg_fd[j] < k), and likewise for B[k]
 * against fs.
 */
struct SplitResult {
    MatrixPolynomial fd;
    MatrixPolynomial fs;
    std::vector<int> cdeg_f;   // column degrees of the input
    std::vector<int> cdeg_fd;  // = floor(cdeg_f / 2)
    std::vector<bool> odd;     // parity of cdeg_f
    bool all_even = false;
    int m = 0;  // deg fd = floor(deg F / 2)
    int l = 0;  // 2m-1 when all column degrees are even, else 2m
    int t = 0;  // floor(l/2); l = t + m
    std::vector<ComplexMatrix> A;  // A_0..A_m, A_0 = hcdc(F)
    std::vector<ComplexMatrix> B;  // B_0..B_t

    int size() const { return fd.size(); }
};

struct ColumnSplit {
    std::vector<ComplexVector> dominant;      // descending, degree floor(n/2)
    std::vector<ComplexVector> subordinated;  // descending, same length
};

/**
 * Lienard-Chipard splitting of a single vector polynomial given as descending
 * coefficient vectors.  For even degree the dominant part is the even part
 * f_e and the subordinated part is the shifted odd part z*f_o; for odd degree
 * the roles swap (dominant f_o, subordinated f_e).  The reconstruction
 * f(z) = f_e(z^2) + z f_o(z^2) always holds.
 */
inline ColumnSplit split_column(const std::vector<ComplexVector>& descending) {
    if (descending.empty()) {
        throw EmptyPolynomialError("empty vector polynomial");
    }
    const auto dim = descending.front().size();
    bool nonzero = false;
    for (const auto& v : descending) nonzero = nonzero || v.cwiseAbs().maxCoeff() > 0.0;
    if (!nonzero) {
        throw ZeroColumnError("cannot split an identically zero column");
    }
    const int n = static_cast<int>(descending.size()) - 1;
    const int h = n / 2;
    // alpha_j = coefficient of z^{n-j}
    auto alpha = [&](int j) -> ComplexVector {
        if (j < 0 || j > n) return ComplexVector::Zero(dim);
        return descending[static_cast<std::size_t>(j)];
    };
    ColumnSplit out;
    out.dominant.assign(static_cast<std::size_t>(h) + 1, ComplexVector::Zero(dim));
    out.subordinated.assign(static_cast<std::size_t>(h) + 1, ComplexVector::Zero(dim));
    auto put = [h](std::vector<ComplexVector>& poly, int exp, const ComplexVector& v) {
        poly[static_cast<std::size_t>(h - exp)] = v;  // descending storage
    };
    if (n % 2 == 0) {
        for (int k = 0; k <= h; ++k) put(out.dominant, h - k, alpha(2 * k));
        for (int k = 1; k <= h; ++k) put(out.subordinated, h - k + 1, alpha(2 * k - 1));
    } else {
        for (int k = 0; k <= h; ++k) {
            put(out.dominant, h - k, alpha(2 * k));
            put(out.subordinated, h - k, alpha(2 * k + 1));
        }
    }
    return out;
}

/**
 * Column-wise adaptive splitting of a column reduced matrix polynomial
 * (Steps 1-2), including extraction of the column degree coefficient
 * matrices A_0..A_m and B_0..B_t.
 */
inline SplitResult split(const MatrixPolynomial& f, const ColumnProfile& prof) {
    const int p = f.size();
    if (prof.degree() == 0) {
        throw DegreeZeroError("splitting requires deg F >= 1");
    }
    if (!prof.column_reduced) {
        throw NotColumnReducedError("hcdc is numerically rank deficient");
    }

    SplitResult sr{MatrixPolynomial::identity(p), MatrixPolynomial::identity(p), {}, {}, {}, false, 0, 0, 0, {}, {}};
    sr.cdeg_f = prof.cdeg;
    sr.odd = prof.odd;
    sr.all_even = prof.all_even();
    sr.m = prof.degree() / 2;
    sr.l = sr.all_even ? 2 * sr.m - 1 : 2 * sr.m;
    sr.t = sr.l / 2;

    sr.cdeg_fd.resize(static_cast<std::size_t>(p));
    std::vector<ComplexMatrix> fd(static_cast<std::size_t>(sr.m) + 1, ComplexMatrix::Zero(p, p));
    std::vector<ComplexMatrix> fs(static_cast<std::size_t>(sr.m) + 1, ComplexMatrix::Zero(p, p));
    for (int c = 0; c < p; ++c) {
        const int nc = prof.cdeg[static_cast<std::size_t>(c)];
        sr.cdeg_fd[static_cast<std::size_t>(c)] = nc / 2;
        std::vector<ComplexVector> col;
        col.reserve(static_cast<std::size_t>(nc) + 1);
        for (int e = nc; e >= 0; --e) {
            col.push_back(f.coeff_of_power(e).col(c));
        }
        const ColumnSplit cs = split_column(col);
        const int hc = nc / 2;
        for (int j = 0; j <= hc; ++j) {  // exponent hc-j
            fd[static_cast<std::size_t>(sr.m - (hc - j))].col(c) = cs.dominant[static_cast<std::size_t>(j)];
            fs[static_cast<std::size_t>(sr.m - (hc - j))].col(c) = cs.subordinated[static_cast<std::size_t>(j)];
        }
    }
    sr.fd = MatrixPolynomial(std::move(fd));
    sr.fs = MatrixPolynomial(std::move(fs));

    sr.A.assign(static_cast<std::size_t>(sr.m) + 1, ComplexMatrix::Zero(p, p));
    sr.B.assign(static_cast<std::size_t>(sr.t) + 1, ComplexMatrix::Zero(p, p));
    for (int c = 0; c < p; ++c) {
        const int hc = sr.cdeg_fd[static_cast<std::size_t>(c)];
        for (int k = 0; k <= sr.m; ++k) {
            if (hc - k >= 0) sr.A[static_cast<std::size_t>(k)].col(c) = sr.fd.coeff_of_power(hc - k).col(c);
        }
        for (int k = 0; k <= sr.t; ++k) {
            if (hc - k >= 0) sr.B[static_cast<std::size_t>(k)].col(c) = sr.fs.coeff_of_power(hc - k).col(c);
        }
    }
    return sr;
}

inline SplitResult split(const MatrixPolynomial& f, double zero_tol = 1e-12) {
    return split(f, column_profile(f, zero_tol));
}

namespace detail {

// Build a degree-deg matrix polynomial from (exponent, column, vector) triples.
class PolyBuilder {
  public:
    PolyBuilder(int p, int deg) : deg_(deg), coeffs_(static_cast<std::size_t>(deg) + 1, ComplexMatrix::Zero(p, p)) {}
    void add(int exp, int col, const ComplexVector& v) { coeffs_[static_cast<std::size_t>(deg_ - exp)].col(col) += v; }
    MatrixPolynomial take() { return MatrixPolynomial(std::move(coeffs_)); }

  private:
    int deg_;
    std::vector<ComplexMatrix> coeffs_;
};

}  // namespace detail

// D(z) = fd(z^2) * alpha(z).  Exact exponent bookkeeping, no arithmetic.
inline MatrixPolynomial d_polynomial(const SplitResult& sr) {
    const int p = sr.size();
    const int n = *std::max_element(sr.cdeg_f.begin(), sr.cdeg_f.end());
    detail::PolyBuilder out(p, n);
    for (int c = 0; c < p; ++c) {
        const int b = sr.odd[static_cast<std::size_t>(c)] ? 1 : 0;
        for (int e = 0; e <= sr.cdeg_fd[static_cast<std::size_t>(c)]; ++e) {
            out.add(2 * e + b, c, sr.fd.coeff_of_power(e).col(c));
        }
    }
    return out.take();
}

// S(z) = z^{-1} fs(z^2) * alpha(z); the division is an exponent shift.
inline MatrixPolynomial s_polynomial(const SplitResult& sr) {
    const int p = sr.size();
    const int n = *std::max_element(sr.cdeg_f.begin(), sr.cdeg_f.end());
    detail::PolyBuilder out(p, n);
    for (int c = 0; c < p; ++c) {
        const int b = sr.odd[static_cast<std::size_t>(c)] ? 1 : 0;
        for (int e = 0; e <= sr.cdeg_fd[static_cast<std::size_t>(c)]; ++e) {
            const ComplexVector v = sr.fs.coeff_of_power(e).col(c);
            const int exp = 2 * e + b - 1;
            if (exp < 0) continue;  // the subordinated part has no z^0 term in even columns
            out.add(exp, c, v);
        }
    }
    return out.take();
}

}  // namespace hurwitz
