#pragma once

#include <random>
#include <utility>
#include <vector>

#include "hurwitz/stability.hpp"

namespace hurwitz {

/**
 * The quadruple derived from the split of F used by the Bezoutian oracle:
 *   L(z)  = F(iz) = D~(z) - i S~(z),
 *   L1(z) = D~(z) + i S~(z),
 * with D~(z) = F_d(-z^2) alpha(iz) and S~(z) = z^{-1} F_s(-z^2) alpha(iz).
 * L1 is column reduced with (L1)_hcdc = D~_hcdc and cdeg L1 = cdeg L = cdeg F.
 */
struct BezoutQuadruple {
    MatrixPolynomial l_poly;
    MatrixPolynomial l1_poly;
    MatrixPolynomial d_tilde;
    MatrixPolynomial s_tilde;
};

inline BezoutQuadruple build_quadruple(const SplitResult& sr) {
    const int p = sr.size();
    const int n = *std::max_element(sr.cdeg_f.begin(), sr.cdeg_f.end());
    const Complex iu(0.0, 1.0);
    detail::PolyBuilder dt(p, n);
    detail::PolyBuilder st(p, n);
    for (int c = 0; c < p; ++c) {
        const int b = sr.odd[static_cast<std::size_t>(c)] ? 1 : 0;
        const Complex colph = (b == 1) ? iu : Complex(1.0, 0.0);
        for (int e = 0; e <= sr.cdeg_fd[static_cast<std::size_t>(c)]; ++e) {
            const Complex ph = ((e % 2 == 0) ? 1.0 : -1.0) * colph;  // (-z^2)^e and alpha(iz)
            dt.add(2 * e + b, c, ph * sr.fd.coeff_of_power(e).col(c));
            const int se = 2 * e + b - 1;
            if (se >= 0) st.add(se, c, ph * sr.fs.coeff_of_power(e).col(c));
        }
    }
    MatrixPolynomial d_tilde = dt.take();
    MatrixPolynomial s_tilde = st.take();
    std::vector<ComplexMatrix> lc, l1c;
    for (int k = 0; k <= n; ++k) {
        lc.push_back(d_tilde.coeff(k) - iu * s_tilde.coeff(k));
        l1c.push_back(d_tilde.coeff(k) + iu * s_tilde.coeff(k));
    }
    return BezoutQuadruple{MatrixPolynomial(std::move(lc)), MatrixPolynomial(std::move(l1c)), std::move(d_tilde),
                           std::move(s_tilde)};
}

namespace detail {

inline std::vector<ComplexMatrix> poly_product(const MatrixPolynomial& a, const MatrixPolynomial& b) {
    const int p = a.size();
    const int da = a.degree();
    const int db = b.degree();
    std::vector<ComplexMatrix> out(static_cast<std::size_t>(da + db) + 1, ComplexMatrix::Zero(p, p));
    for (int i = 0; i <= da; ++i) {
        for (int j = 0; j <= db; ++j) {
            out[static_cast<std::size_t>(i + j)].noalias() += a.coeff(i) * b.coeff(j);
        }
    }
    return out;  // descending powers
}

}  // namespace detail

/**
 * Anderson-Jury Bezoutian of a quadruple with mt(z) lt(z) = m_(z) l_(z):
 * the block matrix B with
 *   sum_{j,k} z^j B_{jk} w^k = (mt(z) lt(w) - m_(z) l_(w)) / (z - w).
 * Computed by synthetic division in z with the w-coefficients carried
 * exactly; random-point sampling only verifies the result afterwards.
 */
inline ComplexMatrix anderson_jury(const MatrixPolynomial& mt, const MatrixPolynomial& lt,
                                   const MatrixPolynomial& m_, const MatrixPolynomial& l_,
                                   double tol = 1e-10) {
    const int p = mt.size();
    if (lt.size() != p || m_.size() != p || l_.size() != p) {
        throw ShapeError("quadruple members must share the matrix size");
    }
    // common multiple precondition
    {
        const auto prod1 = detail::poly_product(mt, lt);
        const auto prod2 = detail::poly_product(m_, l_);
        double scale = 0.0;
        double res = 0.0;
        const std::size_t len = std::max(prod1.size(), prod2.size());
        for (std::size_t k = 0; k < len; ++k) {
            const ComplexMatrix a =
                k < prod1.size() ? prod1[k] : ComplexMatrix::Zero(p, p);
            const ComplexMatrix b =
                k < prod2.size() ? prod2[k] : ComplexMatrix::Zero(p, p);
            scale = std::max({scale, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
            res = std::max(res, (a - b).cwiseAbs().maxCoeff());
        }
        if (res > tol * std::max(1.0, scale)) {
            throw NotACommonMultipleError("mt*lt != m_*l_ (relative residual " + std::to_string(res / std::max(1.0, scale)) +
                                          ")");
        }
    }

    const int n1 = std::max(m_.degree(), mt.degree());
    const int n2 = std::max(l_.degree(), lt.degree());
    if (n1 == 0) {
        return ComplexMatrix::Zero(0, n2 * p);  // constant left factors: the quotient is empty
    }
    // C_j(w) = mt_j lt(w) - m__j l_(w), with X_j the coefficient of z^j
    auto zcoeff = [](const MatrixPolynomial& f, int j) { return f.coeff_of_power(j); };
    std::vector<std::vector<ComplexMatrix>> cj(static_cast<std::size_t>(n1) + 1);
    for (int j = 0; j <= n1; ++j) {
        auto& row = cj[static_cast<std::size_t>(j)];
        row.reserve(static_cast<std::size_t>(n2) + 1);
        const ComplexMatrix mtj = zcoeff(mt, j);
        const ComplexMatrix mj = zcoeff(m_, j);
        for (int k = 0; k <= n2; ++k) {
            row.push_back(mtj * zcoeff(lt, k) - mj * zcoeff(l_, k));
        }
    }
    // synthetic division by (z - w): Q_{n1-1} = C_{n1}; Q_{j-1} = C_j + w Q_j
    std::vector<std::vector<ComplexMatrix>> q(static_cast<std::size_t>(n1));
    q[static_cast<std::size_t>(n1 - 1)] = cj[static_cast<std::size_t>(n1)];
    for (int j = n1 - 2; j >= 0; --j) {
        auto row = cj[static_cast<std::size_t>(j + 1)];
        const auto& prev = q[static_cast<std::size_t>(j + 1)];
        for (int k = 0; k < n2; ++k) {
            row[static_cast<std::size_t>(k + 1)] += prev[static_cast<std::size_t>(k)];
        }
        q[static_cast<std::size_t>(j)] = std::move(row);
    }
    {
        // exactness of the division: C_0 + w Q_0 must vanish
        auto rem = cj[0];
        for (int k = 0; k < n2; ++k) {
            rem[static_cast<std::size_t>(k + 1)] += q[0][static_cast<std::size_t>(k)];
        }
        double rmax = 0.0, scale = 1.0;
        for (const auto& r : rem) rmax = std::max(rmax, r.cwiseAbs().maxCoeff());
        for (const auto& row : q) {
            // the quotient has w-degree <= n2-1; its stored w^{n2} block is residue
            rmax = std::max(rmax, row[static_cast<std::size_t>(n2)].cwiseAbs().maxCoeff());
            for (const auto& blockq : row) scale = std::max(scale, blockq.cwiseAbs().maxCoeff());
        }
        if (rmax > 1e-8 * scale) {
            throw SolverFailureError("synthetic division by (z - w) left a nonzero remainder");
        }
    }

    ComplexMatrix bez(n1 * p, n2 * p);
    for (int j = 0; j < n1; ++j) {
        for (int k = 0; k < n2; ++k) {
            bez.block(j * p, k * p, p, p) = q[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        }
    }

    // sampling verification at random points
    std::mt19937_64 rng(0x1234u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double bscale = std::max(1.0, bez.cwiseAbs().maxCoeff());
    for (int trial = 0; trial < 10; ++trial) {
        const Complex z(2.0 * u(rng), 2.0 * u(rng));
        const Complex w(2.0 * u(rng), 2.0 * u(rng));
        if (std::abs(z - w) < 0.3) continue;
        ComplexMatrix lhs = ComplexMatrix::Zero(p, p);
        Complex zi(1.0, 0.0);
        for (int j = 0; j < n1; ++j) {
            Complex wk(1.0, 0.0);
            for (int k = 0; k < n2; ++k) {
                lhs.noalias() += zi * wk * bez.block(j * p, k * p, p, p);
                wk *= w;
            }
            zi *= z;
        }
        const ComplexMatrix rhs = (evaluate(mt, z) * evaluate(lt, w) - evaluate(m_, z) * evaluate(l_, w)) / (z - w);
        const double scale = std::max({1.0, bscale * std::pow(std::max(std::abs(z), std::abs(w)), n1 + n2)});
        if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-8 * scale) {
            throw SolverFailureError("Bezoutian generating identity violated at a sample point");
        }
    }
    return bez;
}

/**
 * Finite Bezoutian: rows (j,r) with j < cdeg_rows[r] and columns (k,r) with
 * k < cdeg_cols[r] of the full matrix.  Everything outside that grid must be
 * numerically zero; the maximum off-grid modulus is reported.
 */
struct FiniteBezoutian {
    ComplexMatrix finite;
    std::vector<int> kept_rows;
    std::vector<int> kept_cols;
    double offgrid_max = 0.0;
};

inline FiniteBezoutian finite_bezoutian(const ComplexMatrix& full, const std::vector<int>& cdeg_rows,
                                        const std::vector<int>& cdeg_cols, int p) {
    FiniteBezoutian out;
    const int n1 = static_cast<int>(full.rows()) / p;
    const int n2 = static_cast<int>(full.cols()) / p;
    std::vector<char> row_kept(static_cast<std::size_t>(full.rows()), 0);
    std::vector<char> col_kept(static_cast<std::size_t>(full.cols()), 0);
    for (int j = 0; j < n1; ++j) {
        for (int r = 0; r < p; ++r) {
            if (j < cdeg_rows[static_cast<std::size_t>(r)]) {
                out.kept_rows.push_back(j * p + r);
                row_kept[static_cast<std::size_t>(j * p + r)] = 1;
            }
        }
    }
    for (int k = 0; k < n2; ++k) {
        for (int r = 0; r < p; ++r) {
            if (k < cdeg_cols[static_cast<std::size_t>(r)]) {
                out.kept_cols.push_back(k * p + r);
                col_kept[static_cast<std::size_t>(k * p + r)] = 1;
            }
        }
    }
    for (int i = 0; i < full.rows(); ++i) {
        for (int j = 0; j < full.cols(); ++j) {
            if (!row_kept[static_cast<std::size_t>(i)] || !col_kept[static_cast<std::size_t>(j)]) {
                out.offgrid_max = std::max(out.offgrid_max, std::abs(full(i, j)));
            }
        }
    }
    out.finite.resize(static_cast<int>(out.kept_rows.size()), static_cast<int>(out.kept_cols.size()));
    for (std::size_t a = 0; a < out.kept_rows.size(); ++a) {
        for (std::size_t b = 0; b < out.kept_cols.size(); ++b) {
            out.finite(static_cast<int>(a), static_cast<int>(b)) = full(out.kept_rows[a], out.kept_cols[b]);
        }
    }
    return out;
}

/**
 * Congruence oracle for the Hankel pair: the inertia of -i * B(L1^v,L1;L^v,L)
 * restricted to its finite core must equal the inertia of diag(H0, H1).
 */
struct BezoutCheck {
    Inertia inertia_bezout;
    Inertia inertia_hankel_direct_sum;
    bool match = false;
    double bezout_hermitian_deviation = 0.0;
    double offgrid_max = 0.0;
};

inline BezoutCheck bezout_inertia_check(const MatrixPolynomial& f, const Tolerances& tol = {},
                                        const std::optional<std::vector<int>>& forced_cdeg = std::nullopt) {
    const Pipeline pl = run_pipeline(f, tol, forced_cdeg);
    if (!pl.seq.is_hermitian) {
        throw NotHermitianSequenceError("Bezoutian congruence check requires a Hermitian Markov sequence");
    }
    const BezoutQuadruple quad = build_quadruple(pl.sr);
    const ComplexMatrix full =
        anderson_jury(adjoint_vee(quad.l1_poly), quad.l1_poly, adjoint_vee(quad.l_poly), quad.l_poly);
    const FiniteBezoutian fin = finite_bezoutian(full, pl.sr.cdeg_f, pl.sr.cdeg_f, pl.sr.size());

    BezoutCheck out;
    out.offgrid_max = fin.offgrid_max;
    const ComplexMatrix mib = Complex(0.0, -1.0) * fin.finite;
    out.bezout_hermitian_deviation = (mib - mib.adjoint()).norm() / std::max(1.0, mib.norm());
    out.inertia_bezout = inertia_from_eigenvalues(hermitian_eigenvalues(0.5 * (mib + mib.adjoint())), tol.inertia_tol);

    const Inertia i0 = inertia_from_eigenvalues(hermitian_eigenvalues(0.5 * (pl.hankel.h0 + pl.hankel.h0.adjoint())),
                                                tol.inertia_tol);
    const Inertia i1 = inertia_from_eigenvalues(hermitian_eigenvalues(0.5 * (pl.hankel.h1 + pl.hankel.h1.adjoint())),
                                                tol.inertia_tol);
    out.inertia_hankel_direct_sum = Inertia{i0.pi + i1.pi, i0.nu + i1.nu, i0.delta + i1.delta};
    out.match = out.inertia_bezout == out.inertia_hankel_direct_sum;
    return out;
}

}  // namespace hurwitz
