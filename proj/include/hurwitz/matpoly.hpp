#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/errors.hpp"

namespace hurwitz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

namespace detail {

inline bool is_finite(const ComplexMatrix& m) {
    return m.real().allFinite() && m.imag().allFinite();
}

}  // namespace detail

/**
 * Dense square matrix polynomial F(z) = A_0 z^n + A_1 z^{n-1} + ... + A_n.
 *
 * Coefficients are stored highest power first.  The stored length fixes the
 * representation degree n; actual column degrees are recovered by
 * column_profile(), so a zero leading block is representable.
 */
class MatrixPolynomial {
  public:
    explicit MatrixPolynomial(std::vector<ComplexMatrix> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw EmptyPolynomialError("matrix polynomial needs at least one coefficient");
        }
        p_ = static_cast<int>(coeffs_.front().rows());
        for (const auto& c : coeffs_) {
            if (c.rows() != p_ || c.cols() != p_) {
                throw ShapeError("all coefficients must be square matrices of equal size");
            }
            if (!detail::is_finite(c)) {
                throw ParseError("non-finite entry in matrix polynomial coefficient");
            }
        }
    }

    // Scalar polynomial from descending coefficients, e.g. {1,3,2} = z^2+3z+2.
    static MatrixPolynomial scalar(const std::vector<Complex>& descending) {
        std::vector<ComplexMatrix> cs;
        cs.reserve(descending.size());
        for (Complex c : descending) {
            cs.push_back(ComplexMatrix::Constant(1, 1, c));
        }
        return MatrixPolynomial(std::move(cs));
    }

    static MatrixPolynomial identity(int p) {
        return MatrixPolynomial({ComplexMatrix::Identity(p, p)});
    }

    int size() const { return p_; }

    // Representation degree (list length - 1); may exceed max column degree.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    // Coefficient of z^{degree()-k}.
    const ComplexMatrix& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

    // Coefficient of z^e; zero matrix when e is out of range.
    ComplexMatrix coeff_of_power(int e) const {
        const int k = degree() - e;
        if (k < 0 || k > degree()) return ComplexMatrix::Zero(p_, p_);
        return coeffs_[static_cast<std::size_t>(k)];
    }

    const std::vector<ComplexMatrix>& coefficients() const { return coeffs_; }

    bool is_zero(double tol = 0.0) const {
        for (const auto& c : coeffs_) {
            if (c.cwiseAbs().maxCoeff() > tol) return false;
        }
        return true;
    }

  private:
    int p_ = 0;
    std::vector<ComplexMatrix> coeffs_;
};

// Horner evaluation of F at z.
inline ComplexMatrix evaluate(const MatrixPolynomial& f, Complex z) {
    ComplexMatrix acc = f.coeff(0);
    for (int k = 1; k <= f.degree(); ++k) {
        acc = (acc * z + f.coeff(k)).eval();
    }
    return acc;
}

// F^vee(z) = sum A_k^* z^{n-k}; satisfies F^vee(z) = (F(conj z))^*.
inline MatrixPolynomial adjoint_vee(const MatrixPolynomial& f) {
    std::vector<ComplexMatrix> cs;
    cs.reserve(static_cast<std::size_t>(f.degree()) + 1);
    for (const auto& c : f.coefficients()) {
        cs.push_back(c.adjoint());
    }
    return MatrixPolynomial(std::move(cs));
}

// Rev[F](z) = z^n F(1/z): the coefficient list reversed.
inline MatrixPolynomial reversal(const MatrixPolynomial& f) {
    std::vector<ComplexMatrix> cs(f.coefficients().rbegin(), f.coefficients().rend());
    return MatrixPolynomial(std::move(cs));
}

/**
 * Column degrees, highest column degree coefficient matrix, and the
 * column-reducedness decision for a matrix polynomial.
 */
struct ColumnProfile {
    std::vector<int> cdeg;    // per-column degree
    ComplexMatrix hcdc;       // column k = coefficient of z^{cdeg[k]} in column k
    bool column_reduced = false;
    double hcdc_condition = 0.0;  // sigma_max / sigma_min (inf when singular)
    std::vector<bool> odd;        // parity flag of cdeg[k]

    int degree() const {
        int d = 0;
        for (int c : cdeg) d = std::max(d, c);
        return d;
    }
    bool all_even() const {
        for (bool o : odd) {
            if (o) return false;
        }
        return true;
    }
};

/**
 * Detect column degrees and assemble the hcdc.
 *
 * Per-column thresholds are zero_tol relative to the largest coefficient
 * modulus of that column.  Column-reducedness is decided from the singular
 * values of the hcdc: sigma_min > zero_tol * sigma_max.  `forced_cdeg`, when
 * given, overrides detection (degrees are structural data and a caller may
 * know them exactly).
 */
inline ColumnProfile column_profile(const MatrixPolynomial& f, double zero_tol = 1e-12,
                                    const std::optional<std::vector<int>>& forced_cdeg = std::nullopt) {
    const int p = f.size();
    const int n = f.degree();
    ColumnProfile prof;
    prof.cdeg.resize(static_cast<std::size_t>(p));
    prof.odd.resize(static_cast<std::size_t>(p));
    prof.hcdc = ComplexMatrix::Zero(p, p);

    if (forced_cdeg) {
        if (static_cast<int>(forced_cdeg->size()) != p) {
            throw ShapeError("column_degrees must list one degree per column");
        }
        for (int c = 0; c < p; ++c) {
            const int d = (*forced_cdeg)[static_cast<std::size_t>(c)];
            if (d < 0 || d > n) {
                throw ShapeError("column degree " + std::to_string(d) + " out of range for column " +
                                 std::to_string(c + 1));
            }
            prof.cdeg[static_cast<std::size_t>(c)] = d;
        }
    } else {
        for (int c = 0; c < p; ++c) {
            double colmax = 0.0;
            for (int k = 0; k <= n; ++k) {
                colmax = std::max(colmax, f.coeff(k).col(c).cwiseAbs().maxCoeff());
            }
            if (colmax == 0.0) {
                throw ZeroColumnError("column " + std::to_string(c + 1) +
                                      " is identically zero; the polynomial is not regular");
            }
            const double thr = zero_tol * colmax;
            int d = -1;
            for (int e = n; e >= 0; --e) {
                if (f.coeff_of_power(e).col(c).cwiseAbs().maxCoeff() > thr) {
                    d = e;
                    break;
                }
            }
            if (d < 0) {
                throw ZeroColumnError("column " + std::to_string(c + 1) + " vanishes under the zero tolerance");
            }
            prof.cdeg[static_cast<std::size_t>(c)] = d;
        }
    }

    for (int c = 0; c < p; ++c) {
        prof.hcdc.col(c) = f.coeff_of_power(prof.cdeg[static_cast<std::size_t>(c)]).col(c);
        prof.odd[static_cast<std::size_t>(c)] = (prof.cdeg[static_cast<std::size_t>(c)] % 2) != 0;
    }

    Eigen::JacobiSVD<ComplexMatrix> svd(prof.hcdc);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(p - 1);
    prof.column_reduced = smin > zero_tol * smax;
    prof.hcdc_condition = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    return prof;
}

}  // namespace hurwitz
