#pragma once

#include <algorithm>
#include <vector>

#include "hurwitz/split.hpp"

namespace hurwitz {

/**
 * The Markov parameters s_0..s_l of F, defined by the Laurent expansion
 * F_s(z) F_d(z)^{-1} = sum_k (-1)^k z^{-k} s_k at infinity.
 */
struct MarkovSequence {
    std::vector<ComplexMatrix> params;
    int l = 0;
    double hermitian_deviation = 0.0;  // max_k ||s_k - s_k^*|| / max(1, ||s_k||)
    bool is_hermitian = false;
};

namespace detail {

// Right-division by A0: returns X = Y * A0^{-1}.  Uses a triangular solve
// when A0 is numerically upper triangular, a partial-pivot LU otherwise.
class RightSolver {
  public:
    RightSolver(const ComplexMatrix& a0, double tol) : a0_(a0) {
        const int p = static_cast<int>(a0.rows());
        const double scale = a0.cwiseAbs().maxCoeff();
        if (scale == 0.0) {
            throw SingularLeadingBlockError("leading column-degree coefficient matrix is zero");
        }
        double below = 0.0;
        for (int j = 0; j < p; ++j) {
            for (int i = j + 1; i < p; ++i) below = std::max(below, std::abs(a0(i, j)));
        }
        triangular_ = below <= tol * scale;
        if (triangular_) {
            double dmin = a0.diagonal().cwiseAbs().minCoeff();
            if (dmin <= tol * scale) {
                throw SingularLeadingBlockError("diagonal entry of triangular A0 below tolerance");
            }
        } else {
            Eigen::JacobiSVD<ComplexMatrix> svd(a0);
            if (svd.singularValues()(p - 1) <= tol * svd.singularValues()(0)) {
                throw SingularLeadingBlockError("A0 is numerically singular");
            }
            lu_.compute(a0_.transpose());
        }
    }

    ComplexMatrix apply(const ComplexMatrix& y) const {
        if (triangular_) {
            // X A0 = Y  <=>  A0^T X^T = Y^T, with A0^T lower triangular
            return a0_.transpose().triangularView<Eigen::Lower>().solve(y.transpose()).transpose();
        }
        return lu_.solve(y.transpose()).transpose();
    }

  private:
    ComplexMatrix a0_;
    bool triangular_ = false;
    Eigen::PartialPivLU<ComplexMatrix> lu_;
};

inline double hermitian_deviation_of(const std::vector<ComplexMatrix>& params) {
    double dev = 0.0;
    for (const auto& s : params) {
        const double nrm = s.norm();
        dev = std::max(dev, (s - s.adjoint()).norm() / std::max(1.0, nrm));
    }
    return dev;
}

// Columns c with cdeg_fd[c] >= k; A_k and B_k are structurally zero elsewhere.
inline std::vector<int> active_columns(const std::vector<int>& cdeg_fd, int k) {
    std::vector<int> idx;
    for (int c = 0; c < static_cast<int>(cdeg_fd.size()); ++c) {
        if (cdeg_fd[static_cast<std::size_t>(c)] >= k) idx.push_back(c);
    }
    return idx;
}

}  // namespace detail

/**
 * Markov parameters via the recurrence of Algorithm 1:
 *   s_0 = B_0 A_0^{-1}
 *   s_k = ((-1)^k B_k - sum_{j=1..k} (-1)^j s_{k-j} A_j) A_0^{-1}   k = 1..t
 *   s_k = -(sum_{j=1..m} (-1)^j s_{k-j} A_j) A_0^{-1}               k = t+1..l
 * Structurally zero columns of A_j are skipped in the products.
 */
inline MarkovSequence markov_parameters(const SplitResult& sr, double zero_tol = 1e-12,
                                        double hermitian_tol = 1e-8) {
    const int p = sr.size();
    const detail::RightSolver solver(sr.A[0], zero_tol);

    std::vector<std::vector<int>> active(static_cast<std::size_t>(sr.m) + 1);
    for (int j = 0; j <= sr.m; ++j) active[static_cast<std::size_t>(j)] = detail::active_columns(sr.cdeg_fd, j);

    MarkovSequence seq;
    seq.l = sr.l;
    seq.params.reserve(static_cast<std::size_t>(sr.l) + 1);
    seq.params.push_back(solver.apply(sr.B[0]));

    auto accumulate_tail = [&](int k, int jmax, ComplexMatrix& acc) {
        for (int j = 1; j <= jmax; ++j) {
            const auto& cols = active[static_cast<std::size_t>(j)];
            if (cols.empty()) continue;
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            const ComplexMatrix& skj = seq.params[static_cast<std::size_t>(k - j)];
            if (static_cast<int>(cols.size()) == p) {
                acc.noalias() -= sign * (skj * sr.A[static_cast<std::size_t>(j)]);
            } else {
                for (int c : cols) {
                    acc.col(c).noalias() -= sign * (skj * sr.A[static_cast<std::size_t>(j)].col(c));
                }
            }
        }
    };

    for (int k = 1; k <= sr.t; ++k) {
        ComplexMatrix acc = ((k % 2 == 0) ? 1.0 : -1.0) * sr.B[static_cast<std::size_t>(k)];
        accumulate_tail(k, k, acc);
        seq.params.push_back(solver.apply(acc));
    }
    if (sr.m >= 1) {
        for (int k = sr.t + 1; k <= sr.l; ++k) {
            ComplexMatrix acc = ComplexMatrix::Zero(p, p);
            accumulate_tail(k, sr.m, acc);
            seq.params.push_back(solver.apply(acc));
        }
    }

    seq.hermitian_deviation = detail::hermitian_deviation_of(seq.params);
    seq.is_hermitian = seq.hermitian_deviation < hermitian_tol;
    return seq;
}

// Replace every s_k by its Hermitian part (s_k + s_k^*)/2.  Never applied
// automatically; exposed for the explicit --symmetrize CLI flag.
inline MarkovSequence symmetrized(const MarkovSequence& seq, double hermitian_tol = 1e-8) {
    MarkovSequence out;
    out.l = seq.l;
    out.params.reserve(seq.params.size());
    for (const auto& s : seq.params) {
        out.params.push_back(0.5 * (s + s.adjoint()));
    }
    out.hermitian_deviation = detail::hermitian_deviation_of(out.params);
    out.is_hermitian = out.hermitian_deviation < hermitian_tol;
    return out;
}

/**
 * Test oracle: s_0..s_{k_max} by plain power-series division of
 * F_s(1/w) diag(w^{cdeg fd}) * (F_d(1/w) diag(w^{cdeg fd}))^{-1} at w = 0.
 * Reads coefficients straight from the fd/fs polynomials; shares no recurrence
 * bookkeeping with Algorithm 1.
 */
inline std::vector<ComplexMatrix> laurent_oracle(const SplitResult& sr, int k_max, double zero_tol = 1e-12) {
    const int p = sr.size();
    // column-reversed coefficient extraction: G_k column c = coeff of z^{cdeg_fd[c]-k}
    auto gd = [&](int k) {
        ComplexMatrix g = ComplexMatrix::Zero(p, p);
        for (int c = 0; c < p; ++c) {
            const int e = sr.cdeg_fd[static_cast<std::size_t>(c)] - k;
            if (e >= 0) g.col(c) = sr.fd.coeff_of_power(e).col(c);
        }
        return g;
    };
    auto gs = [&](int k) {
        ComplexMatrix g = ComplexMatrix::Zero(p, p);
        for (int c = 0; c < p; ++c) {
            const int e = sr.cdeg_fd[static_cast<std::size_t>(c)] - k;
            if (e >= 0) g.col(c) = sr.fs.coeff_of_power(e).col(c);
        }
        return g;
    };
    const detail::RightSolver solver(gd(0), zero_tol);
    std::vector<ComplexMatrix> gdk(static_cast<std::size_t>(sr.m) + 1);
    for (int j = 0; j <= sr.m; ++j) gdk[static_cast<std::size_t>(j)] = gd(j);

    std::vector<ComplexMatrix> x;  // Taylor coefficients; s_k = (-1)^k x_k
    x.reserve(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        ComplexMatrix acc = gs(k);
        for (int j = 1; j <= std::min(k, sr.m); ++j) {
            acc.noalias() -= x[static_cast<std::size_t>(k - j)] * gdk[static_cast<std::size_t>(j)];
        }
        x.push_back(solver.apply(acc));
    }
    std::vector<ComplexMatrix> s;
    s.reserve(x.size());
    for (int k = 0; k <= k_max; ++k) {
        s.push_back(((k % 2 == 0) ? 1.0 : -1.0) * x[static_cast<std::size_t>(k)]);
    }
    return s;
}

/**
 * Maximum relative residual of the two defining identities tying the Markov
 * parameters to the column degree coefficient matrices.  A correctly computed
 * sequence satisfies both to roundoff.
 */
inline double sa_residual(const MarkovSequence& seq, const SplitResult& sr) {
    const int p = sr.size();
    const int m = sr.m;
    const int t = sr.t;
    const auto& s = seq.params;
    if (static_cast<int>(s.size()) < sr.l + 1) {
        throw SequenceTooShortError("Markov sequence shorter than l+1");
    }

    double res = 0.0;
    // identity 1: block-Hankel(s_{t-m+1}..s_{l-1}) * [(-1)^m A_m; ...; -A_1] = -[s_{t+1}; ...; s_l] A_0
    if (m >= 1) {
        ComplexMatrix hank(m * p, m * p);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                hank.block(a * p, b * p, p, p) = s[static_cast<std::size_t>(t - m + 1 + a + b)];
            }
        }
        ComplexMatrix colv(m * p, p);
        for (int b = 0; b < m; ++b) {
            const int j = m - b;
            colv.block(b * p, 0, p, p) = ((j % 2 == 0) ? 1.0 : -1.0) * sr.A[static_cast<std::size_t>(j)];
        }
        ComplexMatrix rhs(m * p, p);
        for (int a = 0; a < m; ++a) {
            rhs.block(a * p, 0, p, p) = -s[static_cast<std::size_t>(t + 1 + a)] * sr.A[0];
        }
        const double nrm = std::max(1.0, rhs.cwiseAbs().maxCoeff());
        res = std::max(res, (hank * colv - rhs).cwiseAbs().maxCoeff() / nrm);
    }
    // identity 2: [(-1)^t B_t; ...; B_0] = upper-Toeplitz(s) * [(-1)^t A_t; ...; A_0]
    {
        ComplexMatrix lhs((t + 1) * p, p);
        ComplexMatrix colv((t + 1) * p, p);
        for (int a = 0; a <= t; ++a) {
            const int r = t - a;
            lhs.block(a * p, 0, p, p) = ((r % 2 == 0) ? 1.0 : -1.0) * sr.B[static_cast<std::size_t>(r)];
            colv.block(a * p, 0, p, p) = ((r % 2 == 0) ? 1.0 : -1.0) * sr.A[static_cast<std::size_t>(r)];
        }
        ComplexMatrix toep = ComplexMatrix::Zero((t + 1) * p, (t + 1) * p);
        for (int a = 0; a <= t; ++a) {
            for (int b = a; b <= t; ++b) {
                toep.block(a * p, b * p, p, p) = s[static_cast<std::size_t>(b - a)];
            }
        }
        const double nrm = std::max(1.0, lhs.cwiseAbs().maxCoeff());
        res = std::max(res, (lhs - toep * colv).cwiseAbs().maxCoeff() / nrm);
    }
    return res;
}

}  // namespace hurwitz
